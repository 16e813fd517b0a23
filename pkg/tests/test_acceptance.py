"""Acceptance gate: one test per criterion, each printing a PASS line with
its runtime once its assertions hold."""

import json
import math
import time

import numpy as np
import pytest

from fanospin.config import DeviceConfig, Mode, validate
from fanospin.constants import CONSTANTS
from fanospin.cli import main
from fanospin.dot_spectrum import (ResonanceSpec, analytic_eigenvalues,
                                   spin_flip_blocked,
                                   two_electron_hamiltonian)
from fanospin.fano import (SpinOrientation, TransmissionModel,
                           fano_transmission, mean_reflection,
                           spin_channel_reflection)
from fanospin.landauer import (BiasPoint, current_components,
                               linear_conductance)
from fanospin.lattice_oracle import (OracleLattice, compare_to_fano,
                                     oracle_reflection, oracle_transmission)
from fanospin.readout import (Arrangement, ScalingModel, n_qubit_reflection,
                              readout_report)

G0 = CONSTANTS.G0_spin_polarized


def make_config(**kw):
    base = dict(eps0=0.0, eps1=8.0, U_C=2.0, J=5.0, beta=3.0, Gamma=1.0,
                mu_source=7.25, V_sd=1.0, temperature=0.0,
                modes=(Mode(0.0, coupled=True),))
    base.update(kw)
    return validate(DeviceConfig(**base))


def make_model(E0, Gamma, orientation=SpinOrientation.PARALLEL,
               bottom=-1000.0):
    return TransmissionModel(
        resonance=ResonanceSpec(energy=E0, Gamma=Gamma, q=0j),
        orientation=orientation, modes=(Mode(bottom, coupled=True),))


def report(n, limit_s, elapsed, detail=""):
    print(f"ACCEPTANCE {n:2d}: PASS ({elapsed * 1e3:.2f} ms) {detail}")
    assert elapsed < limit_s, f"criterion {n} exceeded {limit_s}s runtime"


def timed_best_of(fn, repeats=3):
    """Best wall-clock time of a few runs; smooths scheduler noise for the
    sub-millisecond runtime limits."""
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_criterion_01_antiresonance():
    def check():
        for Gamma in (0.1, 1.0, 10.0):
            assert fano_transmission(0.0, Gamma, 0j) == 0.0

    report(1, 1e-3, timed_best_of(check), "T(0, Gamma, q=0) = 0 exactly")


def test_criterion_02_factor_two_law():
    rng = np.random.default_rng(20260823)
    E = rng.uniform(-100, 100, 10_000)
    Gamma = rng.uniform(1e-3, 50, 10_000)
    t0 = time.perf_counter()
    worst = 0.0
    for e, g in zip(E, Gamma):
        par = make_model(0.0, g)
        anti = make_model(0.0, g, SpinOrientation.ANTIPARALLEL)
        worst = max(worst, abs(spin_channel_reflection(e, anti)
                               - 0.5 * spin_channel_reflection(e, par)))
    assert worst < 1e-12
    report(2, 1.0, time.perf_counter() - t0,
           f"max |R_anti - R_par/2| = {worst:.2e} over 1e4 samples")


def test_criterion_03_current_magnitude():
    model = make_model(1e9, 1.0)   # resonance far outside the window
    t0 = time.perf_counter()
    ballistic, deficit = current_components(
        BiasPoint(10.0, 9.0, 0.0), model)
    I = ballistic - deficit
    assert I == pytest.approx(G0 * 1e-3, rel=1e-3)
    assert I == pytest.approx(4e-8, rel=0.05)
    report(3, 1.0, time.perf_counter() - t0,
           f"I = {I:.4e} A at V = 1 mV, T = 0")


def test_criterion_04_conductance_quantum():
    t0 = time.perf_counter()
    R0 = 1.0 / G0
    assert R0 == pytest.approx(25.81e3, rel=1e-3)
    assert R0 == pytest.approx(26e3, rel=0.01)
    report(4, 1.0, time.perf_counter() - t0, f"1/G0 = {R0 / 1e3:.3f} kOhm")


def test_criterion_05_eigenlevel_oracle():
    rng = np.random.default_rng(42)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        J, beta = rng.uniform(-20, 20, 2)
        cfg = make_config(J=J, beta=beta)
        vals = np.sort(np.linalg.eigvalsh(
            two_electron_hamiltonian(cfg).matrix))
        expected = np.array(analytic_eigenvalues(J, beta)) + 10.0
        worst = max(worst, float(np.max(np.abs(vals - expected))))
    assert worst < 1e-10
    # singlet - triplet gap equals J exactly at beta = 0
    for J in (0.5, 1.0, 7.0):
        ev = analytic_eigenvalues(J, 0.0)
        assert max(ev) - min(ev) == pytest.approx(J, abs=1e-14)
    report(5, 1.0, time.perf_counter() - t0,
           f"max eigenvalue deviation {worst:.2e} meV")


def test_criterion_06_deficit_halving():
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        Gamma = rng.uniform(0.05, 2.0)
        V = rng.uniform(0.1, 4.0)
        T = rng.uniform(0.0, 300.0)
        E0 = 10.0 + rng.uniform(-3.0, 3.0)
        bias = BiasPoint(10.0 + V / 2, 10.0 - V / 2, T)
        _, d_par = current_components(bias, make_model(E0, Gamma))
        _, d_anti = current_components(
            bias, make_model(E0, Gamma, SpinOrientation.ANTIPARALLEL))
        worst = max(worst, abs(d_anti / d_par - 0.5) / 0.5)
    assert worst < 1e-9
    report(6, 10.0, time.perf_counter() - t0,
           f"max relative deviation from 1/2: {worst:.2e}")


def test_criterion_07_mean_reflection_closed_form():
    t0 = time.perf_counter()
    model = make_model(5.0, 1.0)
    value = mean_reflection(model, (4.0, 6.0))
    assert value == pytest.approx(math.pi / 4, abs=1e-6)
    # the discrepancy with a ~1/3 estimate is documented in the report
    rep = readout_report(make_config())
    assert "1/3" in rep.lineshape_note and "pi/4" in rep.lineshape_note
    report(7, 1.0, time.perf_counter() - t0,
           f"mean R over +-Gamma = {value:.6f} (pi/4 = {math.pi / 4:.6f})")


def test_criterion_08_oracle_agreement():
    t0 = time.perf_counter()
    lat = OracleLattice(hopping_t=1000.0, site_energy_eps_d=0.0,
                        coupling_tp=100.0)
    dev, gamma, grid, _, _ = compare_to_fano(lat, 5.0)
    assert dev < 0.01
    worst_unitarity = max(
        abs(oracle_transmission(E, lat) + oracle_reflection(E, lat) - 1.0)
        for E in grid)
    assert worst_unitarity < 1e-12
    devs = [compare_to_fano(OracleLattice(1000.0, 0.0, r * 1000.0), 5.0)[0]
            for r in (0.2, 0.1, 0.05)]
    assert all(b < a for a, b in zip(devs, devs[1:]))
    report(8, 10.0, time.perf_counter() - t0,
           f"max |T_oracle - T_fano| = {dev:.2e}, Gamma_eff = {gamma:.3f} meV")


def test_criterion_09_thermal_washout():
    t0 = time.perf_counter()
    model = make_model(0.0, 1.0, bottom=-5000.0)
    temps = [k / CONSTANTS.k_B for k in (0.01, 0.1, 1.0, 10.0)]
    G = [linear_conductance(model, T, 0.0) for T in temps]
    assert all(b >= a for a, b in zip(G, G[1:]))
    assert G[-1] > 0.9 * G0
    report(9, 10.0, time.perf_counter() - t0,
           "G/G0 = " + ", ".join(f"{g / G0:.4f}" for g in G))


def test_criterion_10_n_scaling():
    def check():
        R = 1e-4
        for N in (2, 5, 10):
            inc = n_qubit_reflection(
                ScalingModel(Arrangement.RANDOM_INCOHERENT, N, R)).reflection
            coh = n_qubit_reflection(
                ScalingModel(Arrangement.ORDERED_COHERENT, N, R)).reflection
            assert inc == pytest.approx(N * R, rel=5e-3)
            assert coh / inc == pytest.approx(N, rel=0.05)

    report(10, 1e-3, timed_best_of(check),
           "incoherent ~ N R, coherent/incoherent ~ N")


def test_criterion_11_qnd_predicates():
    blocked = make_config(beta=3.0, Gamma=1.0)
    not_blocked = make_config(beta=0.3, Gamma=1.0)

    def check():
        assert spin_flip_blocked(blocked, 3.0).satisfied
        assert not spin_flip_blocked(not_blocked, 3.0).satisfied

    report(11, 1e-3, timed_best_of(check),
           "beta = 3 meV blocked, beta = 0.3 meV not, at Gamma = 1 meV")


def test_criterion_12_cli_determinism(tmp_path):
    t0 = time.perf_counter()
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["iv", "--grid=-2:2:11", "--out", str(a)]) == 0
    assert main(["iv", "--grid=-2:2:11", "--out", str(b)]) == 0
    assert (a / "iv.csv").read_bytes() == (b / "iv.csv").read_bytes()
    rc = main(["iv", "--set", "Gamma=-1", "--out", str(tmp_path / "c")])
    assert rc == 1
    report(12, 5.0, time.perf_counter() - t0,
           "byte-identical iv.csv; Gamma=-1 exits 1")
