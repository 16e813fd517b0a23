import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fanospin.lattice_oracle import (BandEdgeError, ExtractionError,
                                     OracleLattice, compare_to_fano,
                                     dip_minimum, effective_broadening,
                                     oracle_transmission,
                                     scattering_amplitudes)


def test_decoupled_level_is_transparent():
    lat = OracleLattice(hopping_t=1.0, site_energy_eps_d=0.0, coupling_tp=0.0)
    for E in np.linspace(-1.9, 1.9, 31):
        assert oracle_transmission(E, lat) == 1.0


def test_band_edge_rejected():
    lat = OracleLattice(hopping_t=1.0, site_energy_eps_d=0.0, coupling_tp=0.1)
    for E in (2.0, -2.0, 2.5):
        with pytest.raises(BandEdgeError):
            oracle_transmission(E, lat)


def test_invalid_lattice_rejected():
    with pytest.raises(ValueError):
        OracleLattice(hopping_t=0.0, site_energy_eps_d=0.0, coupling_tp=0.1)
    with pytest.raises(ValueError):
        OracleLattice(hopping_t=1.0, site_energy_eps_d=0.0, coupling_tp=-0.1)


def test_perfect_antiresonance_at_level():
    for eps_d in (0.0, 0.5, -0.7):
        lat = OracleLattice(hopping_t=1.0, site_energy_eps_d=eps_d,
                            coupling_tp=0.2)
        assert oracle_transmission(eps_d, lat) == 0.0
        assert dip_minimum(lat) == pytest.approx(eps_d, abs=1e-9)


@given(E=st.floats(-1.99, 1.99), tp=st.floats(0.0, 1.0),
       eps_d=st.floats(-1.5, 1.5))
def test_unitarity(E, tp, eps_d):
    lat = OracleLattice(hopping_t=1.0, site_energy_eps_d=eps_d,
                        coupling_tp=tp)
    tau, r = scattering_amplitudes(E, lat)
    assert abs(tau) ** 2 + abs(r) ** 2 == pytest.approx(1.0, abs=1e-12)


@given(E=st.floats(0.0, 1.99), tp=st.floats(0.01, 0.5))
def test_symmetry_at_band_center(E, tp):
    lat = OracleLattice(hopping_t=1.0, site_energy_eps_d=0.0, coupling_tp=tp)
    assert oracle_transmission(E, lat) == pytest.approx(
        oracle_transmission(-E, lat), abs=1e-12)


def test_effective_broadening_weak_coupling_value():
    # Gamma_eff ~ tp^2 / (2 t sin k_F), k_F = pi/2 at band center
    lat = OracleLattice(hopping_t=1000.0, site_energy_eps_d=0.0,
                        coupling_tp=100.0)
    gamma = effective_broadening(lat)
    assert gamma == pytest.approx(100.0**2 / (2 * 1000.0), rel=0.01)


def test_effective_broadening_quadratic_in_coupling():
    t = 1000.0
    g1 = effective_broadening(OracleLattice(t, 0.0, 50.0))
    g2 = effective_broadening(OracleLattice(t, 0.0, 100.0))
    assert g2 == pytest.approx(4 * g1, rel=0.05)


def test_effective_broadening_symmetric_at_band_center():
    lat = OracleLattice(hopping_t=1000.0, site_energy_eps_d=0.0,
                        coupling_tp=100.0)
    E_min = dip_minimum(lat)
    gamma = effective_broadening(lat, E_min)
    # left/right half-widths agree within 1%: compare single-sided values
    t_half_left = oracle_transmission(E_min - gamma, lat)
    t_half_right = oracle_transmission(E_min + gamma, lat)
    assert t_half_left == pytest.approx(0.5, abs=0.01)
    assert t_half_right == pytest.approx(0.5, abs=0.01)


def test_effective_broadening_requires_a_dip():
    with pytest.raises(ExtractionError):
        effective_broadening(OracleLattice(1.0, 0.0, 0.0))


def test_weak_coupling_matches_fano_lineshape():
    lat = OracleLattice(hopping_t=1000.0, site_energy_eps_d=0.0,
                        coupling_tp=100.0)
    dev, gamma, grid, t_oracle, t_fano = compare_to_fano(lat, 5.0)
    assert dev < 0.01
    assert len(grid) == 1001
    assert gamma > 0


def test_deviation_decreases_with_coupling():
    devs = [compare_to_fano(OracleLattice(1000.0, 0.0, r * 1000.0), 5.0)[0]
            for r in (0.3, 0.2, 0.1, 0.05)]
    assert all(b < a for a, b in zip(devs, devs[1:]))


def test_compare_decoupled_is_exact():
    dev, gamma, _, t_oracle, t_fano = compare_to_fano(
        OracleLattice(1.0, 0.0, 0.0))
    assert dev == 0.0
    assert np.all(t_oracle == 1.0) and np.all(t_fano == 1.0)
