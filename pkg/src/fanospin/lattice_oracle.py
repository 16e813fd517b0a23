"""Brute-force transmission oracle: 1D tight-binding chain with one
side-coupled level.

The infinite chain has dispersion E(k) = -2 t cos(k).  Eliminating the side
level exactly gives an energy-dependent on-site scatterer sigma(E) =
tp^2 / (E - eps_d) at the attachment site; the scattering amplitudes follow
from matching plane-wave solutions across that site:

    tau(E) = 2 i t sin(k) / (2 i t sin(k) - sigma(E)),   r = tau - 1.

This is the retarded-Green's-function (self-energy) route; it involves no
lineshape ansatz, so it serves as an independent check of the analytic Fano
formula in the weak-coupling limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .fano import fano_transmission

HALF_WIDTH_XTOL_FACTOR = 1e-6   # times hopping_t, bisection tolerance


class BandEdgeError(ValueError):
    """Energy outside the propagating band |E| < 2t."""


class ExtractionError(RuntimeError):
    """Dip too shallow for a half-width-at-half-depth extraction."""


@dataclass(frozen=True)
class OracleLattice:
    hopping_t: float        # meV, > 0
    site_energy_eps_d: float  # side-level energy relative to band center, meV
    coupling_tp: float      # wire <-> level hook, meV, >= 0

    def __post_init__(self):
        if not self.hopping_t > 0:
            raise ValueError(f"hopping_t must be > 0, got {self.hopping_t}")
        if self.coupling_tp < 0:
            raise ValueError(
                f"coupling_tp must be >= 0, got {self.coupling_tp}")

    @property
    def band_edge(self) -> float:
        return 2.0 * self.hopping_t


def scattering_amplitudes(E: float,
                          lattice: OracleLattice) -> tuple[complex, complex]:
    """(transmission, reflection) amplitudes at in-band energy E."""
    if abs(E) >= lattice.band_edge:
        raise BandEdgeError(
            f"|E| = {abs(E)} meV is outside the band (edge "
            f"{lattice.band_edge} meV)")
    k = math.acos(-E / (2.0 * lattice.hopping_t))
    v = 2.0 * lattice.hopping_t * math.sin(k)   # group-velocity factor
    if lattice.coupling_tp == 0:
        return 1.0 + 0j, 0j
    if E == lattice.site_energy_eps_d:
        return 0j, -1.0 + 0j
    sigma = lattice.coupling_tp**2 / (E - lattice.site_energy_eps_d)
    tau = 1j * v / (1j * v - sigma)
    return tau, tau - 1.0


def oracle_transmission(E: float, lattice: OracleLattice) -> float:
    tau, _ = scattering_amplitudes(E, lattice)
    return abs(tau) ** 2


def oracle_reflection(E: float, lattice: OracleLattice) -> float:
    _, r = scattering_amplitudes(E, lattice)
    return abs(r) ** 2


def dip_minimum(lattice: OracleLattice) -> float:
    """Energy of the transmission minimum (perfect antiresonance)."""
    if lattice.coupling_tp == 0:
        raise ExtractionError("decoupled level: transmission has no dip")
    eps_d = lattice.site_energy_eps_d
    if abs(eps_d) >= lattice.band_edge:
        raise ExtractionError("side level lies outside the band")
    span = min(lattice.band_edge - abs(eps_d), lattice.band_edge) * 0.5
    res = minimize_scalar(lambda E: oracle_transmission(E, lattice),
                          bounds=(eps_d - span, eps_d + span),
                          method="bounded",
                          options={"xatol": 1e-12 * lattice.hopping_t})
    # the side level itself is always a candidate (exact antiresonance)
    best = min((float(res.x), eps_d),
               key=lambda E: oracle_transmission(E, lattice))
    return best


def effective_broadening(lattice: OracleLattice,
                         E_center: float | None = None) -> float:
    """Half-width at half depth of the oracle dip, mean of both sides.

    Bisection on T(E) = 1/2 outward from the minimum; tolerance
    1e-6 * hopping_t.
    """
    E_min = dip_minimum(lattice) if E_center is None else E_center
    t_min = oracle_transmission(E_min, lattice)
    if t_min > 0.5:
        raise ExtractionError(
            f"dip depth {1 - t_min:.3g} < 0.5; half-width undefined")
    xtol = HALF_WIDTH_XTOL_FACTOR * lattice.hopping_t
    edge = lattice.band_edge * (1.0 - 1e-9)
    # initial flank step: weak-coupling width estimate
    step0 = max(lattice.coupling_tp**2 / (2.0 * lattice.hopping_t), xtol)
    widths = []
    for sign in (-1.0, +1.0):
        # expand outward until the flank recovers above 1/2
        # (transmission also vanishes at the band edges, so probe inward out)
        step = step0
        outer = E_min + sign * step
        while abs(outer) < edge and oracle_transmission(outer, lattice) < 0.5:
            step *= 2.0
            outer = E_min + sign * step
        if abs(outer) >= edge:
            outer = sign * edge
            if oracle_transmission(outer, lattice) < 0.5:
                raise ExtractionError("dip flank does not recover above 1/2")
        x = brentq(lambda E: oracle_transmission(E, lattice) - 0.5,
                   *sorted((E_min + sign * xtol, outer)), xtol=xtol)
        widths.append(abs(x - E_min))
    return 0.5 * (widths[0] + widths[1])


def compare_to_fano(lattice: OracleLattice,
                    window_halfwidth: float = 5.0,
                    n_points: int = 1001):
    """Max |T_oracle - T_fano| over a grid of n_points spanning
    +- window_halfwidth * Gamma_eff about the oracle dip minimum, with the
    Fano detuning measured from that minimum and Gamma = Gamma_eff.

    Returns (max_deviation, Gamma_eff, grid, T_oracle, T_fano).
    """
    if lattice.coupling_tp == 0:
        grid = np.linspace(-lattice.band_edge * 0.5,
                           lattice.band_edge * 0.5, n_points)
        ones = np.ones_like(grid)
        return 0.0, 0.0, grid, ones, ones
    E_min = dip_minimum(lattice)
    gamma = effective_broadening(lattice, E_min)
    half = window_halfwidth * gamma
    edge = lattice.band_edge * (1.0 - 1e-9)
    lo = max(E_min - half, -edge)
    hi = min(E_min + half, edge)
    grid = np.linspace(lo, hi, n_points)
    t_oracle = np.array([oracle_transmission(E, lattice) for E in grid])
    t_fano = np.array([fano_transmission(E - E_min, gamma, 0j)
                       for E in grid])
    dev = float(np.max(np.abs(t_oracle - t_fano)))
    return dev, gamma, grid, t_oracle, t_fano
