"""Energy-resolved wire transmission: Fano lineshape, spin-channel
weighting, multi-mode composition, and windowed mean reflection.

The dot-coupled channel carries a Fano dip T = |eps + q*Gamma|^2 /
(eps^2 + Gamma^2).  When the dot spin is antiparallel to the wire
polarization only the S=1 component of the incoming two-spin state (weight
1/2) can scatter off the resonance, so the reflection is half the parallel
one at every energy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

from scipy.integrate import quad

from .config import DeviceConfig, Mode, Spin
from .dot_spectrum import ResonanceSpec

MEAN_REFLECTION_ABS_TOL = 1e-9


class UnphysicalTransmissionWarning(UserWarning):
    """Complex q pushed the Fano transmission above 1."""


class SpinOrientation(Enum):
    PARALLEL = "Parallel"
    ANTIPARALLEL = "Antiparallel"


#: Weight of the resonance-accessible spin channel.
CHANNEL_WEIGHT = {
    SpinOrientation.PARALLEL: 1.0,
    SpinOrientation.ANTIPARALLEL: 0.5,
}


@dataclass(frozen=True)
class TransmissionModel:
    resonance: ResonanceSpec
    orientation: SpinOrientation
    modes: tuple[Mode, ...]

    @property
    def weight(self) -> float:
        return CHANNEL_WEIGHT[self.orientation]

    @property
    def coupled_index(self) -> int:
        return next(i for i, m in enumerate(self.modes) if m.coupled)


def from_config(config: DeviceConfig, resonance: ResonanceSpec,
                orientation: SpinOrientation | None = None) -> TransmissionModel:
    if orientation is None:
        orientation = (SpinOrientation.PARALLEL
                       if config.dot_spin is config.wire_spin
                       else SpinOrientation.ANTIPARALLEL)
    return TransmissionModel(resonance=resonance, orientation=orientation,
                             modes=tuple(config.modes))


def fano_transmission(detuning: float, Gamma: float, q: complex) -> float:
    """T = |eps + q Gamma|^2 / (eps^2 + Gamma^2).

    For real q the value is bounded by max(1, q^2); a complex q can exceed 1,
    which is physically meaningless for a two-terminal wire and triggers an
    UnphysicalTransmissionWarning.
    """
    if not Gamma > 0:
        raise ValueError(f"Gamma must be > 0, got {Gamma}")
    t = abs(detuning + q * Gamma) ** 2 / (detuning**2 + Gamma**2)
    if t > 1.0:
        warnings.warn(
            f"Fano transmission {t:.6g} > 1 for complex q = {q}",
            UnphysicalTransmissionWarning, stacklevel=2)
    return t


def spin_channel_reflection(E: float, model: TransmissionModel) -> float:
    """R(E) = w * (1 - T_fano(E - E_res)); w = 1 parallel, 1/2 antiparallel."""
    res = model.resonance
    t = fano_transmission(E - res.energy, res.Gamma, res.q)
    return model.weight * (1.0 - t)


def mode_transmission(E: float, model: TransmissionModel,
                      mode_index: int) -> float:
    """Per-mode transmission: 0 below the subband bottom; ballistic (1) for
    uncoupled modes; the dot-coupled mode carries the Fano dip."""
    if not 0 <= mode_index < len(model.modes):
        raise IndexError(f"mode index {mode_index} out of range")
    mode = model.modes[mode_index]
    if E < mode.bottom_energy:
        return 0.0
    if not mode.coupled:
        return 1.0
    return 1.0 - spin_channel_reflection(E, model)


def total_transmission(E: float, model: TransmissionModel) -> float:
    return sum(mode_transmission(E, model, i) for i in range(len(model.modes)))


def _resonance_panels(model: TransmissionModel, lo: float, hi: float):
    res = model.resonance
    pts = [res.energy + s * k * res.Gamma
           for k in (0.0, 1.0, 3.0, 10.0) for s in (-1.0, 1.0)]
    return sorted({p for p in pts if lo < p < hi})


def mean_reflection(model: TransmissionModel,
                    window: tuple[float, float]) -> float:
    """Average of the coupled-channel reflection over an energy window,
    by adaptive quadrature with panels split around the resonance."""
    lo, hi = window
    if not (lo < hi) or not (abs(lo) < float("inf") and abs(hi) < float("inf")):
        raise ValueError(f"window must be finite with E_lo < E_hi: {window}")
    val, err = quad(lambda E: spin_channel_reflection(E, model), lo, hi,
                    points=_resonance_panels(model, lo, hi) or None,
                    epsabs=MEAN_REFLECTION_ABS_TOL * (hi - lo),
                    epsrel=1e-12, limit=200)
    return val / (hi - lo)
