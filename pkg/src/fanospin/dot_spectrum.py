"""Two-electron dot spectrum under exchange and spin-orbit interaction.

Basis: 8 product states |l1z, s0z, s1z> with l1z = +-1 (excited-orbital
angular momentum projection) and s0z, s1z = +-1/2 (ground / excited electron
spins).  Ordering is lexicographic in (l1z, s0z, s1z), minus first.

Energies below are measured relative to the one-electron ground
configuration, i.e. the constant offset eps0 is dropped; a level energy is
therefore directly the energy an incoming wire electron must supply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import CONSTANTS
from .config import DeviceConfig, Spin

DEGENERACY_TOL = 1e-10          # meV, for grouping coincident levels
CHARACTER_TIE_TOL = 1e-9        # squared-overlap tie -> Mixed

BASIS = tuple(
    (l1z, s0z, s1z)
    for l1z in (-1, +1)
    for s0z in (-0.5, +0.5)
    for s1z in (-0.5, +0.5)
)


class Character(Enum):
    SINGLET = "Singlet"
    TRIPLET = "Triplet"
    MIXED = "Mixed"


@dataclass(frozen=True)
class HamiltonianMatrix:
    matrix: np.ndarray                       # 8x8 real symmetric, meV
    blocks: tuple[tuple[int, ...], ...]      # index groups (fixed l1z, Sz)


@dataclass(frozen=True)
class Level:
    energy: float                # meV, relative to the eps0 reference
    character: Character
    sz_total: float              # sum over degenerate members (0 if mixed)
    l1z: int                     # +-1, or 0 when a group spans both branches
    degeneracy: int
    parallel_accessible: bool    # contains the spin-aligned |up,up> state


@dataclass(frozen=True)
class LevelDiagram:
    levels: tuple[Level, ...]    # sorted ascending by energy


@dataclass(frozen=True)
class ResonanceSpec:
    energy: float                # meV, relative to the eps0 reference
    Gamma: float                 # meV
    q: complex


@dataclass(frozen=True)
class MarginReport:
    satisfied: bool
    ratio: float                 # splitting / Gamma
    strictness: float


@dataclass(frozen=True)
class SpinFlipTime:
    seconds: float
    finite: bool


def two_electron_hamiltonian(config: DeviceConfig) -> HamiltonianMatrix:
    """H = (eps1 + U_C) - J S0.S1 + beta L1z S1z on the 8-state basis.

    Diagonal: (eps1 + U_C) - J s0z s1z + beta l1z s1z; the transverse part
    of the exchange couples the flip-flop partners |up,down> <-> |down,up>
    within each l1z branch with matrix element -J/2.  The dot-wire tunneling
    enters only through the broadening Gamma, never as matrix entries.
    """
    e_diag = config.eps1 + config.U_C
    J = config.J
    beta = config.beta_value
    H = np.zeros((8, 8))
    index = {b: i for i, b in enumerate(BASIS)}
    for i, (l1z, s0z, s1z) in enumerate(BASIS):
        H[i, i] = e_diag - J * s0z * s1z + beta * l1z * s1z
        if s0z != s1z:
            j = index[(l1z, s1z, s0z)]
            H[i, j] = -J / 2.0
    blocks = []
    for l1z in (-1, +1):
        for sz in (-1.0, 0.0, 1.0):
            grp = tuple(i for i, (l, s0, s1) in enumerate(BASIS)
                        if l == l1z and s0 + s1 == sz)
            blocks.append(grp)
    return HamiltonianMatrix(matrix=H, blocks=tuple(blocks))


# singlet / triplet reference vectors within a flip-flop block,
# ordered (|down,up>, |up,down>) per the basis ordering
_TRIPLET0 = np.array([1.0, 1.0]) / math.sqrt(2.0)
_SINGLET0 = np.array([1.0, -1.0]) / math.sqrt(2.0)


def eigenlevels(H: HamiltonianMatrix, config: DeviceConfig) -> LevelDiagram:
    """Diagonalize block-wise and assemble the labeled level diagram.

    Stretched states (|up,up>, |down,down>) are exact triplets.  Flip-flop
    block eigenstates are labeled by their squared overlap with the
    zero-spin-orbit singlet/triplet vectors: the dominant character wins;
    an exact tie is labeled Mixed.  Levels coincident in energy within
    1e-10 meV are merged; a merged level reports l1z = 0 when it spans both
    orbital branches and sz_total as the sum over its members.
    """
    M = H.matrix
    states = []  # (energy, character, sz, l1z, is_up_up)
    for grp in H.blocks:
        if len(grp) == 1:
            i = grp[0]
            l1z, s0z, s1z = BASIS[i]
            states.append((float(M[i, i]), Character.TRIPLET, s0z + s1z, l1z,
                           s0z > 0 and s1z > 0))
        else:
            sub = M[np.ix_(grp, grp)]
            vals, vecs = np.linalg.eigh(sub)
            l1z = BASIS[grp[0]][0]
            for k in range(len(grp)):
                v = vecs[:, k]
                p_t = float(np.dot(_TRIPLET0, v) ** 2)
                if p_t > 0.5 + CHARACTER_TIE_TOL:
                    ch = Character.TRIPLET
                elif p_t < 0.5 - CHARACTER_TIE_TOL:
                    ch = Character.SINGLET
                else:
                    ch = Character.MIXED
                states.append((float(vals[k]), ch, 0.0, l1z, False))

    states.sort(key=lambda s: s[0])
    groups: list[list] = []
    for s in states:
        if groups and abs(s[0] - groups[-1][0][0]) <= DEGENERACY_TOL:
            groups[-1].append(s)
        else:
            groups.append([s])

    levels = []
    for grp in groups:
        chars = {s[1] for s in grp}
        l1zs = {s[3] for s in grp}
        levels.append(Level(
            energy=grp[0][0],
            character=chars.pop() if len(chars) == 1 else Character.MIXED,
            sz_total=sum(s[2] for s in grp),
            l1z=l1zs.pop() if len(l1zs) == 1 else 0,
            degeneracy=len(grp),
            parallel_accessible=any(s[4] for s in grp),
        ))
    return LevelDiagram(levels=tuple(levels))


def target_level(diagram: LevelDiagram, config: DeviceConfig) -> ResonanceSpec:
    """Resonance the wire electron tunnels to: the spin-aligned stretched
    triplet, lower spin-orbit branch when the two branches split."""
    candidates = [lv for lv in diagram.levels if lv.parallel_accessible]
    if not candidates:
        raise RuntimeError("level diagram has no spin-aligned level")
    lowest = min(candidates, key=lambda lv: lv.energy)
    return ResonanceSpec(energy=lowest.energy, Gamma=config.Gamma,
                         q=config.q)


def spin_flip_blocked(config: DeviceConfig,
                      strictness: float = 3.0) -> MarginReport:
    """Spin flips are energetically forbidden when the spin-orbit splitting
    dominates the level broadening: |beta| >= strictness * Gamma."""
    if strictness <= 0:
        raise ValueError("strictness must be > 0")
    ratio = abs(config.beta_value) / config.Gamma
    return MarginReport(satisfied=ratio >= strictness, ratio=ratio,
                        strictness=strictness)


def levels_distinguishable(config: DeviceConfig,
                           strictness: float = 3.0) -> MarginReport:
    """Singlet and triplet resonances resolve when |J| >= strictness * Gamma."""
    if strictness <= 0:
        raise ValueError("strictness must be > 0")
    ratio = abs(config.J) / config.Gamma
    return MarginReport(satisfied=ratio >= strictness, ratio=ratio,
                        strictness=strictness)


def spin_flip_time(J: float) -> SpinFlipTime:
    """Exchange-driven spin-flip timescale hbar/|J| in seconds."""
    if J == 0:
        return SpinFlipTime(seconds=math.inf, finite=False)
    return SpinFlipTime(seconds=CONSTANTS.hbar / abs(J), finite=True)


def analytic_eigenvalues(J: float, beta: float) -> list[float]:
    """Closed-form spectrum relative to eps1 + U_C, with multiplicity.

    {-J/4 + beta/2, -J/4 - beta/2, J/4 + r, J/4 - r} with
    r = sqrt(J^2 + beta^2)/2, each appearing once per l1z branch.
    """
    r = math.sqrt(J * J + beta * beta) / 2.0
    vals = [-J / 4 + beta / 2, -J / 4 - beta / 2, J / 4 + r, J / 4 - r]
    return sorted(vals * 2)
