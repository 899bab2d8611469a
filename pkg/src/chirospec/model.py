"""Rotating-frame model of the driven cyclic three-level triad.

The three excited states |1>, |2>, |3> of a chiral molecule are coupled
pairwise by three classical drives under three-photon resonance
(v31 = v21 + v32).  In the co-rotating frame the drive block becomes the
time-independent Hermitian matrix

    H = [[0,    W21*, W31*],
         [W21,  d21,  W32*],
         [W31,  W32,  d31 ]]

in the basis (|1>, |2>, |3>), with detunings d_ij = (w_i - w_j) - v_ij.
The two enantiomers differ only in the sign of the 3-1 coupling: the
right-handed molecule uses +omega31, the left-handed one -omega31.  All
energies are expressed in units of the dissipation rate gamma.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DetuningTooSmall, NonHermitianInput

HERMITICITY_TOL = 1e-12
COMPLETENESS_TOL = 1e-10
DEGENERACY_TOL = 1e-9


class Chirality(enum.Enum):
    """Handedness tag of an enantiomer."""

    LEFT = "L"
    RIGHT = "R"

    def mirror(self) -> "Chirality":
        return Chirality.LEFT if self is Chirality.RIGHT else Chirality.RIGHT


@dataclass(frozen=True)
class DriveConfig:
    """Drive couplings and detunings of the cyclic triad.

    omega31 always stores the right-handed value; the sign actually used
    in the Hamiltonian is resolved from ``chirality``.  Couplings may be
    complex, detunings are real.  Units of gamma throughout.
    """

    omega21: complex = 0.1
    omega31: complex = 0.1
    omega32: complex = 0.1
    delta21: float = 0.0
    delta31: float = 0.0
    chirality: Chirality = Chirality.RIGHT

    def __post_init__(self):
        for name in ("omega21", "omega31", "omega32"):
            if not np.isfinite(complex(getattr(self, name))):
                raise ValueError(f"{name} must be finite")
        for name in ("delta21", "delta31"):
            if not math.isfinite(float(getattr(self, name))):
                raise ValueError(f"{name} must be finite")

    def mirror(self) -> "DriveConfig":
        """Same molecule, opposite handedness (stored couplings unchanged)."""
        return replace(self, chirality=self.chirality.mirror())

    @property
    def signed_omega31(self) -> complex:
        """3-1 coupling with the enantiomer-dependent sign applied."""
        if self.chirality is Chirality.RIGHT:
            return self.omega31
        return -self.omega31

    @property
    def max_coupling(self) -> float:
        return max(abs(self.omega21), abs(self.omega31), abs(self.omega32))


@dataclass(frozen=True)
class HermitianTriad:
    """3x3 complex matrix in the basis (|1>, |2>, |3>)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError("triad matrix must be 3x3")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def hermiticity_defect(self) -> float:
        """Max-entry deviation from H = H^dagger."""
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


@dataclass(frozen=True)
class DressedTriad:
    """Dressed states of the driven triad.

    lambdas are the eigenvalues sorted ascending; eta1[i] is the overlap
    <1|lambda_i> of the i-th dressed state with the probe-coupled state.
    Within a degenerate eigenvalue block the squared overlaps are the
    block projection of |1> split evenly among its members.
    """

    lambdas: np.ndarray
    eta1: np.ndarray
    chirality: Chirality

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float).copy()
        eta = np.asarray(self.eta1, dtype=complex).copy()
        if lam.shape != (3,) or eta.shape != (3,):
            raise ValueError("dressed triad needs 3 eigenvalues and 3 overlaps")
        lam.flags.writeable = False
        eta.flags.writeable = False
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "eta1", eta)

    @property
    def eta1_sq(self) -> np.ndarray:
        return np.abs(self.eta1) ** 2


@dataclass(frozen=True)
class NoiseParams:
    """Uniform dissipation rate gamma (> 0) that fixes the unit scale."""

    gamma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError("gamma > 0")


def build_rotating_hamiltonian(cfg: DriveConfig) -> HermitianTriad:
    """Assemble the rotating-frame triad Hamiltonian for one enantiomer."""
    w21 = complex(cfg.omega21)
    w31 = complex(cfg.signed_omega31)
    w32 = complex(cfg.omega32)
    h = np.array(
        [
            [0.0, np.conj(w21), np.conj(w31)],
            [w21, cfg.delta21, np.conj(w32)],
            [w31, w32, cfg.delta31],
        ],
        dtype=complex,
    )
    return HermitianTriad(h)


def _gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest component is real positive."""
    k = int(np.argmax(np.abs(vec)))
    pivot = vec[k]
    if pivot == 0:
        return vec
    phase = pivot / abs(pivot)
    return vec / phase


def dressed_states(
    h: HermitianTriad,
    chirality: Chirality,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> DressedTriad:
    """Diagonalize the triad and report eigenvalues + overlaps with |1>.

    Raises NonHermitianInput if the matrix fails the Hermiticity
    tolerance.  Eigenvalues come out sorted ascending; each eigenvector
    is gauge fixed (largest component real positive).  Degenerate blocks
    (eigenvalues within ``degeneracy_tol``) report the evenly split block
    projection of |1>, which is the only gauge-independent content.
    """
    if h.hermiticity_defect() > HERMITICITY_TOL:
        raise NonHermitianInput(
            f"matrix deviates from Hermitian by {h.hermiticity_defect():.3e}"
        )
    lam, vecs = np.linalg.eigh(h.matrix)
    eta = np.empty(3, dtype=complex)
    for i in range(3):
        eta[i] = _gauge_fix(vecs[:, i])[0]

    # Even split of the |1> projection inside each degenerate block.
    i = 0
    while i < 3:
        j = i + 1
        while j < 3 and lam[j] - lam[i] <= degeneracy_tol:
            j += 1
        if j - i > 1:
            weight = float(np.sum(np.abs(vecs[0, i:j]) ** 2))
            eta[i:j] = math.sqrt(weight / (j - i))
        i = j

    return DressedTriad(lambdas=lam, eta1=eta, chirality=chirality)


def characteristic_invariants(h: HermitianTriad) -> tuple[float, float, float]:
    """Coefficients of the characteristic polynomial: trace, pair sum, det.

    Returns (sum lambda_i, sum_{i<j} lambda_i lambda_j, prod lambda_i); all
    three are real for Hermitian input.
    """
    if h.hermiticity_defect() > HERMITICITY_TOL:
        raise NonHermitianInput("characteristic invariants need Hermitian input")
    m = h.matrix
    trace = float(np.trace(m).real)
    pair = 0.0
    for a in range(3):
        for b in range(a + 1, 3):
            pair += (m[a, a] * m[b, b] - m[a, b] * m[b, a]).real
    det = float(np.linalg.det(m).real)
    return trace, pair, det


def perturbative_lambda1(cfg: DriveConfig, big_detuning: float) -> float:
    """Perturbative dressed energy of the state adiabatically connected to |1>.

    Valid when both drives detune far above the couplings
    (delta21 = delta31 = D >> |omega|).  Stationary perturbation theory
    through third order gives

        lambda_1 = -(|W21|^2 + |W31|^2) / D + 2 Re(W31 W21* W32*) / D^2,

    whose last term carries the chirality through the sign of the
    coupling product.  Agrees with the exact eigenvalue nearest zero to
    O(|omega|^4 / D^3).
    """
    if cfg.delta21 != big_detuning or cfg.delta31 != big_detuning:
        raise ValueError("config must use delta21 = delta31 = big_detuning")
    if big_detuning <= 0 or big_detuning < 10.0 * cfg.max_coupling:
        raise DetuningTooSmall(
            f"need big_detuning >= 10*max|omega| = {10.0 * cfg.max_coupling:g}"
        )
    w21 = complex(cfg.omega21)
    w31 = complex(cfg.signed_omega31)
    w32 = complex(cfg.omega32)
    d = float(big_detuning)
    second = -(abs(w21) ** 2 + abs(w31) ** 2) / d
    third = 2.0 * (w31 * np.conj(w21) * np.conj(w32)).real / d**2
    return second + third
