"""Frequency-resolved two-photon coincidence observables.

The molecule changes the coincidence counts of the (signal, idler)
detector pair by the transmission term

    P_c = -C * sum_i |eta_1i|^2
              * Re[ psi*(ds, wl) / (lambda_i - ds + i*gamma) * Q_i ],

    Q_i  = integral dd'' psi(dd'', wl) / (lambda_i - dd'' + i*gamma),

where ds is the signal detector detuning, wl the idler detector
frequency, lambda_i / eta_1i the dressed energies and overlaps, and
gamma the uniform dissipation rate.  The continuum mode sum is a
composite trapezoidal quadrature over the signal grid; the mode density
and every physical prefactor are absorbed into C = 1, keeping the
leading minus sign because the sign pattern carries the chiral signal.

The background term (counts without the molecule) is |psi|^2 at the
detector pair.  For a zero-bandwidth energy-correlated pair the
transmission collapses to a closed form pinned at ds = omega_p - wl.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .biphoton import (
    BiphotonAmplitude,
    FrequencyGrid,
    JsaKind,
    _require_resolving,
    jsa_value,
)
from .errors import NonFiniteResult, WrongKind
from .model import Chirality, DressedTriad, DriveConfig, NoiseParams
from .model import build_rotating_hamiltonian, dressed_states


@dataclass(frozen=True)
class DetectorPair:
    """Sensitive frequencies of the two ideal (delta-response) detectors.

    omega_s_bar is the signal detector's detuning from the |0> -> |1>
    transition; omega_l_bar is the idler detector frequency in the idler
    frame of the amplitude.
    """

    omega_s_bar: float
    omega_l_bar: float

    def __post_init__(self):
        if not (math.isfinite(self.omega_s_bar) and math.isfinite(self.omega_l_bar)):
            raise ValueError("detector frequencies must be finite")


@dataclass(frozen=True)
class SpectrumCurve:
    """Transmission values versus signal detuning at fixed idler frequency."""

    chirality: Chirality
    omega_l_bar: float
    delta_s: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.delta_s, dtype=float).copy()
        v = np.asarray(self.values, dtype=float).copy()
        if d.ndim != 1 or d.shape != v.shape:
            raise ValueError("delta_s and values must be matching 1-D arrays")
        if not np.all(np.diff(d) > 0):
            raise ValueError("delta_s must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise NonFiniteResult("spectrum curve contains non-finite values")
        d.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "delta_s", d)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.delta_s.size)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


def _trapezoid_uniform(values: np.ndarray, step: float) -> complex:
    """Composite trapezoid rule on a uniform grid (deterministic order)."""
    return step * (values.sum() - 0.5 * (values[0] + values[-1]))


def background_point(amp: BiphotonAmplitude, det: DetectorPair) -> float:
    """Coincidence counts without the molecule: |psi|^2 at the detectors."""
    value = jsa_value(amp, det.omega_s_bar, det.omega_l_bar)
    return float(abs(value) ** 2)


def _mode_integrals(
    dressed: DressedTriad,
    psi_row: np.ndarray,
    grid_s: FrequencyGrid,
    gamma: float,
) -> np.ndarray:
    """Q_i = trapezoid of psi(d'', wl) / (lambda_i - d'' + i*gamma) per dressed state."""
    q = np.empty(3, dtype=complex)
    for i in range(3):
        integrand = psi_row / (dressed.lambdas[i] - grid_s.points + 1j * gamma)
        q[i] = _trapezoid_uniform(integrand, grid_s.step)
    return q


def transmission_point(
    dressed: DressedTriad,
    amp: BiphotonAmplitude,
    noise: NoiseParams,
    det: DetectorPair,
    grid_s: FrequencyGrid,
) -> float:
    """Transmission spectrum at one detector pair, by quadrature over grid_s."""
    _require_resolving(amp, grid_s)
    gamma = noise.gamma
    psi_row = np.asarray(jsa_value(amp, grid_s.points, det.omega_l_bar))
    q = _mode_integrals(dressed, psi_row, grid_s, gamma)
    psi_det = jsa_value(amp, det.omega_s_bar, det.omega_l_bar)
    weights = dressed.eta1_sq
    total = 0.0
    for i in range(3):
        factor = np.conj(psi_det) / (dressed.lambdas[i] - det.omega_s_bar + 1j * gamma)
        total += weights[i] * (factor * q[i]).real
    result = -total
    if not math.isfinite(result):
        raise NonFiniteResult("transmission quadrature produced a non-finite value")
    return float(result)


def transmission_curve(
    cfg: DriveConfig,
    amp: BiphotonAmplitude,
    noise: NoiseParams,
    omega_l_bar: float,
    scan_s: FrequencyGrid,
) -> SpectrumCurve:
    """Scan the signal detector across scan_s at fixed idler frequency.

    The dressed states and the mode integrals Q_i are computed once; the
    per-point evaluation then reproduces transmission_point bit for bit
    (scan_s doubles as the quadrature grid).
    """
    _require_resolving(amp, scan_s)
    gamma = noise.gamma
    dressed = dressed_states(build_rotating_hamiltonian(cfg), cfg.chirality)
    psi_row = np.asarray(jsa_value(amp, scan_s.points, omega_l_bar))
    q = _mode_integrals(dressed, psi_row, scan_s, gamma)
    weights = dressed.eta1_sq
    total = np.zeros(scan_s.points.size, dtype=float)
    for i in range(3):
        factor = np.conj(psi_row) / (dressed.lambdas[i] - scan_s.points + 1j * gamma)
        total += weights[i] * (factor * q[i]).real
    values = -total
    if not np.all(np.isfinite(values)):
        raise NonFiniteResult("transmission quadrature produced a non-finite value")
    return SpectrumCurve(
        chirality=cfg.chirality,
        omega_l_bar=omega_l_bar,
        delta_s=scan_s.points,
        values=values,
    )


def zero_bandwidth_point(
    dressed: DressedTriad,
    amp: BiphotonAmplitude,
    noise: NoiseParams,
    det: DetectorPair,
) -> float:
    """Closed-form transmission for a zero-bandwidth energy-correlated pair.

    The delta factor pins the signal detector at
    dpl = omega_p - omega_l_bar; any other omega_s_bar returns 0.  Only
    the dressed state carrying the largest |eta_1|^2 contributes, which
    reduces the spectrum to

        P = -|eta_1|^2 Re[ phi*(ds) phi(dpl)
                           / ((l1 - ds + i*g)(l1 - dpl + i*g)) ].
    """
    if amp.kind is not JsaKind.ZERO_BANDWIDTH_CORRELATED:
        raise WrongKind("zero_bandwidth_point needs a zero-bandwidth amplitude")
    gamma = noise.gamma
    dpl = amp.omega_p - det.omega_l_bar
    if det.omega_s_bar != dpl:
        return 0.0
    top = int(np.argmax(dressed.eta1_sq))
    lam = dressed.lambdas[top]
    weight = dressed.eta1_sq[top]
    phi_s = amp.envelope(det.omega_s_bar)
    phi_pl = amp.envelope(dpl)
    denom = (lam - det.omega_s_bar + 1j * gamma) * (lam - dpl + 1j * gamma)
    value = -weight * (np.conj(phi_s) * phi_pl / denom).real
    if not math.isfinite(value):
        raise NonFiniteResult("zero-bandwidth evaluation produced a non-finite value")
    return float(value)
