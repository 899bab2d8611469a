"""Joint spectral amplitudes of the two-photon probe.

Three probe families are supported:

* uncorrelated Gaussian pairs,
      psi(ws, wl) = exp(-[(ws-wsc)^2 + (wl-wlc)^2] / (2 sigma^2)),
* frequency-entangled pairs from downconversion, a Gaussian pump
  envelope times the crystal phase-mismatch factor,
      psi(ws, wl) = exp(-(ws+wl-wp)^2 / (2 sigma_p^2)) * exp(-kappa^2),
      kappa = (ws - wsc) Ts/2 + (wl - wlc) Tl/2,
* the zero-bandwidth limit psi = phi_s(ws) delta(ws + wl - wp), which is
  never sampled on a grid and is consumed analytically downstream.

Signal frequencies are stored as detunings from the |0> -> |1>
transition; idler frequencies from an arbitrary idler origin.  The pump
center lives in the same shifted coordinates, so energy matching reads
omega_sc + omega_lc = omega_p.  Everything is in units of gamma.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import GridTooCoarse, UnsupportedKind

#: A sampling step must resolve the narrowest amplitude feature by this factor.
RESOLVE_FACTOR = 10.0
#: Default grids sample that feature this many times per width instead.
DEFAULT_STEP_FACTOR = 20.0
#: Default grids extend this many widths from the center.
DEFAULT_SPAN_WIDTHS = 6.0


class JsaKind(enum.Enum):
    UNCORRELATED_GAUSSIAN = "uncorrelated"
    ENTANGLED_SPDC = "entangled"
    ZERO_BANDWIDTH_CORRELATED = "zero_bandwidth"


@dataclass(frozen=True)
class BiphotonAmplitude:
    """Descriptor of one two-photon joint spectral amplitude.

    ``scale`` multiplies the raw amplitude (the default construction
    peaks at 1).  ``signal_envelope`` is only meaningful for the
    zero-bandwidth kind; when None a Gaussian of width ``sigma`` centered
    at ``omega_sc`` is used.
    """

    kind: JsaKind
    omega_sc: float = 0.0
    omega_lc: float = 0.0
    sigma: float = 1.0
    omega_p: Optional[float] = None
    sigma_p: float = 1.0
    t_s: float = 0.0
    t_l: float = 0.0
    signal_envelope: Optional[Callable[[float], float]] = field(
        default=None, compare=False
    )
    scale: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ValueError("sigma > 0")
        if not (self.sigma_p > 0):
            raise ValueError("sigma_p > 0")
        if self.t_s < 0 or self.t_l < 0:
            raise ValueError("t_s >= 0 and t_l >= 0")
        if self.omega_p is None and self.kind is not JsaKind.UNCORRELATED_GAUSSIAN:
            # Energy matching unless the caller overrides the pump center.
            object.__setattr__(self, "omega_p", self.omega_sc + self.omega_lc)

    @classmethod
    def uncorrelated(cls, omega_sc=0.0, omega_lc=0.0, sigma=1.0, scale=1.0):
        return cls(
            JsaKind.UNCORRELATED_GAUSSIAN,
            omega_sc=omega_sc,
            omega_lc=omega_lc,
            sigma=sigma,
            scale=scale,
        )

    @classmethod
    def entangled(
        cls, omega_sc=0.0, omega_lc=0.0, sigma_p=1.0, t_s=0.0, t_l=0.0,
        omega_p=None, scale=1.0,
    ):
        return cls(
            JsaKind.ENTANGLED_SPDC,
            omega_sc=omega_sc,
            omega_lc=omega_lc,
            sigma_p=sigma_p,
            t_s=t_s,
            t_l=t_l,
            omega_p=omega_p,
            scale=scale,
        )

    @classmethod
    def zero_bandwidth(
        cls, omega_p=0.0, omega_sc=0.0, sigma=1.0, signal_envelope=None
    ):
        return cls(
            JsaKind.ZERO_BANDWIDTH_CORRELATED,
            omega_sc=omega_sc,
            sigma=sigma,
            omega_p=omega_p,
            signal_envelope=signal_envelope,
        )

    @property
    def samplable(self) -> bool:
        return self.kind is not JsaKind.ZERO_BANDWIDTH_CORRELATED

    def with_scale(self, scale: float) -> "BiphotonAmplitude":
        return replace(self, scale=scale)

    def envelope(self, delta_s):
        """Signal envelope phi_s of the zero-bandwidth kind."""
        if self.signal_envelope is not None:
            return self.signal_envelope(delta_s)
        return np.exp(-((delta_s - self.omega_sc) ** 2) / (2.0 * self.sigma**2))

    def feature_widths(self) -> list[float]:
        """Characteristic widths (units of gamma) of every amplitude feature."""
        if self.kind is JsaKind.UNCORRELATED_GAUSSIAN:
            widths = [self.sigma]
        else:
            widths = [self.sigma_p]
            if self.t_s > 0:
                widths.append(1.0 / self.t_s)
            if self.t_l > 0:
                widths.append(1.0 / self.t_l)
        return widths

    def resolution_scale(self) -> float:
        """Narrowest feature width, capped at the unit scale."""
        return min(1.0, *self.feature_widths())


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform, endpoint-inclusive sampling grid on one frequency axis."""

    center: float
    half_width: float
    step: float
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).copy()
        if not (self.step > 0):
            raise ValueError("step > 0")
        if self.half_width < 5.0 * self.step:
            raise ValueError("half_width >= 5*step")
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("grid needs at least two points")
        diffs = np.diff(pts)
        if not np.allclose(diffs, self.step, rtol=1e-9, atol=1e-12):
            raise ValueError("points must be uniformly spaced by step")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def build(cls, center: float, half_width: float, max_step: float) -> "FrequencyGrid":
        """Uniform grid over [center-hw, center+hw] with step <= max_step."""
        if not (max_step > 0 and half_width > 0):
            raise ValueError("half_width > 0 and max_step > 0")
        n_int = max(10, int(math.ceil(2.0 * half_width / max_step)))
        step = 2.0 * half_width / n_int
        points = center + np.linspace(-half_width, half_width, n_int + 1)
        return cls(center=center, half_width=half_width, step=step, points=points)

    def halved_step(self) -> "FrequencyGrid":
        """Same span, twice the density; original points are preserved."""
        return FrequencyGrid.build(self.center, self.half_width, self.step / 2.0)


def _require_resolving(amp: BiphotonAmplitude, grid: FrequencyGrid) -> None:
    limit = amp.resolution_scale() / RESOLVE_FACTOR
    if grid.step > limit * (1.0 + 1e-12):
        raise GridTooCoarse(
            f"grid step {grid.step:g} exceeds {limit:g} needed to resolve the amplitude"
        )


def jsa_value(amp: BiphotonAmplitude, omega_s, omega_l):
    """Joint spectral amplitude at (omega_s, omega_l); accepts arrays.

    Raises UnsupportedKind for the zero-bandwidth kind, whose delta
    factor cannot be evaluated pointwise.
    """
    if not amp.samplable:
        raise UnsupportedKind("zero-bandwidth amplitude is handled analytically")
    ws = np.asarray(omega_s, dtype=float)
    wl = np.asarray(omega_l, dtype=float)
    if amp.kind is JsaKind.UNCORRELATED_GAUSSIAN:
        expo = ((ws - amp.omega_sc) ** 2 + (wl - amp.omega_lc) ** 2) / (
            2.0 * amp.sigma**2
        )
        out = amp.scale * np.exp(-expo) + 0.0j
    else:
        pump = ((ws + wl - amp.omega_p) ** 2) / (2.0 * amp.sigma_p**2)
        kappa = (ws - amp.omega_sc) * (amp.t_s / 2.0) + (wl - amp.omega_lc) * (
            amp.t_l / 2.0
        )
        out = amp.scale * np.exp(-pump - kappa**2) + 0.0j
    if out.ndim == 0:
        return complex(out)
    return out


def jsa_grid(
    amp: BiphotonAmplitude,
    grid_s: FrequencyGrid,
    grid_l: FrequencyGrid,
    normalized: bool = True,
) -> np.ndarray:
    """Tabulate the amplitude on grid_s x grid_l.

    With ``normalized`` (default) the table is divided by
    sqrt(sum |psi|^2 * step_s * step_l), i.e. L2-normalized on the
    sampling grid.
    """
    _require_resolving(amp, grid_s)
    _require_resolving(amp, grid_l)
    table = jsa_value(amp, grid_s.points[:, None], grid_l.points[None, :])
    if normalized:
        norm = math.sqrt(
            float(np.sum(np.abs(table) ** 2)) * grid_s.step * grid_l.step
        )
        if norm == 0.0:
            raise ValueError("cannot normalize an identically zero amplitude")
        table = table / norm
    return table


def default_grid(
    amp: BiphotonAmplitude,
    gamma: float,
    lambdas: Sequence[float] = (),
) -> tuple[FrequencyGrid, FrequencyGrid]:
    """Signal and idler grids sized to the amplitude and the dressed lines.

    Half-width covers DEFAULT_SPAN_WIDTHS times the larger of the
    amplitude width and gamma, extended so every dressed eigenvalue is
    covered with a 6-gamma margin.  The step resolves the narrowest
    feature (and gamma) DEFAULT_STEP_FACTOR times.
    """
    if not (gamma > 0):
        raise ValueError("gamma > 0")
    if amp.kind is JsaKind.UNCORRELATED_GAUSSIAN:
        width = amp.sigma
    else:
        width = amp.sigma_p
    half_width = DEFAULT_SPAN_WIDTHS * max(width, gamma)
    for lam in lambdas:
        half_width = max(half_width, abs(float(lam)) + DEFAULT_SPAN_WIDTHS * gamma)
    step = min(gamma, *amp.feature_widths()) / DEFAULT_STEP_FACTOR
    signal = FrequencyGrid.build(amp.omega_sc, half_width, step)
    idler = FrequencyGrid.build(amp.omega_lc, half_width, step)
    return signal, idler
