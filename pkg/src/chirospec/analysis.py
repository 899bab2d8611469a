"""Enantiomer distinguishability: line-shape signatures, metrics, regime maps.

A transmission curve is reduced to a scale-invariant signature (signs of
its significant extrema, sign changes between them, sign at the global
extremum).  Two enantiomers count as distinguishable when their
signatures differ or when the relative L2 distance of their curves
exceeds a threshold.  Sweeping the crystal delay scale T0 and the idler
detector frequency yields a regime map whose nonzero labels mark the
working regions of the entanglement-assisted scheme.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .biphoton import BiphotonAmplitude, FrequencyGrid
from .errors import CurveTooShort, GridMismatch
from .model import Chirality, DriveConfig, NoiseParams
from .spectrum import SpectrumCurve, transmission_curve

#: An extremum counts as significant above this fraction of the curve maximum.
EXTREMUM_REL_THRESHOLD = 0.05
#: Relative L2 distance above which two curves count as distinguishable.
DISCRIMINABILITY_THRESHOLD = 0.2
#: Curves whose maximum magnitude stays below this are treated as flat.
FLAT_CURVE_FLOOR = 1e-14
#: Ratio of crystal delays to the sweep scale T0: t_s = 2.4 T0, t_l = 2.5 T0.
SWEEP_T_S_RATIO = 2.4
SWEEP_T_L_RATIO = 2.5

MIN_CURVE_POINTS = 16


@dataclass(frozen=True)
class LineShapeSignature:
    """Scale-invariant shape label of one transmission curve."""

    extrema_signs: tuple[int, ...]
    zero_crossings: int
    dominant_sign: int

    @classmethod
    def null(cls) -> "LineShapeSignature":
        """Reserved signature of a flat (numerically zero) curve."""
        return cls(extrema_signs=(), zero_crossings=0, dominant_sign=0)

    def compact(self) -> str:
        """Short text form, e.g. '+-|1|-'; '0' for the null signature."""
        if not self.extrema_signs:
            return "0"
        signs = "".join("+" if s > 0 else "-" for s in self.extrema_signs)
        dom = "+" if self.dominant_sign > 0 else "-"
        return f"{signs}|{self.zero_crossings}|{dom}"


def classify_lineshape(
    curve: SpectrumCurve,
    rel_threshold: float = EXTREMUM_REL_THRESHOLD,
) -> LineShapeSignature:
    """Extract the line-shape signature of a curve.

    Local extrema of the values are kept when their magnitude reaches
    ``rel_threshold`` times the curve maximum; their signs are recorded
    in scan order and the sign changes between consecutive significant
    extrema are counted.  The global-magnitude extremum always counts
    (so monotone curves still classify).  Flat curves return the null
    signature.
    """
    if len(curve) < MIN_CURVE_POINTS:
        raise CurveTooShort(f"need >= {MIN_CURVE_POINTS} points, got {len(curve)}")
    v = curve.values
    max_abs = float(np.max(np.abs(v)))
    if max_abs < FLAT_CURVE_FLOOR:
        return LineShapeSignature.null()

    extrema: list[int] = []
    last_slope = 0
    for i in range(1, v.size):
        d = v[i] - v[i - 1]
        slope = 1 if d > 0 else (-1 if d < 0 else 0)
        if slope == 0:
            continue
        if last_slope != 0 and slope != last_slope:
            extrema.append(i - 1)
        last_slope = slope

    global_idx = int(np.argmax(np.abs(v)))
    if global_idx not in extrema:
        extrema.append(global_idx)
        extrema.sort()

    significant = [i for i in extrema if abs(v[i]) >= rel_threshold * max_abs]
    signs = tuple(1 if v[i] > 0 else -1 for i in significant)
    crossings = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    dominant = 1 if v[global_idx] > 0 else -1
    return LineShapeSignature(
        extrema_signs=signs, zero_crossings=crossings, dominant_sign=dominant
    )


def discriminability(
    curve_l: SpectrumCurve,
    curve_r: SpectrumCurve,
    metric_threshold: float = DISCRIMINABILITY_THRESHOLD,
    rel_threshold: float = EXTREMUM_REL_THRESHOLD,
) -> tuple[float, bool]:
    """Distance metric in [0, 1] plus a distinguishability verdict.

    metric = min(1, ||P_L - P_R||_2 / max(||P_L||_2, ||P_R||_2));
    the pair is distinguishable when the signatures differ or the metric
    reaches ``metric_threshold``.
    """
    if curve_l.delta_s.shape != curve_r.delta_s.shape or not np.array_equal(
        curve_l.delta_s, curve_r.delta_s
    ):
        raise GridMismatch("curves were sampled on different scan grids")
    norm_l = float(np.linalg.norm(curve_l.values))
    norm_r = float(np.linalg.norm(curve_r.values))
    biggest = max(norm_l, norm_r)
    if biggest == 0.0:
        metric = 0.0
    else:
        metric = min(1.0, float(np.linalg.norm(curve_l.values - curve_r.values)) / biggest)
    sig_l = classify_lineshape(curve_l, rel_threshold)
    sig_r = classify_lineshape(curve_r, rel_threshold)
    return metric, (sig_l != sig_r) or (metric >= metric_threshold)


@dataclass(frozen=True)
class DiscriminationWindow:
    """Disjoint sorted open intervals of pinned detuning with opposite signs."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        prev_hi = -np.inf
        for lo, hi in self.intervals:
            if not (lo < hi):
                raise ValueError("intervals must be nonempty")
            if lo < prev_hi:
                raise ValueError("intervals must be disjoint and sorted")
            prev_hi = hi

    @property
    def total_measure(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def contains(self, x: float) -> bool:
        return any(lo < x < hi for lo, hi in self.intervals)


def discrimination_window(
    lambda_l: float, lambda_r: float, gamma: float
) -> DiscriminationWindow:
    """Pinned detunings where the zero-bandwidth spectra have opposite signs.

    The sign of each enantiomer's spectrum flips on the circle
    |lambda - dpl| = gamma, so the opposite-sign set is the symmetric
    difference of (lambda_L - gamma, lambda_L + gamma) and
    (lambda_R - gamma, lambda_R + gamma); boundary points excluded.
    """
    if not (gamma > 0):
        raise ValueError("gamma > 0")
    if lambda_l == lambda_r:
        return DiscriminationWindow(intervals=())
    a, b = sorted((float(lambda_l), float(lambda_r)))
    if b - a >= 2.0 * gamma:
        intervals = ((a - gamma, a + gamma), (b - gamma, b + gamma))
    else:
        intervals = ((a - gamma, b - gamma), (a + gamma, b + gamma))
    return DiscriminationWindow(intervals=intervals)


@dataclass(frozen=True)
class RegimeMap:
    """Grid of interned signature-pair labels over (T0, idler frequency).

    labels[i, j] belongs to t0_axis[i] x omega_l_axis[j]; label 0 is
    reserved for indistinguishable cells.  The legend maps each nonzero
    label to its (left, right) signature pair.
    """

    t0_axis: np.ndarray
    omega_l_axis: np.ndarray
    labels: np.ndarray
    legend: dict[int, tuple[LineShapeSignature, LineShapeSignature]]

    def __post_init__(self):
        t0 = np.asarray(self.t0_axis, dtype=float).copy()
        wl = np.asarray(self.omega_l_axis, dtype=float).copy()
        lab = np.asarray(self.labels, dtype=int).copy()
        if lab.shape != (t0.size, wl.size):
            raise ValueError("labels table must match the axes")
        for arr in (t0, wl, lab):
            arr.flags.writeable = False
        object.__setattr__(self, "t0_axis", t0)
        object.__setattr__(self, "omega_l_axis", wl)
        object.__setattr__(self, "labels", lab)


def curve_pair(
    cfg: DriveConfig,
    amp: BiphotonAmplitude,
    noise: NoiseParams,
    omega_l_bar: float,
    scan_s: FrequencyGrid,
) -> tuple[SpectrumCurve, SpectrumCurve]:
    """Left- and right-handed transmission curves from one drive config."""
    left = replace(cfg, chirality=Chirality.LEFT)
    right = replace(cfg, chirality=Chirality.RIGHT)
    return (
        transmission_curve(left, amp, noise, omega_l_bar, scan_s),
        transmission_curve(right, amp, noise, omega_l_bar, scan_s),
    )


def sweep_amplitude(amp_template: BiphotonAmplitude, t0: float) -> BiphotonAmplitude:
    """Template amplitude with crystal delays set to t_s=2.4*T0, t_l=2.5*T0."""
    return replace(
        amp_template,
        t_s=SWEEP_T_S_RATIO * t0,
        t_l=SWEEP_T_L_RATIO * t0,
    )


# Worker-process state for regime-map cells, installed once per pool worker.
_CELL_CTX: dict = {}


def _init_cell_worker(cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s):
    _CELL_CTX["args"] = (cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s)


def _eval_cell(idx: tuple[int, int]):
    cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s = _CELL_CTX["args"]
    return _cell_result(cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s, idx)


def _cell_result(cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s, idx):
    i, j = idx
    amp = sweep_amplitude(amp_template, float(t0_axis[i]))
    left, right = curve_pair(cfg, amp, noise, float(omega_l_axis[j]), scan_s)
    metric, distinguishable = discriminability(left, right)
    sig_l = classify_lineshape(left)
    sig_r = classify_lineshape(right)
    return i, j, sig_l, sig_r, distinguishable


def regime_map(
    cfg: DriveConfig,
    amp_template: BiphotonAmplitude,
    noise: NoiseParams,
    t0_grid: Sequence[float],
    omega_l_grid: Sequence[float],
    scan_s: FrequencyGrid,
    threads: Optional[int] = None,
) -> RegimeMap:
    """Label every (T0, idler frequency) cell by its signature pair.

    Cells are independent and may be evaluated by a worker pool
    (``threads`` > 1); the label-interning pass runs sequentially in
    row-major first-encounter order afterwards, so the result is
    identical for any thread count.
    """
    t0_axis = np.asarray(list(t0_grid), dtype=float)
    omega_l_axis = np.asarray(list(omega_l_grid), dtype=float)
    if t0_axis.size == 0 or omega_l_axis.size == 0:
        raise ValueError("sweep axes must be nonempty")
    if np.any(t0_axis < 0):
        raise ValueError("T0 values must be >= 0")

    indices = [(i, j) for i in range(t0_axis.size) for j in range(omega_l_axis.size)]
    if threads is None or threads <= 1:
        results = [
            _cell_result(cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s, idx)
            for idx in indices
        ]
    else:
        ctx = multiprocessing.get_context("fork")
        chunk = max(1, len(indices) // (threads * 4))
        with ctx.Pool(
            processes=threads,
            initializer=_init_cell_worker,
            initargs=(cfg, amp_template, noise, t0_axis, omega_l_axis, scan_s),
        ) as pool:
            results = pool.map(_eval_cell, indices, chunksize=chunk)

    cells: dict[tuple[int, int], tuple[LineShapeSignature, LineShapeSignature, bool]]
    cells = {(i, j): (sl, sr, dist) for i, j, sl, sr, dist in results}

    labels = np.zeros((t0_axis.size, omega_l_axis.size), dtype=int)
    legend: dict[int, tuple[LineShapeSignature, LineShapeSignature]] = {}
    interned: dict[tuple[LineShapeSignature, LineShapeSignature], int] = {}
    for i in range(t0_axis.size):
        for j in range(omega_l_axis.size):
            sig_l, sig_r, distinguishable = cells[(i, j)]
            if not distinguishable:
                continue
            key = (sig_l, sig_r)
            if key not in interned:
                label = len(interned) + 1
                interned[key] = label
                legend[label] = key
            labels[i, j] = interned[key]

    return RegimeMap(
        t0_axis=t0_axis, omega_l_axis=omega_l_axis, labels=labels, legend=legend
    )
