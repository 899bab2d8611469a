"""Command-line front end: spectrum curves, regime maps, dressed-state reports.

    chirospec spectrum   -c FILE [--out DIR] [--threads N]
    chirospec regime-map -c FILE [--out DIR] [--threads N]
    chirospec dressed    -c FILE

Outputs are UTF-8 CSV files with a header row, LF line endings and
%.9e numeric formatting, plus a flat key-value manifest and a run
record (config echo, version, wall time, sha256 per output).  Given the
same config the output bytes are identical for any thread count.

Exit codes: 0 success, 2 config error, 3 I/O error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import multiprocessing
import os
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .analysis import (
    classify_lineshape,
    curve_pair,
    discriminability,
    discrimination_window,
    regime_map,
    sweep_amplitude,
)
from .biphoton import BiphotonAmplitude, FrequencyGrid, default_grid
from .config import ExperimentConfig, parse_config, serialize_config
from .errors import ConfigError, GridTooCoarse, NonFiniteResult, ValidationError
from .model import Chirality, build_rotating_hamiltonian, dressed_states
from .spectrum import SpectrumCurve

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


def _fmt(x: float) -> str:
    return f"{x:.9e}"


def _dressed_pair(cfg: ExperimentConfig):
    left = dressed_states(
        build_rotating_hamiltonian(replace(cfg.drive, chirality=Chirality.LEFT)),
        Chirality.LEFT,
    )
    right = dressed_states(
        build_rotating_hamiltonian(replace(cfg.drive, chirality=Chirality.RIGHT)),
        Chirality.RIGHT,
    )
    return left, right


def build_scan_grid(cfg: ExperimentConfig, amp: BiphotonAmplitude) -> FrequencyGrid:
    """Signal-detector scan grid: explicit values win, the rest is derived."""
    left, right = _dressed_pair(cfg)
    lambdas = np.concatenate([left.lambdas, right.lambdas])
    signal, _ = default_grid(amp, cfg.noise.gamma, lambdas)
    center = cfg.scan_center if cfg.scan_center is not None else signal.center
    half_width = (
        cfg.scan_half_width if cfg.scan_half_width is not None else signal.half_width
    )
    step = cfg.scan_step if cfg.scan_step is not None else signal.step
    return FrequencyGrid.build(center, half_width, step)


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_curve_csv(path: Path, curve: SpectrumCurve) -> None:
    lines = ["delta_s_bar,P_c"]
    for d, v in zip(curve.delta_s, curve.values):
        lines.append(f"{_fmt(d)},{_fmt(v)}")
    _write_text(path, "\n".join(lines) + "\n")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _flat_config_items(cfg: ExperimentConfig) -> list[tuple[str, str]]:
    """Flatten the canonical YAML config echo into dotted key-value pairs."""
    flat: list[tuple[str, str]] = []
    stack: list[str] = []
    for raw in serialize_config(cfg).splitlines():
        body = raw.strip()
        if body.startswith("- "):
            # scalar list item: belongs to the key currently on the stack
            flat.append((".".join(stack), body[2:]))
            continue
        indent = (len(raw) - len(raw.lstrip())) // 2
        stack = stack[:indent]
        key, _, value = body.partition(":")
        stack.append(key)
        if value.strip():
            flat.append((".".join(stack), value.strip()))
    return flat


def _write_run_record(
    path: Path, command: str, cfg: ExperimentConfig, outputs: list[Path],
    wall_time: float,
) -> None:
    lines = [
        "tool = chirospec",
        f"version = {__version__}",
        f"command = {command}",
        f"wall_time_s = {wall_time:.3f}",
    ]
    for key, value in _flat_config_items(cfg):
        lines.append(f"config.{key} = {value}")
    for out in outputs:
        lines.append(f"checksum.{out.name} = {_sha256(out)}")
    _write_text(path, "\n".join(lines) + "\n")


# Worker state for parallel per-idler curve evaluation.
_CURVE_CTX: dict = {}


def _init_curve_worker(drive, amp, noise, scan):
    _CURVE_CTX["args"] = (drive, amp, noise, scan)


def _eval_idler(job: tuple[int, float]):
    drive, amp, noise, scan = _CURVE_CTX["args"]
    return _idler_result(drive, amp, noise, scan, job)


def _idler_result(drive, amp, noise, scan, job):
    index, omega_l_bar = job
    left, right = curve_pair(drive, amp, noise, omega_l_bar, scan)
    metric, distinguishable = discriminability(left, right)
    sig_l = classify_lineshape(left)
    sig_r = classify_lineshape(right)
    return index, left, right, sig_l, sig_r, metric, distinguishable


def cmd_spectrum(cfg: ExperimentConfig, out_dir: Path, threads: int) -> int:
    """Write per-idler left/right curves, a manifest, and a run record."""
    if cfg.idler is None:
        raise ValidationError("spectrum command needs an idler section")
    started = time.time()
    scan = build_scan_grid(cfg, cfg.probe)
    jobs = list(enumerate(cfg.idler))
    if threads <= 1 or len(jobs) == 1:
        results = [
            _idler_result(cfg.drive, cfg.probe, cfg.noise, scan, job) for job in jobs
        ]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(
            processes=threads,
            initializer=_init_curve_worker,
            initargs=(cfg.drive, cfg.probe, cfg.noise, scan),
        ) as pool:
            results = pool.map(_eval_idler, jobs, chunksize=1)
    results.sort(key=lambda r: r[0])

    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: list[Path] = []
    manifest = [f"idler_count = {len(jobs)}"]
    for index, left, right, sig_l, sig_r, metric, dist in results:
        tag = f"{index:03d}"
        for name, curve in (("left", left), ("right", right)):
            path = out_dir / f"curve_{name}_{tag}.csv"
            _write_curve_csv(path, curve)
            outputs.append(path)
        manifest.extend(
            [
                f"idler.{tag}.omega_l_bar = {_fmt(cfg.idler[index])}",
                f"idler.{tag}.file_left = curve_left_{tag}.csv",
                f"idler.{tag}.file_right = curve_right_{tag}.csv",
                f"idler.{tag}.signature_left = {sig_l.compact()}",
                f"idler.{tag}.signature_right = {sig_r.compact()}",
                f"idler.{tag}.metric = {_fmt(metric)}",
                f"idler.{tag}.distinguishable = {'true' if dist else 'false'}",
            ]
        )
    manifest_path = out_dir / "manifest.txt"
    _write_text(manifest_path, "\n".join(manifest) + "\n")
    outputs.append(manifest_path)
    _write_run_record(
        out_dir / "run_record.txt", "spectrum", cfg, outputs, time.time() - started
    )
    return EXIT_OK


def cmd_regime_map(cfg: ExperimentConfig, out_dir: Path, threads: int) -> int:
    """Sweep (T0, idler frequency), write the label table and its legend."""
    if cfg.sweep is None:
        raise ValidationError("regime-map command needs a sweep section")
    started = time.time()
    t0_values = cfg.sweep.t0_values()
    omega_l_values = cfg.sweep.omega_l_values()
    # The largest delays dictate the quadrature step for every cell.
    worst = sweep_amplitude(cfg.probe, max(t0_values))
    scan = build_scan_grid(cfg, worst)
    rm = regime_map(
        cfg.drive, cfg.probe, cfg.noise, t0_values, omega_l_values, scan,
        threads=threads,
    )

    out_dir.mkdir(parents=True, exist_ok=True)
    map_lines = ["t0,omega_l_bar,label"]
    for i, t0 in enumerate(rm.t0_axis):
        for j, wl in enumerate(rm.omega_l_axis):
            map_lines.append(f"{_fmt(t0)},{_fmt(wl)},{rm.labels[i, j]}")
    map_path = out_dir / "regime_map.csv"
    _write_text(map_path, "\n".join(map_lines) + "\n")

    legend_lines = ["label,signature_left,signature_right"]
    for label in sorted(rm.legend):
        sig_l, sig_r = rm.legend[label]
        legend_lines.append(f"{label},{sig_l.compact()},{sig_r.compact()}")
    legend_path = out_dir / "legend.csv"
    _write_text(legend_path, "\n".join(legend_lines) + "\n")

    _write_run_record(
        out_dir / "run_record.txt",
        "regime-map",
        cfg,
        [map_path, legend_path],
        time.time() - started,
    )
    return EXIT_OK


def cmd_dressed(cfg: ExperimentConfig, stream=None) -> int:
    """Print dressed energies, overlaps, and the discrimination window."""
    stream = stream if stream is not None else sys.stdout
    left, right = _dressed_pair(cfg)
    for dressed in (left, right):
        name = "left" if dressed.chirality is Chirality.LEFT else "right"
        print(f"[{name}]", file=stream)
        for i in range(3):
            print(
                f"  lambda_{i + 1} = {_fmt(dressed.lambdas[i])}"
                f"  |eta1|^2 = {_fmt(dressed.eta1_sq[i])}",
                file=stream,
            )
    top_l = left.lambdas[int(np.argmax(left.eta1_sq))]
    top_r = right.lambdas[int(np.argmax(right.eta1_sq))]
    window = discrimination_window(top_l, top_r, cfg.noise.gamma)
    print("[discrimination_window]", file=stream)
    if not window.intervals:
        print("  empty", file=stream)
    for lo, hi in window.intervals:
        print(f"  ({_fmt(lo)}, {_fmt(hi)})", file=stream)
    print(f"  total_measure = {_fmt(window.total_measure)}", file=stream)
    return EXIT_OK


def _load_config(path: str) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    return parse_config(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirospec",
        description="Coincidence spectroscopy of chiral molecules with "
        "entangled photon pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_output in (("spectrum", True), ("regime-map", True), ("dressed", False)):
        p = sub.add_parser(name)
        p.add_argument("-c", "--config", required=True, help="YAML experiment config")
        if needs_output:
            p.add_argument("--out", default=None, help="output directory override")
            p.add_argument(
                "--threads",
                type=int,
                default=os.cpu_count() or 1,
                help="worker processes (never affects output bytes)",
            )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        if args.command == "dressed":
            return cmd_dressed(cfg)
        out_dir = Path(args.out) if args.out else Path(cfg.output_dir)
        threads = max(1, args.threads)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out_dir, threads)
        return cmd_regime_map(cfg, out_dir, threads)
    except (ConfigError, GridTooCoarse, ValueError) as exc:
        # grid/parameter rejections all trace back to the config values
        print(f"chirospec: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"chirospec: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonFiniteResult as exc:
        print(f"chirospec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
