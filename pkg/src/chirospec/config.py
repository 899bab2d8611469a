"""Experiment configuration: YAML parsing, validation, canonical serialization.

One YAML document drives a whole experiment.  The drive section always
stores the right-handed coupling values; both enantiomers are derived
from it at run time, so left/right comparisons cannot drift apart.
Missing sections fall back to the resonant strong-dissipation defaults
(gamma = 1, all couplings 0.1, zero detunings, uncorrelated probe of
unit width).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Optional

import yaml

from .biphoton import BiphotonAmplitude, JsaKind
from .errors import ParseError, ValidationError
from .model import Chirality, DriveConfig, NoiseParams

_PROBE_KINDS = {
    "uncorrelated": JsaKind.UNCORRELATED_GAUSSIAN,
    "entangled": JsaKind.ENTANGLED_SPDC,
}
_KIND_NAMES = {v: k for k, v in _PROBE_KINDS.items()}


@dataclass(frozen=True)
class SweepSpec:
    """Axes of a (T0, idler frequency) sweep."""

    t0_min: float
    t0_max: float
    t0_count: int
    omega_l_min: float
    omega_l_max: float
    omega_l_count: int

    def __post_init__(self):
        if not (self.t0_count >= 2 and self.omega_l_count >= 2):
            raise ValidationError("sweep axis counts must be >= 2")
        if not (self.t0_max > self.t0_min >= 0.0):
            raise ValidationError("sweep.t0: 0 <= min < max")
        if not (self.omega_l_max > self.omega_l_min):
            raise ValidationError("sweep.omega_l: min < max")

    def t0_values(self) -> list[float]:
        return _linspace(self.t0_min, self.t0_max, self.t0_count)

    def omega_l_values(self) -> list[float]:
        return _linspace(self.omega_l_min, self.omega_l_max, self.omega_l_count)


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description (drive values are right-handed)."""

    drive: DriveConfig
    noise: NoiseParams
    probe: BiphotonAmplitude
    scan_center: Optional[float] = None
    scan_half_width: Optional[float] = None
    scan_step: Optional[float] = None
    idler: Optional[tuple[float, ...]] = None
    sweep: Optional[SweepSpec] = None
    output_dir: str = "chirospec_out"


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    step = (hi - lo) / (count - 1)
    return [lo + k * step for k in range(count)]


def _require_mapping(node, where: str) -> dict:
    if node is None:
        return {}
    if not isinstance(node, dict):
        raise ValidationError(f"section '{where}' must be a mapping")
    return node


def _reject_unknown(node: dict, allowed: set[str], where: str) -> None:
    for key in node:
        if key not in allowed:
            raise ValidationError(f"unknown key '{key}' in section '{where}'")


def _number(node: dict, key: str, default: float, where: str) -> float:
    value = node.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}.{key} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{where}.{key} must be finite")
    return value


def _optional_number(node: dict, key: str, where: str) -> Optional[float]:
    if key not in node or node[key] is None:
        return None
    return _number(node, key, 0.0, where)


def _integer(node: dict, key: str, where: str) -> int:
    value = node.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}.{key} must be an integer")
    return value


def _parse_drive(node: dict) -> DriveConfig:
    _reject_unknown(
        node, {"omega21", "omega31", "omega32", "delta21", "delta31"}, "drive"
    )
    return DriveConfig(
        omega21=_number(node, "omega21", 0.1, "drive"),
        omega31=_number(node, "omega31", 0.1, "drive"),
        omega32=_number(node, "omega32", 0.1, "drive"),
        delta21=_number(node, "delta21", 0.0, "drive"),
        delta31=_number(node, "delta31", 0.0, "drive"),
        chirality=Chirality.RIGHT,
    )


def _parse_noise(node: dict) -> NoiseParams:
    _reject_unknown(node, {"gamma"}, "noise")
    gamma = _number(node, "gamma", 1.0, "noise")
    if gamma <= 0:
        raise ValidationError("gamma > 0")
    return NoiseParams(gamma=gamma)


def _parse_probe(node: dict) -> BiphotonAmplitude:
    _reject_unknown(
        node,
        {
            "kind",
            "sigma",
            "sigma_p",
            "t_s",
            "t_l",
            "omega_s_center",
            "omega_l_center",
            "omega_pump",
        },
        "probe",
    )
    kind_name = node.get("kind", "uncorrelated")
    if kind_name not in _PROBE_KINDS:
        raise ValidationError(
            f"probe.kind must be one of {sorted(_PROBE_KINDS)}, got '{kind_name}'"
        )
    sigma = _number(node, "sigma", 1.0, "probe")
    sigma_p = _number(node, "sigma_p", 1.0, "probe")
    t_s = _number(node, "t_s", 0.0, "probe")
    t_l = _number(node, "t_l", 0.0, "probe")
    if sigma <= 0:
        raise ValidationError("sigma > 0")
    if sigma_p <= 0:
        raise ValidationError("sigma_p > 0")
    if t_s < 0 or t_l < 0:
        raise ValidationError("t_s >= 0 and t_l >= 0")
    return BiphotonAmplitude(
        kind=_PROBE_KINDS[kind_name],
        omega_sc=_number(node, "omega_s_center", 0.0, "probe"),
        omega_lc=_number(node, "omega_l_center", 0.0, "probe"),
        sigma=sigma,
        sigma_p=sigma_p,
        t_s=t_s,
        t_l=t_l,
        omega_p=_optional_number(node, "omega_pump", "probe"),
    )


def _parse_idler(node) -> tuple[float, ...]:
    if isinstance(node, (int, float)) and not isinstance(node, bool):
        return (float(node),)
    node = _require_mapping(node, "idler")
    _reject_unknown(node, {"value", "values", "min", "max", "step"}, "idler")
    given = [k for k in ("value", "values", "min") if k in node]
    if len(given) != 1:
        raise ValidationError(
            "idler needs exactly one of: value, values, or min/max/step"
        )
    if "value" in node:
        return (_number(node, "value", 0.0, "idler"),)
    if "values" in node:
        values = node["values"]
        if not isinstance(values, list) or not values:
            raise ValidationError("idler.values must be a nonempty list")
        out = []
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValidationError("idler.values entries must be numbers")
            out.append(float(v))
        return tuple(out)
    lo = _number(node, "min", 0.0, "idler")
    hi = _number(node, "max", 0.0, "idler")
    step = _number(node, "step", 0.0, "idler")
    if step <= 0:
        raise ValidationError("idler.step > 0")
    if hi < lo:
        raise ValidationError("idler.max >= idler.min")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(lo + k * step for k in range(count))


def _parse_sweep(node: dict) -> SweepSpec:
    _reject_unknown(node, {"t0", "omega_l"}, "sweep")
    t0 = _require_mapping(node.get("t0"), "sweep.t0")
    wl = _require_mapping(node.get("omega_l"), "sweep.omega_l")
    _reject_unknown(t0, {"min", "max", "count"}, "sweep.t0")
    _reject_unknown(wl, {"min", "max", "count"}, "sweep.omega_l")
    if not t0 or not wl:
        raise ValidationError("sweep needs both t0 and omega_l ranges")
    return SweepSpec(
        t0_min=_number(t0, "min", 0.0, "sweep.t0"),
        t0_max=_number(t0, "max", 0.0, "sweep.t0"),
        t0_count=_integer(t0, "count", "sweep.t0"),
        omega_l_min=_number(wl, "min", 0.0, "sweep.omega_l"),
        omega_l_max=_number(wl, "max", 0.0, "sweep.omega_l"),
        omega_l_count=_integer(wl, "count", "sweep.omega_l"),
    )


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a YAML experiment description."""
    try:
        doc = yaml.safe_load(io.StringIO(text))
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed config: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ParseError("config document must be a mapping")
    _reject_unknown(
        doc, {"drive", "noise", "probe", "scan", "idler", "sweep", "output"}, "<top>"
    )

    drive = _parse_drive(_require_mapping(doc.get("drive"), "drive"))
    noise = _parse_noise(_require_mapping(doc.get("noise"), "noise"))
    probe = _parse_probe(_require_mapping(doc.get("probe"), "probe"))

    scan = _require_mapping(doc.get("scan"), "scan")
    _reject_unknown(scan, {"center", "half_width", "step"}, "scan")
    scan_center = _optional_number(scan, "center", "scan")
    scan_half_width = _optional_number(scan, "half_width", "scan")
    scan_step = _optional_number(scan, "step", "scan")
    if scan_half_width is not None and scan_half_width <= 0:
        raise ValidationError("scan.half_width > 0")
    if scan_step is not None and scan_step <= 0:
        raise ValidationError("scan.step > 0")

    idler = None
    if doc.get("idler") is not None:
        idler = _parse_idler(doc["idler"])
    sweep = None
    if doc.get("sweep") is not None:
        sweep = _parse_sweep(_require_mapping(doc["sweep"], "sweep"))
    if idler is not None and sweep is not None:
        raise ValidationError("config must not declare both idler and sweep")

    output = _require_mapping(doc.get("output"), "output")
    _reject_unknown(output, {"directory"}, "output")
    out_dir = output.get("directory", "chirospec_out")
    if not isinstance(out_dir, str) or not out_dir:
        raise ValidationError("output.directory must be a nonempty string")

    return ExperimentConfig(
        drive=drive,
        noise=noise,
        probe=probe,
        scan_center=scan_center,
        scan_half_width=scan_half_width,
        scan_step=scan_step,
        idler=idler,
        sweep=sweep,
        output_dir=out_dir,
    )


def serialize_config(cfg: ExperimentConfig) -> str:
    """Canonical YAML form; parse_config(serialize_config(c)) == c."""
    doc: dict = {
        "drive": {
            "omega21": float(cfg.drive.omega21.real),
            "omega31": float(cfg.drive.omega31.real),
            "omega32": float(cfg.drive.omega32.real),
            "delta21": cfg.drive.delta21,
            "delta31": cfg.drive.delta31,
        },
        "noise": {"gamma": cfg.noise.gamma},
        "probe": {
            "kind": _KIND_NAMES[cfg.probe.kind],
            "sigma": cfg.probe.sigma,
            "sigma_p": cfg.probe.sigma_p,
            "t_s": cfg.probe.t_s,
            "t_l": cfg.probe.t_l,
            "omega_s_center": cfg.probe.omega_sc,
            "omega_l_center": cfg.probe.omega_lc,
        },
        "output": {"directory": cfg.output_dir},
    }
    if cfg.probe.kind is not JsaKind.UNCORRELATED_GAUSSIAN:
        doc["probe"]["omega_pump"] = cfg.probe.omega_p
    scan = {}
    if cfg.scan_center is not None:
        scan["center"] = cfg.scan_center
    if cfg.scan_half_width is not None:
        scan["half_width"] = cfg.scan_half_width
    if cfg.scan_step is not None:
        scan["step"] = cfg.scan_step
    if scan:
        doc["scan"] = scan
    if cfg.idler is not None:
        doc["idler"] = {"values": list(cfg.idler)}
    if cfg.sweep is not None:
        doc["sweep"] = {
            "t0": {
                "min": cfg.sweep.t0_min,
                "max": cfg.sweep.t0_max,
                "count": cfg.sweep.t0_count,
            },
            "omega_l": {
                "min": cfg.sweep.omega_l_min,
                "max": cfg.sweep.omega_l_max,
                "count": cfg.sweep.omega_l_count,
            },
        }
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False)
