"""Tests of config parsing, validation, defaults, and round-tripping."""

import pytest

from chirospec.biphoton import JsaKind
from chirospec.config import parse_config, serialize_config
from chirospec.errors import ParseError, ValidationError
from chirospec.model import Chirality


class TestDefaults:
    def test_empty_document(self):
        cfg = parse_config("")
        assert cfg.noise.gamma == 1.0
        assert cfg.drive.omega21 == 0.1
        assert cfg.drive.omega31 == 0.1
        assert cfg.drive.omega32 == 0.1
        assert cfg.drive.delta21 == 0.0
        assert cfg.drive.delta31 == 0.0
        assert cfg.drive.chirality is Chirality.RIGHT

    def test_empty_probe_defaults_uncorrelated(self):
        cfg = parse_config("probe:\n")
        assert cfg.probe.kind is JsaKind.UNCORRELATED_GAUSSIAN
        assert cfg.probe.sigma == 1.0

    def test_entangled_defaults(self):
        cfg = parse_config("probe:\n  kind: entangled\n")
        assert cfg.probe.kind is JsaKind.ENTANGLED_SPDC
        assert cfg.probe.sigma_p == 1.0
        assert cfg.probe.omega_p == 0.0  # energy matching of zero centers

    def test_one_config_drives_both_enantiomers(self):
        cfg = parse_config("drive:\n  omega31: 0.1\n")
        assert cfg.drive.chirality is Chirality.RIGHT
        mirrored = cfg.drive.mirror()
        assert mirrored.omega31 == 0.1
        assert mirrored.signed_omega31 == -0.1


class TestValidation:
    def test_negative_gamma(self):
        with pytest.raises(ValidationError, match="gamma > 0"):
            parse_config("noise:\n  gamma: -1.0\n")

    def test_unknown_key(self):
        with pytest.raises(ValidationError, match="unknown key 'frequency'"):
            parse_config("drive:\n  frequency: 2.0\n")

    def test_unknown_top_level_key(self):
        with pytest.raises(ValidationError, match="unknown key"):
            parse_config("laser: {}\n")

    def test_bad_probe_kind(self):
        with pytest.raises(ValidationError, match="probe.kind"):
            parse_config("probe:\n  kind: squeezed\n")

    def test_nonnumeric_field(self):
        with pytest.raises(ValidationError, match="drive.omega21"):
            parse_config("drive:\n  omega21: strong\n")

    def test_idler_and_sweep_conflict(self):
        text = (
            "idler:\n  value: 0.0\n"
            "sweep:\n  t0: {min: 0, max: 1, count: 2}\n"
            "  omega_l: {min: 0, max: 1, count: 2}\n"
        )
        with pytest.raises(ValidationError, match="both idler and sweep"):
            parse_config(text)

    def test_malformed_yaml(self):
        with pytest.raises(ParseError):
            parse_config("drive: [unclosed\n")

    def test_non_mapping_document(self):
        with pytest.raises(ParseError):
            parse_config("- just\n- a\n- list\n")

    def test_negative_sigma(self):
        with pytest.raises(ValidationError, match="sigma > 0"):
            parse_config("probe:\n  sigma: -2.0\n")

    def test_idler_needs_one_form(self):
        with pytest.raises(ValidationError):
            parse_config("idler:\n  value: 1.0\n  values: [2.0]\n")

    def test_sweep_needs_both_axes(self):
        with pytest.raises(ValidationError, match="t0 and omega_l"):
            parse_config("sweep:\n  t0: {min: 0, max: 1, count: 2}\n")


class TestIdlerForms:
    def test_scalar(self):
        assert parse_config("idler: 0.5\n").idler == (0.5,)

    def test_value_key(self):
        assert parse_config("idler:\n  value: -1.5\n").idler == (-1.5,)

    def test_values_list(self):
        cfg = parse_config("idler:\n  values: [0.0, 0.5, 1.0]\n")
        assert cfg.idler == (0.0, 0.5, 1.0)

    def test_range(self):
        cfg = parse_config("idler:\n  min: -1.0\n  max: 1.0\n  step: 0.5\n")
        assert cfg.idler == (-1.0, -0.5, 0.0, 0.5, 1.0)


class TestSweep:
    def test_axes(self):
        text = (
            "sweep:\n"
            "  t0: {min: 0.0, max: 15.0, count: 4}\n"
            "  omega_l: {min: -1.0, max: 1.0, count: 3}\n"
        )
        cfg = parse_config(text)
        assert cfg.sweep.t0_values() == [0.0, 5.0, 10.0, 15.0]
        assert cfg.sweep.omega_l_values() == [-1.0, 0.0, 1.0]

    def test_count_validation(self):
        with pytest.raises(ValidationError):
            parse_config(
                "sweep:\n  t0: {min: 0, max: 1, count: 1}\n"
                "  omega_l: {min: 0, max: 1, count: 3}\n"
            )


class TestRoundTrip:
    CASES = [
        "",
        "probe:\n  kind: entangled\n  t_s: 24.0\n  t_l: 25.0\n",
        "idler:\n  values: [0.0, 0.99]\n",
        (
            "drive:\n  omega21: 0.25\n  delta21: -0.5\n"
            "noise:\n  gamma: 2.5\n"
            "scan:\n  center: 0.1\n  half_width: 4.0\n  step: 0.01\n"
            "sweep:\n  t0: {min: 0.0, max: 15.0, count: 20}\n"
            "  omega_l: {min: -1.254, max: 1.254, count: 20}\n"
            "output:\n  directory: results\n"
        ),
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_parse_serialize_parse(self, text):
        cfg = parse_config(text)
        assert parse_config(serialize_config(cfg)) == cfg

    def test_serialization_is_canonical(self):
        cfg = parse_config(self.CASES[3])
        assert serialize_config(cfg) == serialize_config(
            parse_config(serialize_config(cfg))
        )
