"""Config parsing: strict schema, presets, and file loading."""

import copy
import math

import pytest

from sparseq.config import (
    ConfigError,
    load_config,
    parse_config,
    preset_config,
)


def minimal_raw():
    return {
        "master_seed": 1,
        "n_trials": 2,
        "equalizer_length": 8,
        "channel": {"profile": "desk", "length": 32},
        "signal": {"snr_db": 30.0, "n_iterations": 100},
        "algorithms": [{"name": "cma", "mu": 1e-3}],
    }


class TestSchemaValidation:
    def test_minimal_config_parses(self):
        cfg = parse_config(minimal_raw())
        assert cfg.n_trials == 2
        assert cfg.channel_profile == "desk"
        assert cfg.algorithms[0].label == "cma"
        assert cfg.average_domain == "db"

    @pytest.mark.parametrize(
        "mutate,expected",
        [
            (lambda r: r.update(bogus=1), "bogus"),
            (lambda r: r["channel"].update(extra=2), "extra"),
            (lambda r: r["signal"].update(snr=3), "snr"),
            (lambda r: r["algorithms"][0].update(momentum=0.9), "momentum"),
        ],
    )
    def test_unknown_keys_rejected_by_name(self, mutate, expected):
        raw = minimal_raw()
        mutate(raw)
        with pytest.raises(ConfigError, match=expected):
            parse_config(raw)

    @pytest.mark.parametrize(
        "drop,where",
        [
            ("master_seed", "master_seed"),
            ("n_trials", "n_trials"),
            ("equalizer_length", "equalizer_length"),
            ("channel", "channel"),
            ("signal", "signal"),
            ("algorithms", "algorithms"),
        ],
    )
    def test_missing_required_keys_named(self, drop, where):
        raw = minimal_raw()
        del raw[drop]
        with pytest.raises(ConfigError, match=where):
            parse_config(raw)

    def test_missing_n_iterations_named(self):
        raw = minimal_raw()
        del raw["signal"]["n_iterations"]
        with pytest.raises(ConfigError, match="n_iterations"):
            parse_config(raw)

    def test_unknown_algorithm_rejected(self):
        raw = minimal_raw()
        raw["algorithms"][0]["name"] = "lms"
        with pytest.raises(ConfigError, match="name"):
            parse_config(raw)

    def test_duplicate_labels_rejected(self):
        raw = minimal_raw()
        raw["algorithms"] = [
            {"name": "cma", "mu": 1e-3},
            {"name": "cma", "mu": 2e-3},
        ]
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(raw)

    def test_labels_disambiguate_duplicates(self):
        raw = minimal_raw()
        raw["algorithms"] = [
            {"name": "cma", "mu": 1e-3, "label": "cma_slow"},
            {"name": "cma", "mu": 2e-3, "label": "cma_fast"},
        ]
        cfg = parse_config(raw)
        assert [a.label for a in cfg.algorithms] == ["cma_slow", "cma_fast"]

    @pytest.mark.parametrize(
        "field,value",
        [
            ("n_trials", 0),
            ("equalizer_length", -1),
            ("n_trials", "many"),
        ],
    )
    def test_bad_scalar_values_rejected(self, field, value):
        raw = minimal_raw()
        raw[field] = value
        with pytest.raises(ConfigError):
            parse_config(raw)

    def test_bad_profile_rejected(self):
        raw = minimal_raw()
        raw["channel"]["profile"] = "office"
        with pytest.raises(ConfigError, match="profile"):
            parse_config(raw)

    def test_bad_average_domain_rejected(self):
        raw = minimal_raw()
        raw["average_domain"] = "median"
        with pytest.raises(ConfigError, match="average_domain"):
            parse_config(raw)

    def test_bad_mu_rejected(self):
        raw = minimal_raw()
        raw["algorithms"][0]["mu"] = 0.0
        with pytest.raises(ConfigError, match="mu"):
            parse_config(raw)

    def test_bad_prox_mode_rejected(self):
        raw = minimal_raw()
        raw["algorithms"][0] = {"name": "rscma", "mu": 1e-3, "prox_mode": "full"}
        with pytest.raises(ConfigError, match="prox_mode"):
            parse_config(raw)

    def test_non_mapping_root_rejected(self):
        with pytest.raises(ConfigError, match="mapping"):
            parse_config(["not", "a", "dict"])

    def test_echo_preserves_input(self):
        raw = minimal_raw()
        snapshot = copy.deepcopy(raw)
        cfg = parse_config(raw)
        assert cfg.echo == snapshot

    def test_infinite_snr_accepted(self):
        raw = minimal_raw()
        raw["signal"]["snr_db"] = "inf"
        cfg = parse_config(raw)
        assert math.isinf(cfg.snr_db)

    def test_channel_length_defaults_to_profile(self):
        raw = minimal_raw()
        del raw["channel"]["length"]
        cfg = parse_config(raw)
        assert cfg.channel_length == 32

    def test_seed_start_optional(self):
        raw = minimal_raw()
        cfg = parse_config(raw)
        assert cfg.channel_seed_start is None
        raw["channel"]["seed_start"] = 500
        cfg = parse_config(raw)
        assert cfg.channel_seed_start == 500


class TestPresets:
    def test_desk_preset_shape(self):
        cfg = preset_config("desk")
        assert cfg.channel_profile == "desk"
        assert cfg.channel_length == 32
        assert cfg.equalizer_length == 48
        assert cfg.n_trials == 50
        assert [a.name for a in cfg.algorithms] == [
            "cma",
            "ang_cma",
            "scma_p",
            "rscma",
        ]

    def test_paper_preset_shape(self):
        cfg = preset_config("paper")
        assert cfg.channel_profile == "paper"
        assert cfg.channel_length == 100
        assert cfg.equalizer_length == 120
        assert cfg.n_trials == 1000

    def test_unknown_preset_rejected(self):
        with pytest.raises(ConfigError, match="preset"):
            preset_config("bench")


class TestFileLoading:
    def test_yaml_round_trip(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text(
            "master_seed: 5\n"
            "n_trials: 3\n"
            "equalizer_length: 16\n"
            "channel: {profile: desk}\n"
            "signal: {snr_db: 25.0, n_iterations: 50}\n"
            "algorithms:\n"
            "  - {name: cma, mu: 1.0e-3}\n"
        )
        cfg = load_config(str(path))
        assert cfg.master_seed == 5
        assert cfg.snr_db == 25.0

    def test_json_is_valid_yaml(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(
            '{"master_seed": 5, "n_trials": 1, "equalizer_length": 4,'
            ' "channel": {"profile": "desk"},'
            ' "signal": {"snr_db": 30.0, "n_iterations": 10},'
            ' "algorithms": [{"name": "cma", "mu": 0.001}]}'
        )
        cfg = load_config(str(path))
        assert cfg.equalizer_length == 4

    def test_missing_file_is_config_error(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(str(tmp_path / "nope.yaml"))

    def test_unparseable_file_is_config_error(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("algorithms: [unclosed\n")
        with pytest.raises(ConfigError, match="cannot parse"):
            load_config(str(path))
