"""Unit tests for run configuration parsing."""

from pathlib import Path

import pytest

from src.errors import ConfigError
from src.runner.run_spec import DatasetKind, Mode, RunSpec, parse_config, parse_config_text

pytestmark = pytest.mark.unit


class TestParseConfigText:
    def test_comments_and_blanks(self):
        text = "# a comment\n\nwidth = 16  # trailing\nlr=0.1\n"
        assert parse_config_text(text) == {"width": "16", "lr": "0.1"}

    def test_missing_equals(self):
        with pytest.raises(ConfigError) as exc:
            parse_config_text("width 16\n")
        assert "line 1" in exc.value.reason

    def test_duplicate_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config_text("k=1\nk=2\n")
        assert exc.value.key == "k"


class TestParseConfig:
    def test_empty_input_gives_defaults(self):
        spec = parse_config("")
        assert spec.mode is Mode.COMPARE
        assert spec.dataset is DatasetKind.SPIRALS
        assert (spec.depth, spec.width, spec.k) == (8, 32, 4)
        assert (spec.total_epochs, spec.lr, spec.batch_size) == (40, 0.05, 32)
        assert spec.corrector_depth == 12

    def test_file_values(self):
        spec = parse_config("mode=baseline\ndepth=5\nwidth=16\nlr=0.01\nstandardize=true\n")
        assert spec.mode is Mode.BASELINE
        assert (spec.depth, spec.width, spec.lr) == (5, 16, 0.01)
        assert spec.standardize is True

    def test_flags_override_file(self):
        spec = parse_config("width=16\ndepth=5\n", {"width": "64", "depth": None})
        assert spec.width == 64
        assert spec.depth == 5

    def test_odd_epochs_for_pc(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("total_epochs=7\nmode=pc\n")
        assert exc.value.key == "total_epochs"
        assert "even" in exc.value.reason

    def test_odd_epochs_for_baseline(self):
        assert parse_config("total_epochs=7\nmode=baseline\n").total_epochs == 7

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("momentum=0.9\n")
        assert exc.value.key == "momentum"
        assert "unknown" in exc.value.reason

    def test_unknown_key_suggestion(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("", {"batchsize": "8"})
        assert "batch_size" in exc.value.reason

    def test_bad_value_names_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("depth=2\n")
        assert exc.value.key == "depth"

    def test_non_numeric_value(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("lr=fast\n")
        assert exc.value.key == "lr"

    def test_cifar_needs_directory(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("dataset=cifar10\n")
        assert exc.value.key == "cifar_dir"

    def test_cifar_directory(self):
        spec = parse_config("dataset=cifar10\ncifar_dir=/data/cifar\nmax_samples=500\n")
        assert spec.cifar_dir == Path("/data/cifar")
        assert spec.max_samples == 500

    def test_unknown_mode(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("mode=sideways\n")
        assert exc.value.key == "mode"

    def test_keys_are_field_names(self):
        assert set(RunSpec.model_fields) >= {
            "mode",
            "dataset",
            "depth",
            "width",
            "k",
            "total_epochs",
            "lr",
            "batch_size",
            "seed_init",
            "seed_shuffle",
            "seed_data",
            "output_dir",
        }
