"""End-to-end runs of the experiment runner on small spiral problems."""

import csv
import logging

import numpy as np
import pytest

from src.data.cifar10 import PIXELS, TEST_FILES, TRAIN_FILES
from src.data.dataset import split
from src.data.spirals import make_spirals
from src.errors import PlanMismatch
from src.model.checkpoint import load_checkpoint
from src.numeric.rng import derive_seed
from src.runner import experiment
from src.runner.experiment import (
    EXIT_IO_ERROR,
    EXIT_MODULE_ERROR,
    EXIT_OK,
    SPLIT_STREAM,
    load_datasets,
    run,
    run_experiment,
)
from src.runner.run_spec import DatasetKind, Mode, RunSpec

pytestmark = pytest.mark.integration


def small_spec(output_dir, **overrides) -> RunSpec:
    values = {
        "mode": Mode.COMPARE,
        "spiral_points": 30,
        "depth": 3,
        "width": 8,
        "k": 2,
        "total_epochs": 4,
        "batch_size": 16,
        "output_dir": output_dir,
    }
    values.update(overrides)
    return RunSpec(**values)


def read_rows(path):
    with path.open() as fh:
        return list(csv.reader(fh))


class TestCompareMode:
    def test_outputs(self, tmp_path):
        result = run_experiment(small_spec(tmp_path))

        rows = read_rows(tmp_path / "metrics.csv")
        assert len(rows) == 1 + 2 * 4
        roles = [r[1] for r in rows[1:]]
        assert roles == ["predictor", "corrector", "predictor", "corrector"] + ["baseline"] * 4
        assert [int(r[0]) for r in rows[1:]] == [1, 2, 3, 4, 1, 2, 3, 4]

        summary = (tmp_path / "summary.txt").read_text().splitlines()
        assert summary[0].startswith("time_savings_pct=")
        assert any(line.startswith("expected_time_savings_pct=") for line in summary)
        assert result.summary["expected_time_savings_pct"] == pytest.approx(100 * 2 / (2 * 5))

        model = load_checkpoint(tmp_path / "model.ckpt")
        baseline = load_checkpoint(tmp_path / "baseline.ckpt")
        assert model.depth == 5
        assert baseline.depth == 5
        assert model.same_bits(result.pc_report.final_model)

    def test_arms_share_batch_plans(self, tmp_path):
        result = run_experiment(small_spec(tmp_path))
        assert result.plans["pc"].entries == result.plans["baseline"].entries
        assert [epoch for epoch, _ in result.plans["pc"].entries] == [1, 2, 3, 4]

    def test_deterministic_except_wall_time(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        run_experiment(small_spec(first))
        run_experiment(small_spec(second))

        def without_wall(rows):
            return [r[:-1] for r in rows]

        assert without_wall(read_rows(first / "metrics.csv")) == without_wall(read_rows(second / "metrics.csv"))
        for name in ("model.ckpt", "baseline.ckpt"):
            assert (first / name).read_bytes() == (second / name).read_bytes()


class TestSingleArm:
    def test_pc_mode_writes_corrector_only(self, tmp_path):
        run_experiment(small_spec(tmp_path, mode=Mode.PC))
        assert load_checkpoint(tmp_path / "model.ckpt").depth == 5
        assert not (tmp_path / "baseline.ckpt").exists()
        rows = read_rows(tmp_path / "metrics.csv")
        assert len(rows) == 1 + 4
        summary = (tmp_path / "summary.txt").read_text()
        assert "time_savings_pct" not in summary
        assert "pc_final_val_acc=" in summary

    def test_baseline_mode_allows_odd_epochs(self, tmp_path):
        run_experiment(small_spec(tmp_path, mode=Mode.BASELINE, total_epochs=3))
        rows = read_rows(tmp_path / "metrics.csv")
        assert [r[1] for r in rows[1:]] == ["baseline"] * 3
        assert load_checkpoint(tmp_path / "model.ckpt").depth == 5

    def test_k_zero_corrector_matches_predictor_depth(self, tmp_path):
        result = run_experiment(small_spec(tmp_path, mode=Mode.PC, k=0))
        assert result.pc_report.final_model.depth == 3


class TestRunExitCodes:
    def test_success_prints_summary(self, tmp_path, capsys):
        assert run(small_spec(tmp_path, mode=Mode.BASELINE, total_epochs=2)) == EXIT_OK
        assert "baseline_final_val_acc=" in capsys.readouterr().out

    def test_missing_cifar_directory(self, tmp_path):
        spec = small_spec(tmp_path / "out", dataset=DatasetKind.CIFAR10, cifar_dir=tmp_path / "nope")
        assert run(spec) == EXIT_IO_ERROR
        assert not (tmp_path / "out" / "metrics.csv").exists()

    def test_divergence_is_a_module_error(self, tmp_path):
        assert run(small_spec(tmp_path, mode=Mode.BASELINE, total_epochs=2, lr=1e300)) == EXIT_MODULE_ERROR
        assert not (tmp_path / "model.ckpt").exists()


def _write_cifar_dir(directory, per_train_file=4, test_records=6):
    """Five training files and a test file of records whose labels count up mod 10 in file order."""
    directory.mkdir()
    label = 0
    for name, count in [(n, per_train_file) for n in TRAIN_FILES] + [(n, test_records) for n in TEST_FILES]:
        chunks = []
        for _ in range(count):
            pixels = (np.arange(PIXELS) * (label + 1) + 7 * label) % 256
            chunks.append(bytes([label % 10]) + pixels.astype(np.uint8).tobytes())
            label += 1
        (directory / name).write_bytes(b"".join(chunks))
    return directory


@pytest.fixture
def cifar_dir(tmp_path):
    return _write_cifar_dir(tmp_path / "cifar")


class TestLoadDatasets:
    def test_spiral_split_uses_derived_seed(self, tmp_path):
        spec = small_spec(tmp_path)
        train, val = load_datasets(spec)
        data = make_spirals(spec.spiral_points, spec.spiral_classes, spec.spiral_noise, spec.seed_data)
        expected_train, expected_val = split(data, spec.val_fraction, derive_seed(spec.seed_data, SPLIT_STREAM))
        assert np.array_equal(train.features, expected_train.features)
        assert np.array_equal(val.labels, expected_val.labels)

    def test_standardize(self, tmp_path):
        raw_train, raw_val = load_datasets(small_spec(tmp_path))
        train, val = load_datasets(small_spec(tmp_path, standardize=True))
        assert np.allclose(train.features.mean(axis=0), 0.0, atol=1e-12)
        assert np.allclose(train.features.std(axis=0), 1.0)
        mean = raw_train.features.mean(axis=0)
        std = raw_train.features.std(axis=0)
        assert np.allclose(val.features, (raw_val.features - mean) / std)
        assert np.array_equal(val.labels, raw_val.labels)

    def test_cifar_max_samples(self, tmp_path, cifar_dir):
        spec = small_spec(tmp_path, dataset=DatasetKind.CIFAR10, cifar_dir=cifar_dir, max_samples=8)
        train, val = load_datasets(spec)
        assert (len(train), len(val)) == (8, 1)
        assert train.input_dim == PIXELS
        assert train.num_classes == 10
        assert train.labels.tolist() == [0, 1, 2, 3, 4, 5, 6, 7]
        assert val.labels.tolist() == [0]

    def test_cifar_all_records(self, tmp_path, cifar_dir):
        spec = small_spec(tmp_path, dataset=DatasetKind.CIFAR10, cifar_dir=cifar_dir)
        train, val = load_datasets(spec)
        assert (len(train), len(val)) == (20, 6)
        assert val.labels.tolist() == [0, 1, 2, 3, 4, 5]


class TestCifarRun:
    def test_pc_run(self, tmp_path, cifar_dir):
        spec = small_spec(
            tmp_path / "out",
            mode=Mode.PC,
            dataset=DatasetKind.CIFAR10,
            cifar_dir=cifar_dir,
            max_samples=8,
            width=4,
            k=1,
            total_epochs=2,
            batch_size=4,
        )
        run_experiment(spec)
        rows = read_rows(tmp_path / "out" / "metrics.csv")
        assert [r[1] for r in rows[1:]] == ["predictor", "corrector"]
        model = load_checkpoint(tmp_path / "out" / "model.ckpt")
        assert (model.depth, model.input_dim, model.num_classes) == (4, PIXELS, 10)


@pytest.fixture
def reshuffled_baseline(monkeypatch):
    """Baseline arm trained with a different shuffle seed than the predictor-corrector arm."""
    real_train_baseline = experiment.train_baseline

    def reshuffled(net, cfg, train, val, *, on_plan=None):
        cfg = cfg.model_copy(update={"shuffle_seed": cfg.shuffle_seed + 1})
        return real_train_baseline(net, cfg, train, val, on_plan=on_plan)

    monkeypatch.setattr(experiment, "train_baseline", reshuffled)


class TestPlanChecks:
    @pytest.mark.usefixtures("reshuffled_baseline")
    def test_mismatched_plans_fail(self, tmp_path):
        with pytest.raises(PlanMismatch):
            run_experiment(small_spec(tmp_path))
        assert not (tmp_path / "metrics.csv").exists()

    @pytest.mark.usefixtures("reshuffled_baseline")
    def test_mismatch_exit_code(self, tmp_path):
        assert run(small_spec(tmp_path)) == EXIT_MODULE_ERROR

    def test_hashes_logged_at_info_when_requested(self, tmp_path, caplog):
        caplog.set_level(logging.INFO, logger="src.runner.experiment")
        run_experiment(small_spec(tmp_path, log_plan_hashes=True))
        plan_lines = [r.getMessage() for r in caplog.records if r.getMessage().startswith("plan arm=")]
        assert len(plan_lines) == 8
        assert all(r.levelno == logging.INFO for r in caplog.records if r.getMessage().startswith("plan arm="))
        assert plan_lines[0].startswith("plan arm=pc epoch=1 hash=")
        assert plan_lines[4].startswith("plan arm=baseline epoch=1 hash=")
        assert plan_lines[0].split("hash=")[1] == plan_lines[4].split("hash=")[1]

    def test_hashes_stay_at_debug_by_default(self, tmp_path, caplog):
        caplog.set_level(logging.INFO, logger="src.runner.experiment")
        run_experiment(small_spec(tmp_path))
        assert not any(r.getMessage().startswith("plan arm=") for r in caplog.records)
