"""Runs the baseline and/or predictor-corrector arms of an experiment."""

import logging
import sys
from dataclasses import dataclass, field

from src.config import settings
from src.data.batching import BatchPlan
from src.data.cifar10 import load_cifar10_dir
from src.data.dataset import Dataset, split, standardize
from src.data.spirals import make_spirals
from src.errors import ConfigError, PCTrainError, PlanMismatch
from src.model.checkpoint import save_checkpoint
from src.model.network import Network, new_network
from src.numeric.rng import Rng, derive_seed
from src.runner.metrics import format_summary, write_metrics, write_summary
from src.runner.run_spec import DatasetKind, Mode, RunSpec
from src.training.baseline import train_baseline
from src.training.predictor_corrector import construct_corrector, train_pc
from src.training.records import PCConfig, Role, RunReport, expected_time_savings, time_savings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MODULE_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3

# derive_seed index of the train/validation split; the spiral noise uses seed_data itself
SPLIT_STREAM = 1


@dataclass(slots=True)
class PlanLog:
    """(epoch, plan digest) pairs in the order an arm consumed them."""

    arm: str
    echo: bool = False
    entries: list[tuple[int, str]] = field(default_factory=list)

    def __call__(self, epoch: int, plan: BatchPlan) -> None:
        digest = plan.digest()
        self.entries.append((epoch, digest))
        logger.log(
            logging.INFO if self.echo else logging.DEBUG,
            "plan arm=%s epoch=%d hash=%s",
            self.arm,
            epoch,
            digest,
        )


@dataclass(slots=True)
class ExperimentResult:
    spec: RunSpec
    pc_report: RunReport | None = None
    baseline_report: RunReport | None = None
    summary: dict[str, float] = field(default_factory=dict)
    plans: dict[str, PlanLog] = field(default_factory=dict)


def load_datasets(spec: RunSpec) -> tuple[Dataset, Dataset]:
    """(train, validation) datasets for the spec."""
    if spec.dataset is DatasetKind.CIFAR10:
        assert spec.cifar_dir is not None
        train, val = load_cifar10_dir(spec.cifar_dir)
        if spec.max_samples:
            train = train.head(spec.max_samples)
            val = val.head(max(1, spec.max_samples // 5))
    else:
        data = make_spirals(spec.spiral_points, spec.spiral_classes, spec.spiral_noise, spec.seed_data)
        train, val = split(data, spec.val_fraction, derive_seed(spec.seed_data, SPLIT_STREAM))

    if spec.standardize:
        train, val = standardize(train, val)
    logger.info(
        "Dataset %s: %d train / %d validation samples, %d features, %d classes",
        spec.dataset,
        len(train),
        len(val),
        train.input_dim,
        train.num_classes,
    )
    return train, val


def _new_network(spec: RunSpec, train: Dataset, depth: int) -> Network:
    return new_network(train.input_dim, spec.width, train.num_classes, depth, Rng(spec.seed_init))


def run_experiment(spec: RunSpec) -> ExperimentResult:
    """Train the arms selected by ``spec.mode`` and write every output file."""
    train, val = load_datasets(spec)
    spec.output_dir.mkdir(parents=True, exist_ok=True)
    cfg = PCConfig(
        k=spec.k,
        total_epochs=spec.total_epochs,
        lr=spec.lr,
        batch_size=spec.batch_size,
        shuffle_seed=spec.seed_shuffle,
    )
    result = ExperimentResult(spec=spec)

    # Arms run one after the other so their timings do not contend.
    if spec.mode in (Mode.PC, Mode.COMPARE):
        predictor = _new_network(spec, train, spec.depth)
        corrector = construct_corrector(predictor, spec.k)
        plans = result.plans["pc"] = PlanLog("pc", echo=spec.log_plan_hashes)
        logger.info(
            "Predictor-corrector arm: predictor depth %d, corrector depth %d",
            predictor.depth,
            corrector.depth,
        )
        result.pc_report = train_pc(predictor, corrector, cfg, train, val, on_plan=plans)
        result.summary["pc_final_val_acc"] = result.pc_report.final_val_accuracy
        result.summary["pc_min_val_error"] = result.pc_report.min_val_error(Role.CORRECTOR)

    if spec.mode in (Mode.BASELINE, Mode.COMPARE):
        net = _new_network(spec, train, spec.corrector_depth)
        plans = result.plans["baseline"] = PlanLog("baseline", echo=spec.log_plan_hashes)
        logger.info("Baseline arm: depth %d", net.depth)
        result.baseline_report = train_baseline(net, cfg, train, val, on_plan=plans)
        result.summary["baseline_final_val_acc"] = result.baseline_report.final_val_accuracy
        result.summary["baseline_min_val_error"] = result.baseline_report.min_val_error(Role.BASELINE)

    if result.pc_report is not None and result.baseline_report is not None:
        if result.plans["pc"].entries != result.plans["baseline"].entries:
            raise PlanMismatch("predictor-corrector and baseline arms saw different batch plans")
        savings = time_savings(result.pc_report, result.baseline_report)
        result.summary = {
            "time_savings_pct": savings,
            "expected_time_savings_pct": expected_time_savings(spec.depth, spec.k),
            **result.summary,
        }
        logger.info("Time savings: %.2f%% (model %.2f%%)", savings, expected_time_savings(spec.depth, spec.k))

    _write_outputs(result)
    return result


def _write_outputs(result: ExperimentResult) -> None:
    out = result.spec.output_dir
    records = []
    if result.pc_report is not None:
        records.extend(result.pc_report.records)
    if result.baseline_report is not None:
        records.extend(result.baseline_report.records)
    write_metrics(records, out / settings.metrics_filename)

    if result.pc_report is not None:
        save_checkpoint(result.pc_report.final_model, out / settings.checkpoint_filename)
        if result.baseline_report is not None:
            save_checkpoint(result.baseline_report.final_model, out / settings.baseline_checkpoint_filename)
    elif result.baseline_report is not None:
        save_checkpoint(result.baseline_report.final_model, out / settings.checkpoint_filename)

    write_summary(result.summary, out / settings.summary_filename)


def run(spec: RunSpec) -> int:
    """Run an experiment and map failures to exit codes."""
    try:
        result = run_experiment(spec)
    except ConfigError as exc:
        logger.error("Configuration error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    except (PCTrainError, ValueError) as exc:
        logger.exception("Run failed")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODULE_ERROR

    for line in format_summary(result.summary):
        print(line)
    return EXIT_OK
