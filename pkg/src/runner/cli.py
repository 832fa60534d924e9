"""Command-line flags for the experiment runner."""

import argparse
from collections.abc import Sequence
from pathlib import Path

from src.runner.run_spec import RunSpec, parse_config

# (flag, RunSpec field, help)
_FLAGS: tuple[tuple[str, str, str], ...] = (
    ("--mode", "mode", "baseline, pc or compare (default: compare)"),
    ("--dataset", "dataset", "spirals or cifar10 (default: spirals)"),
    ("--cifar-dir", "cifar_dir", "directory holding data_batch_*.bin and test_batch.bin"),
    ("--max-samples", "max_samples", "use only the first N CIFAR-10 training records (0 = all)"),
    ("--spiral-points", "spiral_points", "points per spiral arm (default: 500)"),
    ("--spiral-classes", "spiral_classes", "number of spiral arms (default: 2)"),
    ("--spiral-noise", "spiral_noise", "coordinate noise stddev (default: 0.02)"),
    ("--val-fraction", "val_fraction", "spiral validation fraction (default: 0.2)"),
    ("--depth", "depth", "predictor depth L in blocks (default: 8)"),
    ("--width", "width", "internal width (default: 32)"),
    ("--k", "k", "blocks added to form the corrector (default: 4)"),
    ("--epochs", "total_epochs", "total training epochs (default: 40)"),
    ("--lr", "lr", "SGD learning rate (default: 0.05)"),
    ("--batch-size", "batch_size", "mini-batch size (default: 32)"),
    ("--seed-init", "seed_init", "weight initialization seed (default: 0)"),
    ("--seed-shuffle", "seed_shuffle", "mini-batch shuffle seed (default: 1)"),
    ("--seed-data", "seed_data", "dataset generation and split seed (default: 2)"),
    ("--out", "output_dir", "output directory (default: runs/latest)"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pctrain",
        description="Train residual networks with the predictor-corrector schedule and/or a baseline.",
    )
    parser.add_argument("--config", type=Path, help="key=value config file; flags override it")
    for flag, dest, help_text in _FLAGS:
        parser.add_argument(flag, dest=dest, default=None, help=help_text)
    parser.add_argument(
        "--standardize",
        dest="standardize",
        action="store_const",
        const=True,
        default=None,
        help="standardize features with training-set statistics",
    )
    parser.add_argument(
        "--log-plan-hashes",
        dest="log_plan_hashes",
        action="store_const",
        const=True,
        default=None,
        help="log the hash of every epoch's batch plan",
    )
    return parser


def spec_from_args(argv: Sequence[str] | None = None) -> RunSpec:
    """Parse flags (and the optional config file) into a RunSpec."""
    args = vars(build_parser().parse_args(argv))
    config_path: Path | None = args.pop("config")
    text = config_path.read_text(encoding="utf-8") if config_path is not None else None
    return parse_config(text, args)
