"""metrics.csv and summary.txt writers."""

import csv
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path

from src.training.records import EpochRecord

logger = logging.getLogger(__name__)

METRICS_HEADER = ("epoch", "role", "train_loss", "train_acc", "val_loss", "val_acc", "wall_ms")


def format_real(value: float) -> str:
    """Six significant digits, trailing zeros kept: ``1.0 -> "1.00000"``."""
    return f"{value:#.6g}"


def write_metrics(records: Sequence[EpochRecord], path: Path) -> None:
    """One CSV row per record. An empty sequence is rejected before touching ``path``."""
    if not records:
        raise ValueError("no epoch records to write")
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(METRICS_HEADER)
        for r in records:
            writer.writerow(
                [
                    r.epoch,
                    r.role.value,
                    format_real(r.train_loss),
                    format_real(r.train_accuracy),
                    format_real(r.val_loss),
                    format_real(r.val_accuracy),
                    format_real(r.wall_ms),
                ]
            )
    logger.info("Wrote %d metrics rows to %s", len(records), path)


def format_summary(values: Mapping[str, float]) -> list[str]:
    return [f"{key}={format_real(value)}" for key, value in values.items()]


def write_summary(values: Mapping[str, float], path: Path) -> None:
    path.write_text("\n".join(format_summary(values)) + "\n", encoding="utf-8")
    logger.info("Wrote summary to %s", path)
