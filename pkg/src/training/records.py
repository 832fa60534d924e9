"""Run configuration, per-epoch metrics rows and run reports."""

from dataclasses import dataclass
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from src.errors import LengthMismatch
from src.model.network import Network


class Role(StrEnum):
    """Which model trained during an epoch."""

    PREDICTOR = "predictor"
    CORRECTOR = "corrector"
    BASELINE = "baseline"


class PCConfig(BaseModel):
    """Training hyperparameters shared by predictor-corrector and baseline runs.

    ``k`` is the number of blocks added to form the corrector. Evenness of
    ``total_epochs`` is checked by ``train_pc`` only; baselines may run odd counts.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(default=0, ge=0)
    total_epochs: int = Field(gt=0)
    lr: float = Field(gt=0.0)
    batch_size: int = Field(gt=0)
    shuffle_seed: int = Field(default=0, ge=0, lt=2**64)


class EpochRecord(BaseModel):
    """Metrics of one epoch. ``epoch`` is the 1-based global epoch index."""

    model_config = ConfigDict(frozen=True)

    epoch: int = Field(ge=1)
    role: Role
    train_loss: float
    train_accuracy: float = Field(ge=0.0, le=1.0)
    val_loss: float
    val_accuracy: float = Field(ge=0.0, le=1.0)
    wall_ms: float = Field(ge=0.0)


@dataclass(slots=True)
class RunReport:
    records: list[EpochRecord]
    final_model: Network
    config: PCConfig

    def for_role(self, role: Role) -> list[EpochRecord]:
        return [r for r in self.records if r.role is role]

    @property
    def total_wall_ms(self) -> float:
        return sum(r.wall_ms for r in self.records)

    @property
    def final_val_accuracy(self) -> float:
        """Validation accuracy of the final model after its last epoch."""
        return self.records[-1].val_accuracy

    def mean_wall_ms(self, role: Role) -> float:
        rows = self.for_role(role)
        if not rows:
            raise ValueError(f"no {role} epochs in report")
        return sum(r.wall_ms for r in rows) / len(rows)

    def min_val_error(self, role: Role) -> float:
        """Best top-1 validation error (1 - accuracy) over the role's epochs."""
        rows = self.for_role(role)
        if not rows:
            raise ValueError(f"no {role} epochs in report")
        return 1.0 - max(r.val_accuracy for r in rows)


def time_savings(pc_report: RunReport, baseline_report: RunReport) -> float:
    """Percentage of baseline training time saved by the predictor-corrector run."""
    if len(pc_report.records) != len(baseline_report.records):
        raise LengthMismatch(
            f"reports cover {len(pc_report.records)} and {len(baseline_report.records)} epochs"
        )
    baseline_ms = baseline_report.total_wall_ms
    if baseline_ms <= 0.0:
        if pc_report.total_wall_ms <= 0.0:
            return 0.0
        raise ValueError("baseline report has no measured training time")
    return 100.0 * (1.0 - pc_report.total_wall_ms / baseline_ms)


def expected_time_savings(depth: int, k: int) -> float:
    """Savings predicted when every block costs the same: ``100 K / (2 (L + K))``."""
    return 100.0 * k / (2.0 * (depth + k))
