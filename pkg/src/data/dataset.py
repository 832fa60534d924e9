"""In-memory labelled datasets, train/validation splits and standardization."""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.errors import BadFraction, EmptyDataset, LabelOutOfRange, ShapeMismatch
from src.nn.loss import Labels
from src.numeric.rng import Rng
from src.numeric.tensor import Tensor

logger = logging.getLogger(__name__)


@dataclass(slots=True, frozen=True)
class Dataset:
    """``n`` feature rows of width ``d`` with one class label each."""

    features: Tensor
    labels: Labels
    num_classes: int

    def __post_init__(self) -> None:
        if self.features.ndim != 2 or self.features.shape[0] == 0:
            raise EmptyDataset(f"dataset needs at least one feature row, got shape {self.features.shape}")
        if self.labels.shape != (self.features.shape[0],):
            raise ShapeMismatch(f"{self.labels.shape[0]} labels for {self.features.shape[0]} rows")
        if self.num_classes < 1 or self.labels.min() < 0 or self.labels.max() >= self.num_classes:
            raise LabelOutOfRange(f"labels must lie in [0, {self.num_classes})")
        if not np.isfinite(self.features).all():
            raise ValueError("dataset features must be finite")

    def __len__(self) -> int:
        return int(self.features.shape[0])

    @property
    def input_dim(self) -> int:
        return int(self.features.shape[1])

    def subset(self, indices: npt.NDArray[np.int64]) -> "Dataset":
        return Dataset(
            features=self.features[indices],
            labels=self.labels[indices],
            num_classes=self.num_classes,
        )

    def head(self, count: int) -> "Dataset":
        return self.subset(np.arange(min(count, len(self)), dtype=np.int64))

    def class_counts(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.num_classes).tolist()


def split(dataset: Dataset, val_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded permutation, then the prefix trains and the suffix validates."""
    if not 0.0 < val_fraction < 1.0:
        raise BadFraction(f"val_fraction must lie in (0, 1), got {val_fraction}")
    n = len(dataset)
    n_val = round(n * val_fraction)
    if n_val == 0 or n_val == n:
        raise BadFraction(f"val_fraction {val_fraction} leaves an empty split of {n} samples")

    order = Rng(seed).permutation(n)
    train = dataset.subset(order[: n - n_val])
    val = dataset.subset(order[n - n_val :])
    logger.debug("Split %d samples into %d train / %d validation", n, len(train), len(val))
    return train, val


def standardize(train: Dataset, *others: Dataset) -> list[Dataset]:
    """Scale every feature to zero mean and unit variance using ``train`` statistics.

    Features with zero variance on ``train`` are only centred.
    """
    mean = train.features.mean(axis=0)
    std = train.features.std(axis=0)
    std[std == 0.0] = 1.0
    return [
        Dataset(
            features=(ds.features - mean) / std,
            labels=ds.labels,
            num_classes=ds.num_classes,
        )
        for ds in (train, *others)
    ]
