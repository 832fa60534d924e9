"""Seeded mini-batch plans: the "stochastic" in SGD."""

import hashlib
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.numeric.rng import Rng, derive_seed

IndexArray = npt.NDArray[np.int64]


@dataclass(slots=True, frozen=True)
class BatchPlan:
    """Disjoint index slices whose union is ``range(n)``."""

    batches: tuple[IndexArray, ...]

    def __len__(self) -> int:
        return len(self.batches)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.batches]

    def digest(self) -> str:
        """Hex SHA-256 of the batch order, for comparing plans across runs."""
        h = hashlib.sha256()
        for batch in self.batches:
            h.update(np.asarray(batch, dtype="<i8").tobytes())
            h.update(b"|")
        return h.hexdigest()


def epoch_seed(shuffle_seed: int, epoch: int) -> int:
    """Shuffle seed for a 1-based global epoch index."""
    return derive_seed(shuffle_seed, epoch)


def plan_batches(n: int, batch_size: int, seed: int) -> BatchPlan:
    """Uniform permutation of ``range(n)`` chunked into ``batch_size`` slices."""
    if batch_size < 1:
        raise ValueError(f"batch_size must be at least 1, got {batch_size}")
    order = Rng(seed).permutation(n)
    return BatchPlan(batches=tuple(order[i : i + batch_size] for i in range(0, n, batch_size)))
