"""Synthetic interleaved-spiral classification task.

Class ``c`` of ``C`` is an arm ``r * (cos a, sin a)`` with radius ``r`` running
evenly from ``MIN_RADIUS`` to 1 and angle ``a = 2*pi*(turns*r + c/C)``, so
the arms wind around each other. Gaussian noise is added to both coordinates.
"""

import math

import numpy as np

from src.data.dataset import Dataset
from src.numeric.rng import Rng, randn

MIN_RADIUS = 0.1
DEFAULT_TURNS = 1.0


def make_spirals(
    n_per_class: int,
    num_classes: int,
    noise_stddev: float,
    seed: int,
    *,
    turns: float = DEFAULT_TURNS,
) -> Dataset:
    """Rows are grouped by class, arm 0 first; callers shuffle via ``split``."""
    if n_per_class < 1:
        raise ValueError(f"n_per_class must be at least 1, got {n_per_class}")
    if num_classes < 2:
        raise ValueError(f"num_classes must be at least 2, got {num_classes}")

    radius = np.linspace(MIN_RADIUS, 1.0, n_per_class) if n_per_class > 1 else np.ones(1)
    arms = []
    for c in range(num_classes):
        angle = 2.0 * math.pi * (turns * radius + c / num_classes)
        arms.append(np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1))
    points = np.concatenate(arms, axis=0)
    points += randn(points.shape, noise_stddev, Rng(seed))

    labels = np.repeat(np.arange(num_classes, dtype=np.int64), n_per_class)
    return Dataset(features=points, labels=labels, num_classes=num_classes)
