"""Shared test fixtures for the entire test suite."""

import numpy as np
import pytest

from src.data.dataset import Dataset, split
from src.data.spirals import make_spirals
from src.numeric.rng import Rng, derive_seed


@pytest.fixture
def rng() -> Rng:
    return Rng(1234)


@pytest.fixture
def spiral_splits() -> tuple[Dataset, Dataset]:
    """A small, fast two-class spiral task."""
    data = make_spirals(60, 2, 0.02, seed=7)
    return split(data, 0.25, seed=7)


@pytest.fixture
def tiny_splits() -> tuple[Dataset, Dataset]:
    """Six training and two validation rows of a linearly separable task."""
    features = np.array(
        [[1.0, 0.0], [0.9, 0.1], [0.8, -0.1], [-1.0, 0.0], [-0.9, 0.2], [-0.8, -0.2], [0.7, 0.0], [-0.7, 0.0]]
    )
    labels = np.array([0, 0, 0, 1, 1, 1, 0, 1], dtype=np.int64)
    train = Dataset(features=features[:6], labels=labels[:6], num_classes=2)
    val = Dataset(features=features[6:], labels=labels[6:], num_classes=2)
    return train, val


@pytest.fixture(scope="session")
def spiral_data() -> tuple[Dataset, Dataset]:
    """The default spiral benchmark: 2 x 500 points, noise 0.02, 20% validation."""
    data = make_spirals(500, 2, 0.02, seed=2)
    return split(data, 0.2, seed=derive_seed(2, 1))
