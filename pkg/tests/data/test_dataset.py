"""Unit tests for datasets, splitting and standardization."""

import numpy as np
import pytest

from src.data.dataset import Dataset, split, standardize
from src.errors import BadFraction, EmptyDataset, LabelOutOfRange, ShapeMismatch
from tests.factories import make_dataset

pytestmark = pytest.mark.unit


class TestDataset:
    def test_valid(self):
        ds = make_dataset(n=9, input_dim=4, num_classes=3)
        assert len(ds) == 9
        assert ds.input_dim == 4
        assert ds.class_counts() == [3, 3, 3]

    def test_empty(self):
        with pytest.raises(EmptyDataset):
            Dataset(features=np.zeros((0, 3)), labels=np.zeros(0, dtype=np.int64), num_classes=2)

    def test_label_out_of_range(self):
        with pytest.raises(LabelOutOfRange):
            Dataset(features=np.zeros((2, 3)), labels=np.array([0, 2]), num_classes=2)

    def test_label_count_mismatch(self):
        with pytest.raises(ShapeMismatch):
            Dataset(features=np.zeros((2, 3)), labels=np.array([0]), num_classes=2)

    def test_non_finite_features(self):
        with pytest.raises(ValueError):
            Dataset(features=np.array([[np.inf]]), labels=np.array([0]), num_classes=1)

    def test_head(self):
        ds = make_dataset(n=10)
        assert len(ds.head(4)) == 4
        assert len(ds.head(50)) == 10


class TestSplit:
    def test_sizes(self):
        train, val = split(make_dataset(n=10), 0.2, seed=1)
        assert (len(train), len(val)) == (8, 2)

    def test_deterministic(self):
        a_train, a_val = split(make_dataset(n=20), 0.3, seed=4)
        b_train, b_val = split(make_dataset(n=20), 0.3, seed=4)
        assert np.array_equal(a_train.features, b_train.features)
        assert np.array_equal(a_val.labels, b_val.labels)

    def test_partitions_rows(self):
        ds = make_dataset(n=15)
        train, val = split(ds, 0.4, seed=2)
        rows = {tuple(r) for r in np.concatenate([train.features, val.features])}
        assert rows == {tuple(r) for r in ds.features}

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.5, 1.5])
    def test_bad_fraction(self, fraction):
        with pytest.raises(BadFraction):
            split(make_dataset(n=10), fraction, seed=0)

    def test_fraction_leaving_empty_split(self):
        with pytest.raises(BadFraction):
            split(make_dataset(n=3), 0.1, seed=0)


class TestStandardize:
    def test_train_statistics(self):
        train, val = standardize(make_dataset(n=50, seed=1), make_dataset(n=5, seed=2))
        assert np.allclose(train.features.mean(axis=0), 0.0)
        assert np.allclose(train.features.std(axis=0), 1.0)
        assert len(val) == 5

    def test_constant_feature(self):
        ds = Dataset(features=np.array([[1.0, 2.0], [1.0, 4.0]]), labels=np.array([0, 1]), num_classes=2)
        (out,) = standardize(ds)
        assert np.array_equal(out.features[:, 0], np.zeros(2))
