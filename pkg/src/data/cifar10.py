"""Reader for the CIFAR-10 binary distribution.

Each record is 3073 bytes: one label byte (0-9) followed by 3072 pixel bytes
(1024 red, 1024 green, 1024 blue, each plane row-major). Images are kept as
flat 3072-vectors scaled to [0, 1].
"""

import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from src.data.dataset import Dataset
from src.errors import BadRecordLength, EmptyDataset, LabelOutOfRange

logger = logging.getLogger(__name__)

NUM_CLASSES = 10
PIXELS = 3072
RECORD_BYTES = 1 + PIXELS
TRAIN_FILES = tuple(f"data_batch_{i}.bin" for i in range(1, 6))
TEST_FILES = ("test_batch.bin",)


def _read_records(path: Path) -> np.ndarray:
    raw = path.read_bytes()
    if len(raw) % RECORD_BYTES:
        raise BadRecordLength(f"{path}: {len(raw)} bytes is not a multiple of {RECORD_BYTES}")
    records = np.frombuffer(raw, dtype=np.uint8).reshape(-1, RECORD_BYTES)
    if records.size and records[:, 0].max() >= NUM_CLASSES:
        bad = int(np.argmax(records[:, 0] >= NUM_CLASSES))
        raise LabelOutOfRange(f"{path}: record {bad} has label byte {records[bad, 0]}")
    return records


def load_cifar10(paths: Sequence[Path]) -> Dataset:
    """Concatenate the records of ``paths`` in order."""
    chunks = [_read_records(Path(p)) for p in paths]
    records = np.concatenate(chunks, axis=0) if chunks else np.empty((0, RECORD_BYTES), np.uint8)
    if records.shape[0] == 0:
        raise EmptyDataset(f"no CIFAR-10 records in {[str(p) for p in paths]}")

    features = records[:, 1:].astype(np.float64) / 255.0
    labels = records[:, 0].astype(np.int64)
    logger.info("Loaded %d CIFAR-10 records from %d file(s)", labels.shape[0], len(chunks))
    return Dataset(features=features, labels=labels, num_classes=NUM_CLASSES)


def load_cifar10_dir(directory: Path) -> tuple[Dataset, Dataset]:
    """(training, test) datasets from a directory of the standard file names."""
    if not directory.is_dir():
        raise FileNotFoundError(f"CIFAR-10 directory not found: {directory}")
    train = load_cifar10([directory / name for name in TRAIN_FILES])
    test = load_cifar10([directory / name for name in TEST_FILES])
    return train, test
