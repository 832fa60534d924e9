"""Exception hierarchy shared by every module of the harness.

I/O failures are not wrapped: they surface as the built-in ``OSError`` family.
"""


class PCTrainError(Exception):
    """Base class for all harness errors."""


class ShapeMismatch(PCTrainError, ValueError):
    """Tensor extents do not fit the operation."""


class LabelOutOfRange(PCTrainError, ValueError):
    """A class label lies outside [0, num_classes)."""


class BadDepth(PCTrainError, ValueError):
    """A network has fewer than three blocks."""


class IndexOutOfRange(PCTrainError, IndexError):
    """A 1-based block index lies outside 1..L."""


class NotResidual(PCTrainError, ValueError):
    """Block 2 of a predictor is not a residual block."""


class DepthMismatch(PCTrainError, ValueError):
    """Corrector depth differs from predictor depth + K."""


class CorruptCheckpoint(PCTrainError, ValueError):
    """A checkpoint file is malformed."""


class OddEpochCount(PCTrainError, ValueError):
    """Predictor-corrector training needs an even number of epochs."""


class EmptyDataset(PCTrainError, ValueError):
    """A dataset holds no samples."""


class LengthMismatch(PCTrainError, ValueError):
    """Two reports cover different numbers of epochs."""


class BadRecordLength(PCTrainError, ValueError):
    """A CIFAR-10 file is not a whole number of records."""


class BadFraction(PCTrainError, ValueError):
    """A validation fraction leaves one of the splits empty."""


class ConfigError(PCTrainError, ValueError):
    """A run configuration key is unknown or holds an invalid value."""

    def __init__(self, key: str, reason: str) -> None:
        self.key = key
        self.reason = reason
        super().__init__(f"{key}: {reason}")


class PlanMismatch(PCTrainError):
    """The two arms of a comparison consumed different batch plans."""


class NonFiniteValues(PCTrainError, ValueError):
    """Training produced a NaN or infinite loss or parameter."""
