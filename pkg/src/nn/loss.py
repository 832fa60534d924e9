"""Softmax cross-entropy loss and top-1 accuracy."""

import numpy as np
import numpy.typing as npt

from src.errors import LabelOutOfRange, ShapeMismatch
from src.numeric.tensor import Tensor

Labels = npt.NDArray[np.int64]


def _check(logits: Tensor, labels: Labels) -> None:
    if logits.ndim != 2 or labels.shape != (logits.shape[0],):
        raise ShapeMismatch(f"logits {logits.shape} do not match labels {labels.shape}")
    num_classes = logits.shape[1]
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise LabelOutOfRange(f"labels must lie in [0, {num_classes})")


def softmax_xent(logits: Tensor, labels: Labels) -> tuple[float, Tensor]:
    """Batch-mean cross-entropy and its gradient ``(softmax - onehot) / batch``."""
    _check(logits, labels)
    batch = logits.shape[0]
    rows = np.arange(batch)

    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    total = exp.sum(axis=1, keepdims=True)
    log_probs = shifted - np.log(total)
    loss = float(-log_probs[rows, labels].sum() / batch)

    dlogits = exp / total
    dlogits[rows, labels] -= 1.0
    dlogits /= batch
    return loss, dlogits


def accuracy(logits: Tensor, labels: Labels) -> float:
    """Fraction of rows whose argmax is the label; ties go to the lowest index."""
    _check(logits, labels)
    return float(np.mean(np.argmax(logits, axis=1) == labels))
