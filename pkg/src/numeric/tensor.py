"""Dense real-array arithmetic on float64 numpy arrays.

Every function returns a fresh array and never writes to its arguments.
``matmul`` accumulates each output element left to right over the inner
index, the same order as a naive triple loop, so its results are bitwise
reproducible regardless of the BLAS build numpy is linked against.
"""

from enum import StrEnum

import numpy as np
import numpy.typing as npt

from src.errors import ShapeMismatch

Tensor = npt.NDArray[np.float64]


class EwiseOp(StrEnum):
    """Element-wise operations supported by ``ewise``."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    SCALE = "scale"
    RELU = "relu"
    RELU_GRAD = "relu_grad"


_BINARY_OPS = frozenset({EwiseOp.ADD, EwiseOp.SUB, EwiseOp.MUL})


def zeros(shape: tuple[int, ...]) -> Tensor:
    return np.zeros(shape, dtype=np.float64)


def is_finite(t: Tensor) -> bool:
    return bool(np.isfinite(t).all())


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """Matrix product of ``a`` (m x k) and ``b`` (k x n).

    The k-loop runs outermost over whole rank-1 updates, so every
    ``out[i, j]`` is ``((a[i,0]*b[0,j] + a[i,1]*b[1,j]) + ...)`` in index order.
    """
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeMismatch(f"matmul needs 2-D operands, got {a.shape} and {b.shape}")
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ShapeMismatch(f"matmul inner extents differ: {a.shape} x {b.shape}")

    out = np.zeros((m, n), dtype=np.float64)
    for idx in range(k):
        out += np.multiply.outer(a[:, idx], b[idx, :])
    return out


def ewise(
    op: EwiseOp | str,
    a: Tensor,
    b: Tensor | None = None,
    *,
    factor: float | None = None,
) -> Tensor:
    """Apply an element-wise operation; the output has ``a``'s shape.

    ``relu_grad`` maps 0 to 0.
    """
    op = EwiseOp(op)
    if op in _BINARY_OPS:
        if b is None:
            raise ShapeMismatch(f"{op} needs a second operand")
        if a.shape != b.shape:
            raise ShapeMismatch(f"{op} on differing shapes {a.shape} and {b.shape}")
        if op is EwiseOp.ADD:
            return np.add(a, b)
        if op is EwiseOp.SUB:
            return np.subtract(a, b)
        return np.multiply(a, b)

    if op is EwiseOp.SCALE:
        if factor is None:
            raise ValueError("scale needs a factor")
        return np.multiply(a, np.float64(factor))
    if op is EwiseOp.RELU:
        return np.maximum(a, 0.0)
    return np.where(a > 0.0, 1.0, 0.0)


def add(a: Tensor, b: Tensor) -> Tensor:
    return ewise(EwiseOp.ADD, a, b)


def sub(a: Tensor, b: Tensor) -> Tensor:
    return ewise(EwiseOp.SUB, a, b)


def mul(a: Tensor, b: Tensor) -> Tensor:
    return ewise(EwiseOp.MUL, a, b)


def scale(a: Tensor, factor: float) -> Tensor:
    return ewise(EwiseOp.SCALE, a, factor=factor)


def relu(a: Tensor) -> Tensor:
    return ewise(EwiseOp.RELU, a)


def relu_grad(a: Tensor) -> Tensor:
    return ewise(EwiseOp.RELU_GRAD, a)


def add_row(a: Tensor, row: Tensor) -> Tensor:
    """Add a length-n vector to every row of an m x n matrix (bias add)."""
    if a.ndim != 2 or row.shape != (a.shape[1],):
        raise ShapeMismatch(f"cannot add row of shape {row.shape} to {a.shape}")
    return np.add(a, row[np.newaxis, :])


def sum_rows(a: Tensor) -> Tensor:
    """Column sums of an m x n matrix, accumulated top to bottom."""
    if a.ndim != 2:
        raise ShapeMismatch(f"sum_rows needs a 2-D operand, got {a.shape}")
    out = np.zeros(a.shape[1], dtype=np.float64)
    for row in a:
        out += row
    return out
