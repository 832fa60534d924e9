"""Two-layer dense blocks with hand-written forward and backward passes.

A block computes ``branch(x) = relu(x @ w1.T + b1) @ w2.T + b2``. Residual
blocks add the identity shortcut (``y = x + branch(x)``); the input and output
blocks change width and carry no shortcut.
"""

import math
from dataclasses import dataclass
from enum import IntEnum

from src.errors import ShapeMismatch
from src.numeric import tensor as T
from src.numeric.rng import Rng, randn
from src.numeric.tensor import Tensor


# Multiplier on the He stddev of a residual block's w2. At init each residual
# block then scales activation variance by about 1 + 2 * gain**2.
RESIDUAL_BRANCH_GAIN = 0.25


class BlockKind(IntEnum):
    """Position of a block in the stack. Values are the checkpoint codes."""

    INPUT = 0
    RESIDUAL = 1
    OUTPUT = 2


@dataclass(slots=True)
class BlockParams:
    """Parameter set P_l of one block."""

    kind: BlockKind
    w1: Tensor
    b1: Tensor
    w2: Tensor
    b2: Tensor

    @property
    def in_dim(self) -> int:
        return int(self.w1.shape[1])

    @property
    def hidden_dim(self) -> int:
        return int(self.w1.shape[0])

    @property
    def out_dim(self) -> int:
        return int(self.w2.shape[0])

    def tensors(self) -> tuple[Tensor, Tensor, Tensor, Tensor]:
        return self.w1, self.b1, self.w2, self.b2

    def validate(self) -> None:
        """Raise ShapeMismatch unless the four tensors form a valid block."""
        w1, b1, w2, b2 = self.tensors()
        if w1.ndim != 2 or w2.ndim != 2 or b1.ndim != 1 or b2.ndim != 1:
            raise ShapeMismatch(f"bad parameter ranks in {self.kind.name} block")
        if b1.shape[0] != w1.shape[0] or w2.shape[1] != w1.shape[0] or b2.shape[0] != w2.shape[0]:
            raise ShapeMismatch(
                f"inconsistent {self.kind.name} block shapes: "
                f"w1{w1.shape} b1{b1.shape} w2{w2.shape} b2{b2.shape}"
            )
        if self.kind is BlockKind.RESIDUAL and self.in_dim != self.out_dim:
            raise ShapeMismatch(
                f"residual block maps {self.in_dim} -> {self.out_dim}; shortcut needs equal widths"
            )
        if not all(T.is_finite(t) for t in self.tensors()):
            raise ValueError(f"non-finite parameters in {self.kind.name} block")

    def copy(self) -> "BlockParams":
        return BlockParams(
            kind=self.kind,
            w1=self.w1.copy(),
            b1=self.b1.copy(),
            w2=self.w2.copy(),
            b2=self.b2.copy(),
        )

    def congruent(self, other: "BlockParams") -> bool:
        return self.kind is other.kind and all(
            a.shape == b.shape for a, b in zip(self.tensors(), other.tensors(), strict=True)
        )

    def same_bits(self, other: "BlockParams") -> bool:
        """Bitwise equality of kind and every parameter."""
        return self.congruent(other) and all(
            a.tobytes() == b.tobytes() for a, b in zip(self.tensors(), other.tensors(), strict=True)
        )


@dataclass(slots=True, frozen=True)
class BlockCache:
    """Activations of one block for one mini-batch, kept for the backward pass."""

    x: Tensor
    z1: Tensor
    h1: Tensor
    y: Tensor


@dataclass(slots=True, frozen=True)
class BlockGrads:
    """d loss / d P_l, shape-congruent with the owning BlockParams."""

    w1: Tensor
    b1: Tensor
    w2: Tensor
    b2: Tensor

    def tensors(self) -> tuple[Tensor, Tensor, Tensor, Tensor]:
        return self.w1, self.b1, self.w2, self.b2


def init_block(
    kind: BlockKind, in_dim: int, hidden_dim: int, out_dim: int, rng: Rng
) -> BlockParams:
    """He initialization: ``w ~ Normal(0, 2 / fan_in)``, zero biases.

    A residual block's w2 is additionally scaled by ``RESIDUAL_BRANCH_GAIN``.
    ``rng`` is consumed for w1, then w2.
    """
    if kind is BlockKind.RESIDUAL and in_dim != out_dim:
        raise ShapeMismatch(f"residual block needs in_dim == out_dim, got {in_dim} and {out_dim}")
    w1 = randn((hidden_dim, in_dim), math.sqrt(2.0 / in_dim), rng)
    w2_stddev = math.sqrt(2.0 / hidden_dim)
    if kind is BlockKind.RESIDUAL:
        w2_stddev *= RESIDUAL_BRANCH_GAIN
    w2 = randn((out_dim, hidden_dim), w2_stddev, rng)
    return BlockParams(
        kind=kind,
        w1=w1,
        b1=T.zeros((hidden_dim,)),
        w2=w2,
        b2=T.zeros((out_dim,)),
    )


def zero_block(kind: BlockKind, in_dim: int, hidden_dim: int, out_dim: int) -> BlockParams:
    """A block whose parameters are all zero; for residual kind, the identity map."""
    return BlockParams(
        kind=kind,
        w1=T.zeros((hidden_dim, in_dim)),
        b1=T.zeros((hidden_dim,)),
        w2=T.zeros((out_dim, hidden_dim)),
        b2=T.zeros((out_dim,)),
    )


def block_forward(p: BlockParams, x: Tensor) -> tuple[Tensor, BlockCache]:
    if x.ndim != 2 or x.shape[1] != p.in_dim:
        raise ShapeMismatch(f"{p.kind.name} block expects width {p.in_dim}, got input {x.shape}")

    z1 = T.add_row(T.matmul(x, p.w1.T), p.b1)
    h1 = T.relu(z1)
    y = T.add_row(T.matmul(h1, p.w2.T), p.b2)
    if p.kind is BlockKind.RESIDUAL:
        y = T.add(x, y)
    return y, BlockCache(x=x, z1=z1, h1=h1, y=y)


def block_backward(p: BlockParams, cache: BlockCache, dy: Tensor) -> tuple[Tensor, BlockGrads]:
    if dy.shape != cache.y.shape:
        raise ShapeMismatch(f"upstream gradient {dy.shape} does not match block output {cache.y.shape}")
    if cache.x.shape[1] != p.in_dim or cache.h1.shape[1] != p.hidden_dim:
        raise ShapeMismatch(f"cache does not belong to this {p.kind.name} block")

    dw2 = T.matmul(dy.T, cache.h1)
    db2 = T.sum_rows(dy)
    dh1 = T.matmul(dy, p.w2)
    dz1 = T.mul(dh1, T.relu_grad(cache.z1))
    dw1 = T.matmul(dz1.T, cache.x)
    db1 = T.sum_rows(dz1)
    dx = T.matmul(dz1, p.w1)
    if p.kind is BlockKind.RESIDUAL:
        dx = T.add(dy, dx)
    return dx, BlockGrads(w1=dw1, b1=db1, w2=dw2, b2=db2)
