"""The block stack N: whole-network forward, backward and SGD update.

Block indices are 1-based in every public interface: block 1 is the input
block and block L the output block. Parameter movement in and out of a
network always copies, so two networks never share storage.
"""

import logging
from dataclasses import dataclass, field

from src.errors import BadDepth, IndexOutOfRange, NonFiniteValues, ShapeMismatch
from src.nn.blocks import (
    BlockCache,
    BlockGrads,
    BlockKind,
    BlockParams,
    block_backward,
    block_forward,
    init_block,
)
from src.numeric import tensor as T
from src.numeric.rng import Rng
from src.numeric.tensor import Tensor

logger = logging.getLogger(__name__)

MIN_DEPTH = 3


@dataclass(slots=True)
class Network:
    """An ordered stack of blocks ``[Input, Residual, ..., Residual, Output]``."""

    input_dim: int
    width: int
    num_classes: int
    blocks: list[BlockParams] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.blocks)

    def kinds(self) -> list[BlockKind]:
        return [b.kind for b in self.blocks]

    def validate(self) -> None:
        """Raise BadDepth or ShapeMismatch unless the stack is well formed."""
        if self.depth < MIN_DEPTH:
            raise BadDepth(f"a network needs at least {MIN_DEPTH} blocks, got {self.depth}")
        expected = [BlockKind.INPUT] + [BlockKind.RESIDUAL] * (self.depth - 2) + [BlockKind.OUTPUT]
        if self.kinds() != expected:
            raise ShapeMismatch(f"block kinds {[k.name for k in self.kinds()]} are not Input, Residual..., Output")
        for index, block in enumerate(self.blocks, start=1):
            block.validate()
            in_dim = self.input_dim if index == 1 else self.width
            out_dim = self.num_classes if index == self.depth else self.width
            if (block.in_dim, block.out_dim) != (in_dim, out_dim):
                raise ShapeMismatch(
                    f"block {index} maps {block.in_dim} -> {block.out_dim}, expected {in_dim} -> {out_dim}"
                )

    def _check_index(self, index: int) -> None:
        if not 1 <= index <= self.depth:
            raise IndexOutOfRange(f"block index {index} outside 1..{self.depth}")

    def get_params(self, index: int) -> BlockParams:
        """A deep copy of block ``index``'s parameters."""
        self._check_index(index)
        return self.blocks[index - 1].copy()

    def set_params(self, index: int, p: BlockParams) -> None:
        """Replace block ``index`` with a deep copy of ``p``."""
        self._check_index(index)
        if not self.blocks[index - 1].congruent(p):
            raise ShapeMismatch(f"parameters do not fit block {index}")
        self.blocks[index - 1] = p.copy()

    def copy(self) -> "Network":
        return Network(
            input_dim=self.input_dim,
            width=self.width,
            num_classes=self.num_classes,
            blocks=[b.copy() for b in self.blocks],
        )

    def same_bits(self, other: "Network") -> bool:
        return (
            (self.input_dim, self.width, self.num_classes, self.depth)
            == (other.input_dim, other.width, other.num_classes, other.depth)
            and all(a.same_bits(b) for a, b in zip(self.blocks, other.blocks, strict=True))
        )

    def forward(self, x: Tensor) -> tuple[Tensor, list[BlockCache]]:
        """Apply blocks 1..L in order, keeping every block's cache."""
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise ShapeMismatch(f"network expects input width {self.input_dim}, got {x.shape}")
        caches: list[BlockCache] = []
        out = x
        for block in self.blocks:
            out, cache = block_forward(block, out)
            caches.append(cache)
        return out, caches

    def predict(self, x: Tensor) -> Tensor:
        return self.forward(x)[0]

    def backward(self, caches: list[BlockCache], dlogits: Tensor) -> list[BlockGrads]:
        """Gradients for every block, index-aligned with ``blocks``."""
        if len(caches) != self.depth:
            raise ShapeMismatch(f"{len(caches)} caches for a {self.depth}-block network")
        grads: list[BlockGrads] = []
        upstream = dlogits
        for block, cache in zip(reversed(self.blocks), reversed(caches), strict=True):
            upstream, g = block_backward(block, cache, upstream)
            grads.append(g)
        grads.reverse()
        return grads

    def sgd_update(self, grads: list[BlockGrads], lr: float) -> "Network":
        """In-place ``p <- p - lr * g`` for every parameter; returns ``self``.

        Raises NonFiniteValues, leaving the network unchanged, if the step
        would produce a NaN or infinite parameter.
        """
        if len(grads) != self.depth:
            raise ShapeMismatch(f"{len(grads)} gradients for a {self.depth}-block network")
        for block, g in zip(self.blocks, grads, strict=True):
            if any(p.shape != d.shape for p, d in zip(block.tensors(), g.tensors(), strict=True)):
                raise ShapeMismatch(f"gradient shapes do not match {block.kind.name} block")
        updated = [
            BlockParams(
                kind=block.kind,
                w1=T.sub(block.w1, T.scale(g.w1, lr)),
                b1=T.sub(block.b1, T.scale(g.b1, lr)),
                w2=T.sub(block.w2, T.scale(g.w2, lr)),
                b2=T.sub(block.b2, T.scale(g.b2, lr)),
            )
            for block, g in zip(self.blocks, grads, strict=True)
        ]
        for index, block in enumerate(updated, start=1):
            if not all(T.is_finite(t) for t in block.tensors()):
                raise NonFiniteValues(f"SGD step at lr={lr} left non-finite parameters in block {index}")
        self.blocks[:] = updated
        return self


def new_network(input_dim: int, width: int, num_classes: int, depth: int, rng: Rng) -> Network:
    """Network of ``depth`` blocks initialized by ``init_block``; ``rng`` is consumed in block order."""
    if depth < MIN_DEPTH:
        raise BadDepth(f"a network needs at least {MIN_DEPTH} blocks, got {depth}")
    blocks = [init_block(BlockKind.INPUT, input_dim, width, width, rng)]
    blocks.extend(init_block(BlockKind.RESIDUAL, width, width, width, rng) for _ in range(depth - 2))
    blocks.append(init_block(BlockKind.OUTPUT, width, width, num_classes, rng))
    logger.debug(
        "Initialized network: depth=%d input_dim=%d width=%d classes=%d seed=%d",
        depth,
        input_dim,
        width,
        num_classes,
        rng.seed,
    )
    return Network(input_dim=input_dim, width=width, num_classes=num_classes, blocks=blocks)
