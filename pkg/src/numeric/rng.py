"""Seeded random streams that are identical across runs and platforms.

Raw 64-bit words come from numpy's PCG64 bit generator, whose output for a
given seed is fixed by numpy's stability policy. Everything built on top of
the raw words (uniforms, normals, permutations) is done here rather than
through ``numpy.random.Generator`` methods, which may change between numpy
releases:

* uniform: the top 53 bits of a word, scaled to [0, 1)
* normal: Box-Muller over pairs of uniforms, cosine branch first
* permutation: stable argsort of ``n`` raw words
"""

import math

import numpy as np
import numpy.typing as npt

from src.numeric.tensor import Tensor

_TWO_POW_MINUS_53 = 2.0**-53
_SEED_LIMIT = 2**64


def derive_seed(seed: int, index: int) -> int:
    """Hash a (seed, index) pair into a fresh 64-bit seed."""
    state = np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


class Rng:
    """A deterministic stream of random numbers for one 64-bit seed."""

    def __init__(self, seed: int) -> None:
        if not 0 <= seed < _SEED_LIMIT:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def raw(self, count: int) -> npt.NDArray[np.uint64]:
        return self._bits.random_raw(count)

    def uniform(self, count: int) -> Tensor:
        """``count`` samples from [0, 1)."""
        words = self.raw(count) >> np.uint64(11)
        return words.astype(np.float64) * _TWO_POW_MINUS_53

    def standard_normal(self, count: int) -> Tensor:
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs)
        # 1 - u lies in (0, 1], keeping log finite.
        radius = np.sqrt(-2.0 * np.log(1.0 - u[0::2]))
        angle = 2.0 * math.pi * u[1::2]
        out = np.empty(2 * pairs, dtype=np.float64)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:count]

    def permutation(self, n: int) -> npt.NDArray[np.int64]:
        """A uniform random permutation of ``range(n)``."""
        return np.argsort(self.raw(n), kind="stable").astype(np.int64)


def randn(shape: tuple[int, ...], stddev: float, rng: Rng) -> Tensor:
    """I.i.d. Normal(0, stddev^2) samples of the given shape."""
    if stddev < 0:
        raise ValueError(f"stddev must be non-negative, got {stddev}")
    count = math.prod(shape)
    samples = rng.standard_normal(count) * np.float64(stddev)
    return samples.reshape(shape)
