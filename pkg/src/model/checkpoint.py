"""Bit-exact binary checkpoints of a Network.

Layout (little-endian, no padding, no compression)::

    magic        8 bytes  b"PCNET1\\0\\0"
    header       u32 L, u32 input_dim, u32 width, u32 num_classes
    per block    u8 kind (0 Input, 1 Residual, 2 Output)
                 then w1, b1, w2, b2, each as
                 u32 rank, u32 extents[rank], float64 data row-major
"""

import logging
import struct
from pathlib import Path

import numpy as np

from src.errors import CorruptCheckpoint
from src.model.network import Network
from src.nn.blocks import BlockKind, BlockParams
from src.numeric.tensor import Tensor

logger = logging.getLogger(__name__)

MAGIC = b"PCNET1\x00\x00"
_HEADER = struct.Struct("<4I")
_U32 = struct.Struct("<I")
_U8 = struct.Struct("<B")
_F64 = np.dtype("<f8")


def _encode_tensor(t: Tensor) -> bytes:
    parts = [_U32.pack(t.ndim), struct.pack(f"<{t.ndim}I", *t.shape)]
    parts.append(np.ascontiguousarray(t, dtype=_F64).tobytes())
    return b"".join(parts)


def encode_network(net: Network) -> bytes:
    parts = [MAGIC, _HEADER.pack(net.depth, net.input_dim, net.width, net.num_classes)]
    for block in net.blocks:
        parts.append(_U8.pack(int(block.kind)))
        parts.extend(_encode_tensor(t) for t in block.tensors())
    return b"".join(parts)


class _Reader:
    """Cursor over checkpoint bytes that reports truncation as corruption."""

    def __init__(self, data: bytes) -> None:
        self._data = data
        self._pos = 0

    def take(self, size: int) -> bytes:
        end = self._pos + size
        if end > len(self._data):
            raise CorruptCheckpoint(f"truncated at byte {len(self._data)}, needed {end}")
        chunk = self._data[self._pos : end]
        self._pos = end
        return chunk

    def unpack(self, fmt: struct.Struct) -> tuple[int, ...]:
        return fmt.unpack(self.take(fmt.size))

    def tensor(self) -> Tensor:
        (rank,) = self.unpack(_U32)
        if rank not in (1, 2):
            raise CorruptCheckpoint(f"unsupported tensor rank {rank}")
        shape = struct.unpack(f"<{rank}I", self.take(4 * rank))
        count = 1
        for extent in shape:
            count *= extent
        raw = self.take(count * _F64.itemsize)
        return np.frombuffer(raw, dtype=_F64).astype(np.float64).reshape(shape)

    @property
    def exhausted(self) -> bool:
        return self._pos == len(self._data)


def decode_network(data: bytes) -> Network:
    reader = _Reader(data)
    if reader.take(len(MAGIC)) != MAGIC:
        raise CorruptCheckpoint("bad magic bytes")
    depth, input_dim, width, num_classes = reader.unpack(_HEADER)

    blocks: list[BlockParams] = []
    for index in range(1, depth + 1):
        (code,) = reader.unpack(_U8)
        try:
            kind = BlockKind(code)
        except ValueError:
            raise CorruptCheckpoint(f"block {index} has unknown kind code {code}") from None
        w1, b1, w2, b2 = (reader.tensor() for _ in range(4))
        blocks.append(BlockParams(kind=kind, w1=w1, b1=b1, w2=w2, b2=b2))
    if not reader.exhausted:
        raise CorruptCheckpoint("trailing bytes after the last block")

    net = Network(input_dim=input_dim, width=width, num_classes=num_classes, blocks=blocks)
    try:
        net.validate()
    except ValueError as exc:
        raise CorruptCheckpoint(f"inconsistent network: {exc}") from exc
    return net


def save_checkpoint(net: Network, path: Path) -> None:
    path.write_bytes(encode_network(net))
    logger.info("Saved %d-block checkpoint to %s", net.depth, path)


def load_checkpoint(path: Path) -> Network:
    net = decode_network(path.read_bytes())
    logger.info("Loaded %d-block checkpoint from %s", net.depth, path)
    return net
