"""Predictor-corrector training.

The predictor N_1 has L blocks. The corrector N_2 is built once from it by
inserting K copies of block 2 directly above the input block, so predictor
block ``l`` (l >= 2) lines up with corrector block ``l + K``. Training
alternates one predictor epoch and one corrector epoch; after each epoch the
aligned blocks are copied from the model that just trained into the other one.
Predictor block 1 and corrector blocks 1..K+1 are never copied; SGD alone
maintains them. The corrector is the trained model.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

from src.data.dataset import Dataset
from src.errors import BadDepth, DepthMismatch, NotResidual, OddEpochCount
from src.model.network import MIN_DEPTH, Network
from src.nn.blocks import BlockKind
from src.training.epoch import PlanObserver, evaluate, run_epoch
from src.training.records import EpochRecord, PCConfig, Role, RunReport

logger = logging.getLogger(__name__)


class SyncDirection(StrEnum):
    UP = "up"
    DOWN = "down"


@dataclass(slots=True, frozen=True)
class SyncEvent:
    """Passed to the sync observer right after a copy loop finishes."""

    direction: SyncDirection
    epoch: int
    predictor: Network
    corrector: Network
    k: int


SyncObserver = Callable[[SyncEvent], None]


def construct_corrector(predictor: Network, k: int) -> Network:
    """Deep copy of ``predictor`` with K extra copies of block 2 inserted below block 2."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if predictor.depth < MIN_DEPTH:
        raise BadDepth(f"predictor needs at least {MIN_DEPTH} blocks, got {predictor.depth}")
    if k > 0 and predictor.blocks[1].kind is not BlockKind.RESIDUAL:
        raise NotResidual(f"block 2 is {predictor.blocks[1].kind.name}; only residual blocks can be repeated")

    corrector = predictor.copy()
    for _ in range(k):
        corrector.blocks.insert(1, predictor.get_params(2))
    logger.debug("Constructed corrector: depth %d -> %d (k=%d)", predictor.depth, corrector.depth, k)
    return corrector


def _check_depths(predictor: Network, corrector: Network, k: int) -> None:
    if corrector.depth != predictor.depth + k:
        raise DepthMismatch(
            f"corrector depth {corrector.depth} != predictor depth {predictor.depth} + k {k}"
        )


def sync_up(predictor: Network, corrector: Network, k: int) -> None:
    """Copy predictor block l into corrector block l + K for l = 2..L."""
    _check_depths(predictor, corrector, k)
    for index in range(2, predictor.depth + 1):
        corrector.set_params(index + k, predictor.get_params(index))


def sync_down(corrector: Network, predictor: Network, k: int) -> None:
    """Copy corrector block l + K into predictor block l for l = 2..L."""
    _check_depths(predictor, corrector, k)
    for index in range(2, predictor.depth + 1):
        predictor.set_params(index, corrector.get_params(index + k))


def train_pc(
    predictor: Network,
    corrector: Network,
    cfg: PCConfig,
    train_data: Dataset,
    val_data: Dataset,
    *,
    observer: SyncObserver | None = None,
    on_plan: PlanObserver | None = None,
) -> RunReport:
    """Alternate predictor and corrector epochs for ``cfg.total_epochs`` epochs.

    Each iteration is: predictor epoch, sync_up, corrector epoch, sync_down.
    Both networks are updated in place; the report's final model is the corrector.
    """
    if cfg.total_epochs % 2:
        raise OddEpochCount(f"total_epochs must be even, got {cfg.total_epochs}")
    _check_depths(predictor, corrector, cfg.k)

    records: list[EpochRecord] = []
    for iteration in range(cfg.total_epochs // 2):
        epoch = 2 * iteration + 1
        records.append(run_epoch(predictor, Role.PREDICTOR, epoch, cfg, train_data, val_data, on_plan))
        sync_up(predictor, corrector, cfg.k)
        if observer is not None:
            observer(SyncEvent(SyncDirection.UP, epoch, predictor, corrector, cfg.k))

        epoch += 1
        records.append(run_epoch(corrector, Role.CORRECTOR, epoch, cfg, train_data, val_data, on_plan))
        sync_down(corrector, predictor, cfg.k)
        if observer is not None:
            observer(SyncEvent(SyncDirection.DOWN, epoch, predictor, corrector, cfg.k))

    pred_loss, pred_acc = evaluate(predictor, val_data)
    logger.info(
        "Predictor-corrector done: corrector val_acc=%.4f, predictor val_acc=%.4f (val_loss=%.4f)",
        records[-1].val_accuracy,
        pred_acc,
        pred_loss,
    )
    return RunReport(records=records, final_model=corrector, config=cfg)
