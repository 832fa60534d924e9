"""One SGD epoch over a shuffled dataset, and whole-dataset evaluation."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import partial

from src.config import settings
from src.data.batching import BatchPlan, epoch_seed, plan_batches
from src.data.dataset import Dataset
from src.errors import NonFiniteValues, ShapeMismatch
from src.model.network import Network
from src.nn.loss import accuracy, softmax_xent
from src.training.records import EpochRecord, PCConfig, Role
from src.training.timer import ComputeTimer

logger = logging.getLogger(__name__)

PlanHook = Callable[[BatchPlan], None]
PlanObserver = Callable[[int, BatchPlan], None]


@dataclass(slots=True, frozen=True)
class EpochResult:
    train_loss: float
    train_accuracy: float
    wall_ms: float


def _check_compatible(net: Network, data: Dataset) -> None:
    if data.input_dim != net.input_dim or data.num_classes != net.num_classes:
        raise ShapeMismatch(
            f"dataset ({data.input_dim} features, {data.num_classes} classes) does not fit "
            f"network ({net.input_dim} inputs, {net.num_classes} classes)"
        )


def train_epoch(
    net: Network,
    data: Dataset,
    lr: float,
    batch_size: int,
    seed: int,
    *,
    on_plan: PlanHook | None = None,
) -> EpochResult:
    """One pass over ``data`` with an SGD step per mini-batch; updates ``net`` in place.

    Loss and accuracy are batch-size-weighted means of the per-batch values
    measured before each step. ``wall_ms`` covers forward, backward and update only.
    """
    _check_compatible(net, data)
    plan = plan_batches(len(data), batch_size, seed)
    if on_plan is not None:
        on_plan(plan)

    timer = ComputeTimer()
    loss_sum = 0.0
    correct = 0
    for indices in plan.batches:
        x = data.features[indices]
        y = data.labels[indices]

        timer.begin()
        logits, caches = net.forward(x)
        loss, dlogits = softmax_xent(logits, y)
        if not math.isfinite(loss):
            raise NonFiniteValues(f"non-finite training loss {loss} at lr={lr}; lower the learning rate")
        grads = net.backward(caches, dlogits)
        net.sgd_update(grads, lr)
        timer.end()

        loss_sum += loss * len(indices)
        correct += round(accuracy(logits, y) * len(indices))

    n = len(data)
    return EpochResult(train_loss=loss_sum / n, train_accuracy=correct / n, wall_ms=timer.total_ms)


def evaluate(net: Network, data: Dataset, batch_size: int | None = None) -> tuple[float, float]:
    """(mean loss, accuracy) of ``net`` on ``data`` without updating it."""
    _check_compatible(net, data)
    chunk = batch_size or settings.eval_batch_size
    loss_sum = 0.0
    correct = 0
    for start in range(0, len(data), chunk):
        x = data.features[start : start + chunk]
        y = data.labels[start : start + chunk]
        logits = net.predict(x)
        loss, _ = softmax_xent(logits, y)
        loss_sum += loss * len(y)
        correct += round(accuracy(logits, y) * len(y))
    return loss_sum / len(data), correct / len(data)


def run_epoch(
    net: Network,
    role: Role,
    epoch: int,
    cfg: PCConfig,
    train_data: Dataset,
    val_data: Dataset,
    on_plan: PlanObserver | None,
) -> EpochRecord:
    """Train ``net`` for global epoch ``epoch``, then evaluate it on ``val_data``."""
    hook: PlanHook | None = partial(on_plan, epoch) if on_plan is not None else None
    result = train_epoch(
        net,
        train_data,
        cfg.lr,
        cfg.batch_size,
        epoch_seed(cfg.shuffle_seed, epoch),
        on_plan=hook,
    )
    val_loss, val_accuracy = evaluate(net, val_data)
    record = EpochRecord(
        epoch=epoch,
        role=role,
        train_loss=result.train_loss,
        train_accuracy=result.train_accuracy,
        val_loss=val_loss,
        val_accuracy=val_accuracy,
        wall_ms=result.wall_ms,
    )
    logger.info(
        "epoch %d %-9s train_loss=%.4f train_acc=%.4f val_loss=%.4f val_acc=%.4f wall_ms=%.1f",
        record.epoch,
        record.role,
        record.train_loss,
        record.train_accuracy,
        record.val_loss,
        record.val_accuracy,
        record.wall_ms,
    )
    return record
