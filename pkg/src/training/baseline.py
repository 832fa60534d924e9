"""Standard training of a single network: the comparison arm."""

import logging

from src.data.dataset import Dataset
from src.model.network import Network
from src.training.epoch import PlanObserver, run_epoch
from src.training.records import PCConfig, Role, RunReport

logger = logging.getLogger(__name__)


def train_baseline(
    net: Network,
    cfg: PCConfig,
    train_data: Dataset,
    val_data: Dataset,
    *,
    on_plan: PlanObserver | None = None,
) -> RunReport:
    """``cfg.total_epochs`` plain SGD epochs on ``net``, which is updated in place.

    Epoch ``e`` shuffles with the same seed as epoch ``e`` of ``train_pc``.
    """
    records = [
        run_epoch(net, Role.BASELINE, epoch, cfg, train_data, val_data, on_plan)
        for epoch in range(1, cfg.total_epochs + 1)
    ]
    logger.info("Baseline done: val_acc=%.4f", records[-1].val_accuracy)
    return RunReport(records=records, final_model=net, config=cfg)
