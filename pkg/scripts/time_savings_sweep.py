"""Measure predictor-corrector time savings for several K values.

Each K gets a baseline run on a depth L+K network and a predictor-corrector
run with the same seeds; the measured savings are logged next to the
block-count model 100*K/(2(L+K)).

Usage:
  python -m scripts.time_savings_sweep --ks 1 2 4 8
  python -m scripts.time_savings_sweep --depth 8 --width 128 --batch-size 128 --epochs 10
"""

from __future__ import annotations

import argparse
import logging

from src.data.dataset import split
from src.data.spirals import make_spirals
from src.model.network import new_network
from src.numeric.rng import Rng, derive_seed
from src.training.baseline import train_baseline
from src.training.predictor_corrector import construct_corrector, train_pc
from src.training.records import PCConfig, expected_time_savings, time_savings

logging.basicConfig(
    level=logging.INFO, format="%(asctime)s | %(levelname)s | %(message)s"
)
logger = logging.getLogger(__name__)


def _sweep(
    ks: list[int],
    depth: int,
    width: int,
    batch_size: int,
    epochs: int,
    points: int,
) -> list[tuple[int, float, float]]:
    data = make_spirals(points, 2, 0.02, seed=2)
    train, val = split(data, 0.2, seed=derive_seed(2, 1))
    rows = []
    for k in ks:
        cfg = PCConfig(k=k, total_epochs=epochs, lr=0.01, batch_size=batch_size, shuffle_seed=1)

        baseline = new_network(train.input_dim, width, train.num_classes, depth + k, Rng(0))
        baseline_report = train_baseline(baseline, cfg, train, val)

        predictor = new_network(train.input_dim, width, train.num_classes, depth, Rng(0))
        corrector = construct_corrector(predictor, k)
        pc_report = train_pc(predictor, corrector, cfg, train, val)

        measured = time_savings(pc_report, baseline_report)
        expected = expected_time_savings(depth, k)
        logger.info("k=%d measured=%.2f%% model=%.2f%%", k, measured, expected)
        rows.append((k, measured, expected))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--ks", type=int, nargs="+", default=[1, 2, 4, 8])
    parser.add_argument("--depth", type=int, default=8)
    parser.add_argument("--width", type=int, default=128)
    parser.add_argument("--batch-size", type=int, default=128)
    parser.add_argument("--epochs", type=int, default=10)
    parser.add_argument("--points", type=int, default=2000, help="spiral points per class")
    args = parser.parse_args()

    rows = _sweep(args.ks, args.depth, args.width, args.batch_size, args.epochs, args.points)
    print("k,measured_pct,model_pct")
    for k, measured, expected in rows:
        print(f"{k},{measured:.2f},{expected:.2f}")


if __name__ == "__main__":
    main()
