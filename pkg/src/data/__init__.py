"""Datasets: CIFAR-10 binary files, synthetic spirals, splitting and batching."""
