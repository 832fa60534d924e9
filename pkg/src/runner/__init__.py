"""Experiment runner: configuration, orchestration and output files."""
