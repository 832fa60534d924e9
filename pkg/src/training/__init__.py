"""Predictor-corrector and baseline training loops."""
