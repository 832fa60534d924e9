"""Residual blocks of dense layers and the classification loss."""
