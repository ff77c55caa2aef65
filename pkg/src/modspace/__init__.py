"""Modulation-space norms, matrix dilations and Hausdorff operators."""

__version__ = "0.1.0"
