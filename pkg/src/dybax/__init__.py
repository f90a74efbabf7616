"""Exact workbench for classical and quantum dynamical Yang-Baxter theory."""

__version__ = "0.1.0"
