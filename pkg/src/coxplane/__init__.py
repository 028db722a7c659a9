"""Coxeter-plane diagrams for noncrossing partitions and clusters."""
from .core import build_coxeter_system

__version__ = "0.1.0"
__all__ = ["build_coxeter_system"]
