"""Soft-decision Reed-Solomon decoding and RS-kernel polar codes."""

from .counters import Counters
from .gf import FieldTable, build_field

__all__ = ["Counters", "FieldTable", "build_field"]

__version__ = "0.1.0"
