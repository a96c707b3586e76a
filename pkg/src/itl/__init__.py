"""Exact decision kernel and verification harness for interval relational
systems over ultimately periodic structures."""

from . import harness, jsoncodec, kernel, relations, tukey
from .errors import (
    BadParams,
    FragmentUnsupported,
    ItlError,
    MalformedSpec,
    ProgramDivergence,
    TypeMismatch,
    UnknownId,
)

__version__ = "0.1.0"

__all__ = [
    "BadParams",
    "FragmentUnsupported",
    "ItlError",
    "MalformedSpec",
    "ProgramDivergence",
    "TypeMismatch",
    "UnknownId",
    "harness",
    "jsoncodec",
    "kernel",
    "relations",
    "tukey",
]
