"""Exact counts of bilaterally symmetric k-noncrossing set partitions.

Three independent routes are cross-checked: brute force over partitions
(:mod:`crosswalks.partitions`), lattice-walk dynamic programming
(:mod:`crosswalks.walks`) and constant terms of formal series
(:mod:`crosswalks.series`).  :mod:`crosswalks.recurrences` handles the
holonomic side and :mod:`crosswalks.bijections` the one-row tableau encodings.
"""

from .errors import (
    IntegralityError,
    SingularIndexError,
    SizeLimitError,
    UnderdeterminedError,
    VerificationError,
    WindowOverflowError,
)
from .partitions import ArcDiagram, SetPartition, count_partitions, has_k_crossing
from .recurrences import LinearODE, PRecurrence, asymptotic_fit, extend, guess_rec, load_catalog, verify_rec
from .series import ADescriptor, TruncSeries, eval_CA, eval_EA, verify_identity
from .walks import EndSet, WalkSpec, count_walks, sequence

__version__ = "0.1.0"

__all__ = [
    "ADescriptor",
    "ArcDiagram",
    "EndSet",
    "IntegralityError",
    "LinearODE",
    "PRecurrence",
    "SetPartition",
    "SingularIndexError",
    "SizeLimitError",
    "TruncSeries",
    "UnderdeterminedError",
    "VerificationError",
    "WalkSpec",
    "WindowOverflowError",
    "asymptotic_fit",
    "count_partitions",
    "count_walks",
    "eval_CA",
    "eval_EA",
    "extend",
    "guess_rec",
    "has_k_crossing",
    "load_catalog",
    "sequence",
    "verify_identity",
    "verify_rec",
]
