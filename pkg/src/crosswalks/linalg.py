"""Exact nullspaces of rational matrices (FLINT does the elimination)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import flint


def primitive(vec: Sequence[int]) -> list[int]:
    """Divide by the content and make the last nonzero entry positive."""
    g = 0
    for v in vec:
        g = gcd(g, int(v))
    if g == 0:
        return [0] * len(vec)
    out = [int(v) // g for v in vec]
    last = next(v for v in reversed(out) if v)
    return out if last > 0 else [-v for v in out]


def nullspace(rows: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> list[list[int]]:
    """Integer basis of ``{v : M v = 0}``, each vector primitive.

    Rows are scaled to integers first, which does not change the kernel.
    """
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    int_rows = []
    for r in rows:
        fr = [Fraction(v) for v in r]
        d = lcm(*(v.denominator for v in fr)) if fr else 1
        int_rows.append([int(v * d) for v in fr])
    basis, nullity = flint.fmpz_mat(int_rows).nullspace()
    return [primitive([int(basis[i, j]) for i in range(ncols)]) for j in range(nullity)]
