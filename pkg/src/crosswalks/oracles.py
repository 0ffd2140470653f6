"""Reference sequences used to cross-check the walk and series engines."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .config import check_guard
from .errors import IntegralityError


@dataclass(frozen=True)
class NamedSequence:
    """A finite run of terms with a label saying where the values came from."""

    name: str
    terms: tuple[int, ...]
    provenance: str = ""


def baxter(n: int) -> int:
    """Number of Baxter permutations of length ``n`` (triple binomial sum)."""
    if n < 1:
        raise ValueError("baxter(n) needs n >= 1")
    total = sum(comb(n + 1, k) * comb(n + 1, k + 1) * comb(n + 1, k + 2) for k in range(n))
    q, r = divmod(2 * total, n * (n + 1) ** 2)
    if r:
        raise IntegralityError(f"Baxter sum not divisible at n={n}")
    return q


def _lis_length(perm: Sequence[int]) -> int:
    tails: list[int] = []
    for v in perm:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def pattern_avoids(perm: Sequence[int], pattern: Sequence[int]) -> bool:
    """True iff no subsequence of ``perm`` is order-isomorphic to ``pattern``."""
    k = len(pattern)
    if k > 4:
        raise ValueError("patterns longer than 4 are not supported")
    order = sorted(range(k), key=lambda i: pattern[i])
    for idx in combinations(range(len(perm)), k):
        vals = [perm[i] for i in idx]
        if all(vals[order[t]] < vals[order[t + 1]] for t in range(k - 1)):
            return False
    return True


@lru_cache(maxsize=None)
def _count_1234(n: int) -> int:
    return sum(1 for p in permutations(range(n)) if _lis_length(p) < 4)


def count_1234_avoiders(n: int, *, guard: int | None = None) -> int:
    """Permutations of ``[n]`` with no increasing subsequence of length 4."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    check_guard("permutations", n, guard)
    return _count_1234(n)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def central_binomial(n: int) -> int:
    """``C(n, floor(n/2))``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return comb(n, n // 2)


_REFERENCE = {
    "bell": bell,
    "catalan": catalan,
    "central_binomial": central_binomial,
    "baxter": baxter,
}


def reference_sequence(name: str, n_terms: int, offset: int = 0) -> NamedSequence:
    """First ``n_terms`` values of a closed-form reference sequence."""
    if name not in _REFERENCE:
        raise KeyError(f"unknown reference sequence {name!r}")
    if name == "baxter":
        offset = max(offset, 1)
    f = _REFERENCE[name]
    return NamedSequence(name, tuple(f(i) for i in range(offset, offset + n_terms)), "closed form")
