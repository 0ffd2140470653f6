"""Exact counts of vacillating and hesitating lattice walks.

Two lattices are supported: the quadrant ``Q_k`` (all coordinates >= 0) and
the Weyl chamber ``W_k`` (``a_1 > a_2 > ... > a_k >= 0``).

Vacillating walks alternate: odd-numbered steps stay put or subtract a unit
vector, even-numbered steps stay put or add one.  Hesitating walks are read in
pairs of steps, each pair being (stay, +e_i), (-e_i, stay) or (+e_i, -e_j);
every intermediate point must lie in the lattice as well.

Counts are held in numpy object arrays of Python ints indexed by coordinates,
so there is no overflow and no hashing in the inner loop.  A walk gains at
most one unit per two steps, which bounds the array.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator, Sequence

import numpy as np

from .config import check_guard

VACILLATING = "vacillating"
HESITATING = "hesitating"
FLAVORS = (VACILLATING, HESITATING)

Point = tuple[int, ...]


def in_lattice(p: Sequence[int], lattice: str) -> bool:
    if lattice == "Q":
        return all(c >= 0 for c in p)
    if lattice == "W":
        return p[-1] >= 0 and all(p[i] > p[i + 1] for i in range(len(p) - 1))
    raise ValueError(f"unknown lattice {lattice!r}")


def delta(k: int) -> Point:
    """The chamber's base point ``(k-1, ..., 1, 0)``."""
    return tuple(range(k - 1, -1, -1))


@dataclass(frozen=True)
class WalkSpec:
    flavor: str
    lattice: str
    k: int
    start: Point
    length: int

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.k < 1 or len(self.start) != self.k:
            raise ValueError("start must have k coordinates")
        object.__setattr__(self, "start", tuple(self.start))
        if not in_lattice(self.start, self.lattice):
            raise ValueError(f"start {self.start} is not in {self.lattice}_{self.k}")
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.flavor == HESITATING and self.length % 2:
            raise ValueError("hesitating walks are taken in pairs of steps; length must be even")


@dataclass(frozen=True)
class WalkTable:
    spec: WalkSpec
    counts: dict[Point, int] = field(default_factory=dict)

    def __getitem__(self, b: Sequence[int]) -> int:
        return self.counts.get(tuple(b), 0)

    def total(self) -> int:
        return sum(self.counts.values())


def _unit(k: int, j: int, sign: int = 1) -> Point:
    return tuple(sign if t == j else 0 for t in range(k))


def _add(p: Sequence[int], q: Sequence[int]) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def step_targets(p: Sequence[int], spec: WalkSpec, step_index: int) -> set[Point]:
    """Lattice-legal successors of ``p``.

    For vacillating walks ``step_index`` is the 1-based number of the single
    step; for hesitating walks it is ignored and the set of endpoints reachable
    by one pair of steps is returned (see :func:`pair_moves` for multiplicity).
    """
    if spec.flavor == HESITATING:
        return {end for _, end in pair_moves(p, spec)}
    sign = -1 if step_index % 2 == 1 else 1
    out = {tuple(p)}
    for j in range(spec.k):
        q = _add(p, _unit(spec.k, j, sign))
        if in_lattice(q, spec.lattice):
            out.add(q)
    return {q for q in out if in_lattice(q, spec.lattice)}


def pair_moves(p: Sequence[int], spec: WalkSpec) -> list[tuple[Point, Point]]:
    """All legal hesitating pairs from ``p`` as ``(intermediate, end)``."""
    k, lat = spec.k, spec.lattice
    p = tuple(p)
    moves = []
    for i in range(k):
        up = _add(p, _unit(k, i))
        down = _add(p, _unit(k, i, -1))
        if in_lattice(up, lat):
            moves.append((p, up))  # stay, +e_i
            for j in range(k):
                end = _add(up, _unit(k, j, -1))
                if in_lattice(end, lat):
                    moves.append((up, end))  # +e_i, -e_j
        if in_lattice(down, lat):
            moves.append((down, down))  # -e_i, stay
    return [m for m in moves if in_lattice(m[0], lat) and in_lattice(m[1], lat)]


# --------------------------------------------------------------------------
# dynamic programming


def _shift(arr: np.ndarray, axis: int, d: int) -> np.ndarray:
    """``out[p] = arr[p + d*e_axis]``, zero where that falls off the grid."""
    out = np.zeros(arr.shape, dtype=object)
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    if d > 0:
        dst[axis], src[axis] = slice(0, -d), slice(d, None)
    else:
        dst[axis], src[axis] = slice(-d, None), slice(0, d)
    out[tuple(dst)] = arr[tuple(src)]
    return out


def _lattice_mask(shape: tuple[int, ...], lattice: str) -> np.ndarray:
    idx = np.indices(shape)
    if lattice == "Q":
        return np.ones(shape, dtype=bool)
    mask = np.ones(shape, dtype=bool)
    for i in range(len(shape) - 1):
        mask &= idx[i] > idx[i + 1]
    return mask


def _grid_size(start: Sequence[int], length: int) -> int:
    return max(start) + length // 2 + 3


def _layers(
    flavor: str, lattice: str, k: int, start: Sequence[int], max_length: int
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(length, counts)`` after every single step (vacillating) or pair."""
    check_guard("walk_length", max_length)
    size = _grid_size(start, max_length)
    shape = (size,) * k
    mask = _lattice_mask(shape, lattice)
    cur = np.zeros(shape, dtype=object)
    cur[tuple(start)] = 1
    yield 0, cur
    if flavor == VACILLATING:
        for step in range(1, max_length + 1):
            d = 1 if step % 2 == 1 else -1  # odd: source is p + e_j
            nxt = cur.copy()
            for j in range(k):
                nxt += _shift(cur, j, d)
            nxt[~mask] = 0
            cur = nxt
            yield step, cur
    else:
        for pair in range(1, max_length // 2 + 1):
            nxt = np.zeros(shape, dtype=object)
            for i in range(k):
                nxt += _shift(cur, i, -1)  # stay, +e_i
                nxt += _shift(cur, i, 1)  # -e_i, stay
                mid = _shift(cur, i, -1)
                mid[~mask] = 0
                for j in range(k):
                    nxt += _shift(mid, j, 1)  # +e_i, -e_j
            nxt[~mask] = 0
            cur = nxt
            yield 2 * pair, cur


def _final_layer(spec: WalkSpec) -> np.ndarray:
    arr = None
    for length, arr in _layers(spec.flavor, spec.lattice, spec.k, spec.start, spec.length):
        if length == spec.length:
            return arr
    return arr


def count_walks(spec: WalkSpec) -> WalkTable:
    arr = _final_layer(spec)
    counts = {tuple(int(c) for c in idx): int(arr[idx]) for idx in zip(*np.nonzero(arr))}
    return WalkTable(spec, dict(sorted(counts.items())))


# --------------------------------------------------------------------------
# endpoint sets on W_2


def _on_w2(i: int, j: int) -> bool:
    return i > j >= 0


_BASIC: dict[str, Callable[[int, int], bool]] = {
    "A1": lambda i, j: (i, j) == (1, 0),
    "A2": _on_w2,
    "A2p": lambda i, j: (j == 0 and i >= 2) or (i == j + 1 and j >= 1),
    "A2pp": lambda i, j: i - j >= 2 and j >= 1,
    "A3": lambda i, j: j == 0 and i >= 1,
    "A4": lambda i, j: i == j + 1 and j >= 0,
}
BASIC_KINDS = tuple(_BASIC)

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?(?:x(?:\^(\d+))?\s*\*?\s*)?(?:y(?:\^(\d+))?\s*\*?\s*)?(A1|A2pp|A2p|A2|A3|A4)\s*"
)


@dataclass(frozen=True)
class EndSet:
    """Integer-weighted combination of shifted catalog sets.

    A term ``(w, (a, b), kind)`` stands for ``w * x^a y^b * kind(x, y)``; the
    weight of a point is the sum over terms whose shifted set contains it.
    """

    terms: tuple[tuple[int, tuple[int, int], str], ...]

    @classmethod
    def of(cls, kind: str) -> "EndSet":
        if kind not in _BASIC:
            raise ValueError(f"unknown end set {kind!r}")
        return cls(((1, (0, 0), kind),))

    @classmethod
    def parse(cls, text: str) -> "EndSet":
        """Parse e.g. ``"A1 + 2*A2p + 3*A2pp"`` or ``"A3 + x*A3 + x*y*A3"``."""
        terms = []
        pos = 0
        text = text.replace("′′", "pp").replace("″", "pp").replace("′", "p").replace("'", "p")
        while pos < len(text.strip()) or not terms:
            m = _TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse end set {text!r}")
            sign, w, xa, yb, kind = m.groups()
            if terms and sign is None:
                raise ValueError(f"missing operator in {text!r}")
            weight = int(w or 1) * (-1 if sign == "-" else 1)
            has_x = "x" in m.group(0)
            has_y = "y" in m.group(0)
            a = int(xa) if xa else (1 if has_x else 0)
            b = int(yb) if yb else (1 if has_y else 0)
            terms.append((weight, (a, b), kind))
            pos = m.end()
            if pos >= len(text):
                break
        return cls(tuple(terms))

    def shifted(self, a: int, b: int) -> "EndSet":
        return EndSet(tuple((w, (s[0] + a, s[1] + b), kd) for w, s, kd in self.terms))

    def __add__(self, other: "EndSet") -> "EndSet":
        return EndSet(self.terms + other.terms)

    def __neg__(self) -> "EndSet":
        return EndSet(tuple((-w, s, kd) for w, s, kd in self.terms))

    def __sub__(self, other: "EndSet") -> "EndSet":
        return self + (-other)

    def __rmul__(self, c: int) -> "EndSet":
        return EndSet(tuple((c * w, s, kd) for w, s, kd in self.terms))

    def weight(self, p: Sequence[int]) -> int:
        i, j = p
        return sum(w for w, (a, b), kd in self.terms if _BASIC[kd](i - a, j - b))

    def __contains__(self, p) -> bool:
        return self.weight(p) != 0

    def __str__(self):
        parts = []
        for w, (a, b), kd in self.terms:
            mono = ("x" + (f"^{a}" if a > 1 else "") + "*" if a else "") + (
                "y" + (f"^{b}" if b > 1 else "") + "*" if b else ""
            )
            coef = "" if abs(w) == 1 else f"{abs(w)}*"
            sign = "-" if w < 0 else "+"
            parts.append(f"{sign} {coef}{mono}{kd}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s

    def weight_array(self, size: int) -> np.ndarray:
        out = np.zeros((size, size), dtype=object)
        for i in range(size):
            for j in range(min(i, size)):
                w = self.weight((i, j))
                if w:
                    out[i, j] = w
        return out


A1, A2, A2P, A2PP, A3, A4 = (EndSet.of(k) for k in BASIC_KINDS)


def count_to_endset(spec: WalkSpec, A: EndSet) -> int:
    """``sum_b weight_A(b) * (number of walks ending at b)``; W_2 only."""
    if spec.k != 2 or spec.lattice != "W":
        raise ValueError("end sets are defined on W_2")
    arr = _final_layer(spec)
    return int((arr * A.weight_array(arr.shape[0])).sum())


def sequence(
    flavor: str,
    A: EndSet,
    n_terms: int,
    parity: str = "even",
    start: Point = (1, 0),
) -> list[int]:
    """Endpoint-weighted W_2 walk counts for a run of lengths.

    ``parity="even"`` gives lengths 0, 2, 4, ...; ``"odd"`` gives 1, 3, 5, ...
    (vacillating only); ``"all"`` gives 0, 1, 2, ... (vacillating only).
    Returns ``n_terms`` values.
    """
    if parity not in ("even", "odd", "all"):
        raise ValueError(f"unknown parity {parity!r}")
    if flavor == HESITATING and parity != "even":
        raise ValueError("hesitating walks only have even lengths")
    if n_terms <= 0:
        return []
    max_length = {"even": 2 * (n_terms - 1), "odd": 2 * n_terms - 1, "all": n_terms - 1}[parity]
    weights = A.weight_array(_grid_size(start, max_length))
    out = []
    for length, arr in _layers(flavor, "W", 2, start, max_length):
        if parity == "all" or (length % 2 == 0) == (parity == "even"):
            out.append(int((arr * weights).sum()))
    return out


# --------------------------------------------------------------------------
# reflection principle and the odd-length reduction


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


def reflection_count(a: Sequence[int], b: Sequence[int], n: int) -> int:
    """``w_k(a, b, n)`` as the signed sum of quadrant counts from ``pi(a)``."""
    a, b = tuple(a), tuple(b)
    k = len(a)
    if not (in_lattice(a, "W") and in_lattice(b, "W")):
        raise ValueError("a and b must lie in W_k")
    total = 0
    for perm in permutations(range(k)):
        src = tuple(a[perm[i]] for i in range(k))
        q = count_walks(WalkSpec(VACILLATING, "Q", k, src, n))
        total += _perm_sign(perm) * q[b]
    return total


# Odd-length reductions: endpoints in the key set after an odd length
# correspond to these weightings after the preceding even length.
ODD_REDUCTIONS = {
    "A2": (A2, A1 + 2 * A2P + 3 * A2PP),
    "A3": (A3, A3 + A3.shifted(1, 0) + A3.shifted(1, 1)),
    "A4": (A4, A4 + A4.shifted(1, 0)),
}


def odd_reduction_check(a: Sequence[int], n: int) -> bool:
    """Check the length 2n+1 -> 2n reductions for all three end sets."""
    a = tuple(a)
    odd = _final_layer(WalkSpec(VACILLATING, "W", 2, a, 2 * n + 1))
    even = _final_layer(WalkSpec(VACILLATING, "W", 2, a, 2 * n))
    for target, reduced in ODD_REDUCTIONS.values():
        lhs = int((odd * target.weight_array(odd.shape[0])).sum())
        rhs = int((even * reduced.weight_array(even.shape[0])).sum())
        if lhs != rhs:
            return False
    return True
