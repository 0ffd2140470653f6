"""Set partitions of [n], their arc diagrams and (enhanced) k-crossings.

This module is the brute-force ground truth for everything else: partitions
are generated explicitly and tested one by one.

A partition of ``[n]`` is drawn as an arc diagram by joining numerically
consecutive elements of each block.  A k-crossing is a set of arcs
``(i1, j1), ..., (ik, jk)`` with ``i1 < ... < ik < j1 < ... < jk``; the
enhanced version relaxes the middle inequality to ``ik <= j1`` and works on
the diagram with a loop ``(v, v)`` on each singleton.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .config import check_guard

Arc = tuple[int, int]


@dataclass(frozen=True)
class SetPartition:
    """Blocks of ``[n]``, stored sorted so that equality is structural."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if any(len(b) == 0 for b in blocks):
            raise ValueError("empty block")
        elements = [x for b in blocks for x in b]
        if sorted(elements) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition [1..{self.n}]")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        """Build from a restricted growth string (0-based block labels)."""
        groups: dict[int, list[int]] = {}
        for i, label in enumerate(rgs, start=1):
            groups.setdefault(label, []).append(i)
        return cls(len(rgs), tuple(tuple(g) for g in groups.values()))

    def __str__(self):
        return " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


@dataclass(frozen=True)
class ArcDiagram:
    n: int
    arcs: tuple[Arc, ...]
    enhanced: bool = False

    def __post_init__(self):
        arcs = tuple(sorted(self.arcs))
        lefts, rights = set(), set()
        for i, j in arcs:
            if not 1 <= i <= j <= self.n:
                raise ValueError(f"arc {(i, j)} outside [1..{self.n}]")
            if i == j:
                if not self.enhanced:
                    raise ValueError("loops are only allowed in enhanced diagrams")
                continue
            if i in lefts or j in rights:
                raise ValueError("a vertex starts or ends more than one arc")
            lefts.add(i)
            rights.add(j)
        if self.enhanced:
            touched = lefts | rights
            loops = [i for i, j in arcs if i == j]
            if sorted(loops) != [v for v in range(1, self.n + 1) if v not in touched]:
                raise ValueError("enhanced diagram needs exactly one loop per isolated vertex")
        object.__setattr__(self, "arcs", arcs)

    @property
    def proper_arcs(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a[0] != a[1])


# --------------------------------------------------------------------------
# generation


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n in lexicographic order."""
    a = [0] * n
    maxes = [0] * n  # maxes[i] = 1 + max(a[:i]) (number of blocks so far)
    if n == 0:
        yield []
        return
    for i in range(1, n):
        maxes[i] = 1
    while True:
        yield list(a)
        i = n - 1
        while i > 0 and a[i] == maxes[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        top = max(maxes[i], a[i] + 1)
        for j in range(i + 1, n):
            a[j] = 0
            maxes[j] = top


def enumerate_partitions(n: int, *, guard: int | None = None) -> Iterator[SetPartition]:
    """Every set partition of ``[n]`` exactly once, in RGS lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    check_guard("partitions", n, guard)
    for rgs in _restricted_growth_strings(n):
        yield SetPartition.from_rgs(rgs)


def enumerate_bisymmetric(n: int, *, guard: int | None = None) -> Iterator[SetPartition]:
    """Partitions fixed by ``i -> n+1-i``, generated directly.

    Elements are placed in mirror pairs ``(i, n+1-i)`` from the outside in;
    every block is either self-mirror or has a distinct partner block, so a
    placement choice determines where the mirror element goes.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_guard("partitions", n, guard)
    half = (n + 1) // 2
    blocks: list[list[int]] = []
    mirror: list[int] = []

    def place(i: int) -> Iterator[SetPartition]:
        if i > half:
            yield SetPartition(n, tuple(tuple(b) for b in blocks))
            return
        m = n + 1 - i
        for b in range(len(blocks)):
            if i == m and mirror[b] != b:
                continue
            blocks[b].append(i)
            if i != m:
                blocks[mirror[b]].append(m)
            yield from place(i + 1)
            if i != m:
                blocks[mirror[b]].pop()
            blocks[b].pop()
        # new self-mirror block
        blocks.append([i] if i == m else [i, m])
        mirror.append(len(blocks) - 1)
        yield from place(i + 1)
        blocks.pop()
        mirror.pop()
        # new pair of mirror blocks
        if i != m:
            k = len(blocks)
            blocks.extend([[i], [m]])
            mirror.extend([k + 1, k])
            yield from place(i + 1)
            del blocks[k:]
            del mirror[k:]

    yield from place(1)


def enumerate_matchings(two_n: int, noncross_k: int | None = None) -> Iterator[tuple[Arc, ...]]:
    """Perfect matchings of ``[two_n]`` as arc tuples.

    With ``noncross_k`` the backtracking refuses any arc that would complete a
    k-crossing; the result set is the same as filtering afterwards.
    """
    if two_n % 2:
        return
    free = list(range(1, two_n + 1))
    arcs: list[Arc] = []

    def rec() -> Iterator[tuple[Arc, ...]]:
        if not free:
            yield tuple(sorted(arcs))
            return
        i = free.pop(0)
        for idx in range(len(free)):
            j = free[idx]
            arc = (i, j)
            if noncross_k is None or not _k_crossing_chain(arcs + [arc], noncross_k, False):
                del free[idx]
                arcs.append(arc)
                yield from rec()
                arcs.pop()
                free.insert(idx, j)
        free.insert(0, i)

    yield from rec()


# --------------------------------------------------------------------------
# arcs, crossings, reflection


def arcs_of(p: SetPartition, enhanced: bool = False) -> ArcDiagram:
    arcs: list[Arc] = []
    for block in p.blocks:
        if len(block) == 1 and enhanced:
            arcs.append((block[0], block[0]))
        arcs.extend(zip(block, block[1:]))
    return ArcDiagram(p.n, tuple(arcs), enhanced)


def _longest_increasing(values: Sequence[int]) -> int:
    tails: list[int] = []
    for v in values:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def _k_crossing_chain(arcs: Sequence[Arc], k: int, enhanced: bool) -> bool:
    # Fix the arc with the smallest right end; the others must start strictly
    # after it, no later than its right end, end after it, and form a chain
    # increasing in both endpoints.
    arcs = sorted(arcs)
    for i1, j1 in arcs:
        if i1 == j1:
            continue
        js = [
            j
            for i, j in arcs
            if i1 < i and j > j1 and (i <= j1 if enhanced else i < j1)
        ]
        if 1 + _longest_increasing(js) >= k:
            return True
    return False


def _k_crossing_scan(arcs: Sequence[Arc], k: int, enhanced: bool) -> bool:
    for combo in combinations(sorted(arcs), k):
        lefts = [a[0] for a in combo]
        rights = [a[1] for a in combo]
        if any(lefts[t] >= lefts[t + 1] or rights[t] >= rights[t + 1] for t in range(k - 1)):
            continue
        if lefts[-1] < rights[0] or (enhanced and lefts[-1] == rights[0]):
            return True
    return False


def has_k_crossing(d: ArcDiagram, k: int, method: str = "chain") -> bool:
    """True iff ``d`` contains a (enhanced, if ``d.enhanced``) k-crossing.

    ``method="scan"`` tries every k-subset of arcs and is kept as a check on
    the default chain search.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if method == "chain":
        return _k_crossing_chain(d.arcs, k, d.enhanced)
    if method == "scan":
        return _k_crossing_scan(d.arcs, k, d.enhanced)
    raise ValueError(f"unknown method {method!r}")


def reflect(p: SetPartition) -> SetPartition:
    n = p.n
    return SetPartition(n, tuple(tuple(n + 1 - i for i in b) for b in p.blocks))


def is_bisymmetric(p: SetPartition) -> bool:
    return reflect(p) == p


# --------------------------------------------------------------------------
# counting


def _count_pruned(n: int, k: int | None, enhanced: bool) -> int:
    # RGS backtracking; an arc (last element of block, j) is final the moment
    # j joins the block, so a crossing among placed arcs can never disappear.
    # Loops never take part in an enhanced crossing (a loop (v, v) would need
    # v < i <= v somewhere in the pattern), so only proper arcs are tracked.
    last: list[int] = []
    arcs: list[Arc] = []
    count = 0

    def closes_crossing(new: Arc) -> bool:
        if k is None:
            return False
        i_new = new[0]
        js = [j for i, j in sorted(arcs) if i < i_new and (j >= i_new if enhanced else j > i_new)]
        return 1 + _longest_increasing(js) >= k

    def rec(j: int) -> None:
        nonlocal count
        if j > n:
            count += 1
            return
        for b in range(len(last)):
            arc = (last[b], j)
            if closes_crossing(arc):
                continue
            prev = last[b]
            arcs.append(arc)
            last[b] = j
            rec(j + 1)
            last[b] = prev
            arcs.pop()
        last.append(j)
        rec(j + 1)
        last.pop()

    rec(1)
    return count


def count_partitions(
    n: int,
    noncross_k: int | None = None,
    enhanced: bool = False,
    bisymmetric: bool = False,
    *,
    method: str = "fast",
    guard: int | None = None,
) -> int:
    """Number of partitions of ``[n]`` passing the requested filters.

    ``method="fast"`` generates bisymmetric partitions directly and prunes
    crossings during generation; ``method="filter"`` enumerates every
    partition and tests each one, which is slow but has no cleverness in it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_guard("partitions", n, guard)

    def keep(p: SetPartition) -> bool:
        if bisymmetric and not is_bisymmetric(p):
            return False
        if noncross_k is not None and has_k_crossing(arcs_of(p, enhanced), noncross_k):
            return False
        return True

    if method == "filter":
        return sum(1 for p in enumerate_partitions(n, guard=guard) if keep(p))
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    if bisymmetric:
        return sum(1 for p in enumerate_bisymmetric(n, guard=guard) if keep(p))
    return _count_pruned(n, noncross_k, enhanced)
