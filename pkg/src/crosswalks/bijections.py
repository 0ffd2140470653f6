"""Palindromic one-row tableaux and their 0-1 word encodings.

Tableaux whose shapes have at most one row are stored as the sequence of row
lengths.  Both kinds of palindromic tableau of length 2n are encoded as words
in W(n), the 0-1 words of length n in which no prefix has more 0's than 1's:

* ``theta`` reads an oscillating tableau: 1 for an added square, 0 for a
  removed one.
* ``eta`` reads a vacillating tableau: an odd step that stays or an even
  step that adds gives 1, an even step that stays or an odd step that
  removes gives 0.

Only the first half is read; the second half is the mirror image.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterator, Sequence

from .oracles import catalan
from .partitions import ArcDiagram, count_partitions, enumerate_matchings, has_k_crossing

OSCILLATING = "oscillating"
VACILLATING = "vacillating"


@dataclass(frozen=True)
class ZeroOneWord:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "ZeroOneWord":
        return cls(tuple(int(c) for c in text.strip()))

    @classmethod
    def coerce(cls, w) -> "ZeroOneWord":
        if isinstance(w, ZeroOneWord):
            return w
        if isinstance(w, str):
            return cls.parse(w)
        return cls(tuple(w))

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class HeightSequence:
    """Row lengths ``h_0, ..., h_m`` of a tableau whose shapes have one row."""

    kind: str
    heights: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(v) for v in self.heights)
        object.__setattr__(self, "heights", h)
        if self.kind not in (OSCILLATING, VACILLATING):
            raise ValueError(f"unknown tableau kind {self.kind!r}")
        if not h or h[0] != 0:
            raise ValueError("a tableau starts at the empty shape")
        if min(h) < 0:
            raise ValueError("row lengths are nonnegative")
        for i in range(1, len(h)):
            d = h[i] - h[i - 1]
            if self.kind == OSCILLATING:
                ok = d in (1, -1)
            elif i % 2:
                ok = d in (0, -1)
            else:
                ok = d in (0, 1)
            if not ok:
                raise ValueError(f"step {i} ({h[i - 1]} -> {h[i]}) is not a {self.kind} move")

    @property
    def length(self) -> int:
        return len(self.heights) - 1

    def is_palindromic(self) -> bool:
        return self.heights == self.heights[::-1]


def _palindromic_half(v: HeightSequence) -> tuple[int, ...]:
    if v.length % 2 or not v.is_palindromic():
        raise ValueError("expected a palindromic tableau of even length")
    return v.heights[: v.length // 2 + 1]


def _mirror(half: Sequence[int]) -> tuple[int, ...]:
    half = tuple(half)
    return half + half[-2::-1]


# --------------------------------------------------------------------------
# words


def odd_count(w, s: int) -> int:
    """Number of odd positions i (1-based) with w_i = s."""
    return sum(1 for i, b in enumerate(ZeroOneWord.coerce(w).bits, 1) if i % 2 and b == s)


def even_count(w, s: int) -> int:
    """Number of even positions i (1-based) with w_i = s."""
    return sum(1 for i, b in enumerate(ZeroOneWord.coerce(w).bits, 1) if not i % 2 and b == s)


def in_W(w) -> bool:
    """No prefix of ``w`` has more 0's than 1's."""
    bal = 0
    for b in ZeroOneWord.coerce(w).bits:
        bal += 1 if b else -1
        if bal < 0:
            return False
    return True


def _parity_condition(w: ZeroOneWord) -> bool:
    """Every prefix has at least as many even-position 1's as odd-position 0's."""
    ones_even = zeros_odd = 0
    for i, b in enumerate(w.bits, 1):
        if i % 2 == 0 and b == 1:
            ones_even += 1
        elif i % 2 == 1 and b == 0:
            zeros_odd += 1
        if ones_even < zeros_odd:
            return False
    return True


def lemma_word_equiv(w) -> bool:
    """True iff the two prefix conditions agree on every prefix of ``w``."""
    w = ZeroOneWord.coerce(w)
    for m in range(len(w) + 1):
        prefix = ZeroOneWord(w.bits[:m])
        if in_W(prefix) != _parity_condition(prefix):
            return False
    return True


def words_W(n: int) -> Iterator[ZeroOneWord]:
    """All of W(n), in lexicographic order, by filtering every 0-1 word."""
    for bits in product((0, 1), repeat=n):
        w = ZeroOneWord(bits)
        if in_W(w):
            yield w


def dyck_words(n: int) -> Iterator[ZeroOneWord]:
    """Words of W(2n) with exactly n ones."""
    for w in words_W(2 * n):
        if sum(w.bits) == n:
            yield w


# --------------------------------------------------------------------------
# tableaux


def palindromic_tableaux(kind: str, n: int) -> Iterator[HeightSequence]:
    """Every palindromic one-row tableau of length 2n.

    The first half is generated move by move and then mirrored; the
    resulting sequence goes through the full validation of HeightSequence.
    """
    if kind == OSCILLATING:
        moves = lambda i: (1, -1)
    elif kind == VACILLATING:
        moves = lambda i: (0, -1) if i % 2 else (0, 1)
    else:
        raise ValueError(f"unknown tableau kind {kind!r}")

    def grow(half):
        i = len(half)
        if i == n + 1:
            yield HeightSequence(kind, _mirror(half))
            return
        for d in moves(i):
            h = half[-1] + d
            if h >= 0:
                yield from grow(half + [h])

    yield from grow([0])


def theta(o: HeightSequence) -> ZeroOneWord:
    """Oscillating tableau to word: 1 for an added square, 0 for a removed one."""
    if o.kind != OSCILLATING:
        raise ValueError("theta takes an oscillating tableau")
    half = _palindromic_half(o)
    return ZeroOneWord(tuple(int(b > a) for a, b in zip(half, half[1:])))


def theta_inv(w) -> HeightSequence:
    w = ZeroOneWord.coerce(w)
    if not in_W(w):
        raise ValueError(f"{w} is not in W({len(w)})")
    half = [0]
    for b in w.bits:
        half.append(half[-1] + (1 if b else -1))
    return HeightSequence(OSCILLATING, _mirror(half))


def eta(v: HeightSequence) -> ZeroOneWord:
    """Vacillating tableau to word by the four step types."""
    if v.kind != VACILLATING:
        raise ValueError("eta takes a vacillating tableau")
    half = _palindromic_half(v)
    bits = []
    for i in range(1, len(half)):
        stay = half[i] == half[i - 1]
        bits.append(int(stay) if i % 2 else int(not stay))
    return ZeroOneWord(tuple(bits))


def eta_inv(w) -> HeightSequence:
    w = ZeroOneWord.coerce(w)
    if not in_W(w):
        raise ValueError(f"{w} is not in W({len(w)})")
    half = [0]
    for i, b in enumerate(w.bits, 1):
        if i % 2:
            half.append(half[-1] - (1 - b))
        else:
            half.append(half[-1] + b)
    return HeightSequence(VACILLATING, _mirror(half))


def check_bijection(kind: str, n: int) -> bool:
    """Exhaustive check that the encoding of ``kind`` maps onto W(n) bijectively."""
    enc, dec = (theta, theta_inv) if kind == OSCILLATING else (eta, eta_inv)
    tableaux = list(palindromic_tableaux(kind, n))
    images = [enc(t) for t in tableaux]
    words = set(words_W(n))
    if len(set(images)) != len(images) or set(images) != words:
        return False
    if any(dec(w) != t for w, t in zip(images, tableaux)):
        return False
    return all(enc(dec(w)) == w for w in words) and len(words) == comb(n, n // 2)


# --------------------------------------------------------------------------
# Dyck restriction


def noncrossing_matchings(n: int, pruned: bool = True) -> int:
    """Noncrossing perfect matchings of [2n].

    By default crossings are pruned during generation; ``pruned=False``
    filters every matching instead.
    """
    if pruned:
        return sum(1 for _ in enumerate_matchings(2 * n, noncross_k=2))
    return sum(
        1 for arcs in enumerate_matchings(2 * n) if not has_k_crossing(ArcDiagram(2 * n, arcs), 2)
    )


def dyck_corollary(n: int) -> bool:
    """Dyck words of length 2n, noncrossing matchings of [2n] and noncrossing
    partitions of [n] are equinumerous with Catalan(n), and inside W(2n) the
    Dyck words are exactly those with even(w,1) = odd(w,0)."""
    if n > 10:
        raise ValueError("dyck_corollary is exhaustive; keep n <= 10")
    dyck = set(dyck_words(n))
    by_parity = {w for w in words_W(2 * n) if even_count(w, 1) == odd_count(w, 0)}
    counts = {len(dyck), noncrossing_matchings(n), count_partitions(n, noncross_k=2), catalan(n)}
    return dyck == by_parity and len(counts) == 1


# the worked example: a palindromic oscillating tableau of length 14 and the
# vacillating tableau printed next to it
EXAMPLE_OSCILLATING = (0, 1, 2, 1, 2, 1, 0, 1, 0, 1, 2, 1, 2, 1, 0)
EXAMPLE_VACILLATING = (0, 0, 1, 0, 1, 1, 2, 1, 2, 1, 1, 0, 1, 0, 0)
EXAMPLE_WORD = "1101001"


def worked_example() -> dict[str, str]:
    o = HeightSequence(OSCILLATING, EXAMPLE_OSCILLATING)
    v = HeightSequence(VACILLATING, EXAMPLE_VACILLATING)
    w = theta(o)
    return {
        "O": ",".join(map(str, o.heights)),
        "theta(O)": str(w),
        "V (printed)": ",".join(map(str, v.heights)),
        "eta(V printed)": str(eta(v)),
        "eta_inv(theta(O))": ",".join(map(str, eta_inv(w).heights)),
    }
