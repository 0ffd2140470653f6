"""P-recurrences, linear ODEs with polynomial coefficients, guessing, asymptotics.

A :class:`PRecurrence` with coefficient polynomials ``p_0 .. p_r`` asserts

    p_0(n) a(n) + p_1(n) a(n+1) + ... + p_r(n) a(n+r) = 0      for n >= offset,

and a :class:`LinearODE` with coefficients ``c_0 .. c_m`` and inhomogeneous
part ``q`` asserts ``q(t) + sum_k c_k(t) f^(k)(t) = 0``.  Polynomials are
coefficient lists, lowest degree first.  All checks are exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    IntegralityError,
    SingularIndexError,
    UnderdeterminedError,
    VerificationError,
)
from .linalg import nullspace

Poly = tuple[Fraction, ...]


def _poly(cs: Iterable) -> Poly:
    out = [Fraction(c) for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def peval(p: Sequence[Fraction], n) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * n + c
    return acc


def _pstr(p: Sequence[Fraction], var: str) -> str:
    terms = []
    for d, c in enumerate(p):
        if not c:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        coef = str(c) if (not mono or abs(c) != 1) else ("-" if c < 0 else "")
        terms.append(coef + ("*" if mono and coef not in ("", "-") else "") + mono)
    return "(" + (" + ".join(terms).replace("+ -", "- ") or "0") + ")"


def _as_ints(p: Sequence[Fraction]) -> list[int] | None:
    if all(c.denominator == 1 for c in p):
        return [int(c) for c in p]
    return None


# --------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class PRecurrence:
    coeffs: tuple[Poly, ...]
    offset: int = 0

    def __post_init__(self):
        cs = tuple(_poly(p) for p in self.coeffs)
        if len(cs) < 2:
            raise ValueError("a recurrence needs at least two coefficient polynomials")
        if not cs[-1]:
            raise ValueError("leading coefficient polynomial is identically zero")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def make(cls, coeffs: Sequence[Sequence], offset: int = 0) -> "PRecurrence":
        return cls(tuple(_poly(p) for p in coeffs), offset)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(len(p) for p in self.coeffs) - 1

    def apply(self, seq: Sequence, n: int) -> Fraction:
        """``sum_i p_i(n) seq[n+i]``."""
        return sum((peval(p, n) * seq[n + i] for i, p in enumerate(self.coeffs)), Fraction(0))

    def flat(self) -> list[Fraction]:
        """Coefficients as one vector, p_0 first, each padded to the common degree."""
        d = self.degree
        out = []
        for p in self.coeffs:
            out.extend(list(p) + [Fraction(0)] * (d + 1 - len(p)))
        return out

    def normalized(self) -> "PRecurrence":
        """Integer coefficients with content 1 and positive top coefficient of p_r."""
        vec = self.flat()
        den = math.lcm(*(c.denominator for c in vec))
        ints = [int(c * den) for c in vec]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        lead = next(c for c in reversed(self.coeffs[-1]) if c)
        sign = 1 if lead > 0 else -1
        d = self.degree + 1
        cs = [[Fraction(sign * v // g) for v in ints[i * d : (i + 1) * d]] for i in range(self.order + 1)]
        return PRecurrence.make(cs, self.offset)

    def equivalent(self, other: "PRecurrence") -> bool:
        """Equal up to a nonzero scalar."""
        a, b = self.normalized(), other.normalized()
        return a.coeffs == b.coeffs

    def __str__(self):
        parts = [f"{_pstr(p, 'n')}*a(n{'+' + str(i) if i else ''})" for i, p in enumerate(self.coeffs)]
        return " + ".join(parts) + " = 0"


def extend(rec: PRecurrence, initial: Sequence, count: int, integral: bool = True) -> list:
    """Extend ``initial`` forward to ``count`` terms.

    Terms are solved for at indices ``n + r`` with ``n >= rec.offset``; the
    leading coefficient is checked at every index, and with ``integral`` every
    new value must be an integer.
    """
    r = rec.order
    if len(initial) < r + rec.offset:
        raise ValueError(f"need at least {r + rec.offset} initial values")
    seq: list = [Fraction(v) for v in initial]
    ints = [_as_ints(p) for p in rec.coeffs]
    use_int = integral and all(p is not None for p in ints) and all(v.denominator == 1 for v in seq)
    if use_int:
        seq = [int(v) for v in seq]
    n = len(seq) - r
    while len(seq) < count:
        if use_int:
            lead = sum(c * n**d for d, c in enumerate(ints[r]))
            if lead == 0:
                raise SingularIndexError(f"leading coefficient vanishes at n={n}", index=n + r)
            acc = 0
            for i in range(r):
                acc += sum(c * n**d for d, c in enumerate(ints[i])) * seq[n + i]
            q, rem = divmod(-acc, lead)
            if rem:
                raise IntegralityError(f"term {n + r} is {Fraction(-acc, lead)}, not an integer")
            seq.append(q)
        else:
            lead = peval(rec.coeffs[r], n)
            if lead == 0:
                raise SingularIndexError(f"leading coefficient vanishes at n={n}", index=n + r)
            acc = sum((peval(rec.coeffs[i], n) * seq[n + i] for i in range(r)), Fraction(0))
            val = -acc / lead
            if integral and val.denominator != 1:
                raise IntegralityError(f"term {n + r} is {val}, not an integer")
            seq.append(val)
        n += 1
    return seq[:count]


def verify_rec(rec: PRecurrence, seq: Sequence) -> int:
    """Check the recurrence at every applicable n; return the last index covered.

    Raises VerificationError whose ``index`` is the first failing n.
    """
    r = rec.order
    if len(seq) <= r:
        raise ValueError("sequence shorter than the recurrence order")
    for n in range(rec.offset, len(seq) - r):
        if rec.apply(seq, n) != 0:
            raise VerificationError(f"recurrence fails at n={n}", index=n)
    return len(seq) - 1


def guess_rec(
    seq: Sequence, max_order: int, max_degree: int, margin: int = 5
) -> PRecurrence | None:
    """Smallest-order, then smallest-degree recurrence annihilating all of ``seq``.

    The ansatz ``sum_{i<=r, d<=D} c_{i,d} n^d a(n+i) = 0`` is solved exactly
    over every available n, so the answer holds on all supplied terms.
    Among several solutions of the same (order, degree) the one with the lowest
    actual degree, then the lexicographically smallest coefficient vector, wins.
    """
    need = (max_order + 1) * (max_degree + 1) + max_order + margin
    if len(seq) < need:
        raise UnderdeterminedError(f"need at least {need} terms, got {len(seq)}")
    seq = [Fraction(v) for v in seq]
    for r in range(1, max_order + 1):
        for D in range(max_degree + 1):
            rows = []
            for n in range(len(seq) - r):
                rows.append([n**d * seq[n + i] for i in range(r + 1) for d in range(D + 1)])
            if len(rows) < (r + 1) * (D + 1) + margin:
                continue
            sols = nullspace(rows)
            cands = []
            for vec in sols:
                coeffs = [vec[i * (D + 1) : (i + 1) * (D + 1)] for i in range(r + 1)]
                if not any(coeffs[-1]) or not any(coeffs[0]):
                    continue
                rec = PRecurrence.make(coeffs).normalized()
                cands.append((rec.degree, [int(c) for c in rec.flat()], rec))
            if cands:
                cands.sort(key=lambda c: (c[0], c[1]))
                return cands[0][2]
    return None


# --------------------------------------------------------------------------
# differential equations


@dataclass(frozen=True)
class LinearODE:
    coeffs: tuple[Poly, ...]
    inhom: Poly = ()

    def __post_init__(self):
        cs = tuple(_poly(p) for p in self.coeffs)
        if not cs or not cs[-1]:
            raise ValueError("leading coefficient is identically zero")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "inhom", _poly(self.inhom))

    @classmethod
    def make(cls, coeffs: Sequence[Sequence], inhom: Sequence = ()) -> "LinearODE":
        return cls(tuple(_poly(p) for p in coeffs), _poly(inhom))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def reach(self) -> int:
        """How far past n the t^n equation looks: max over k of k - lowdeg(c_k)."""
        out = 0
        for k, p in enumerate(self.coeffs):
            low = next((j for j, c in enumerate(p) if c), None)
            if low is not None:
                out = max(out, k - low)
        return out

    def _term(self, f: Sequence, n: int, skip: int | None = None) -> Fraction:
        """Coefficient of t^n in q + sum c_k f^(k), leaving out f[skip]."""
        acc = self.inhom[n] if n < len(self.inhom) else Fraction(0)
        for k, p in enumerate(self.coeffs):
            for j, c in enumerate(p):
                if not c or j > n:
                    continue
                m = n - j + k  # index of f feeding t^n through t^j * f^(k)
                if m == skip:
                    continue
                ff = 1
                for s in range(k):
                    ff *= m - s
                acc += c * ff * f[m]
        return acc

    def _lead(self, n: int) -> Fraction:
        """Coefficient of f[n + reach] in the t^n equation."""
        m = n + self.reach
        acc = Fraction(0)
        for k, p in enumerate(self.coeffs):
            j = n - m + k
            if 0 <= j < len(p):
                ff = 1
                for s in range(k):
                    ff *= m - s
                acc += p[j] * ff
        return acc

    def residuals(self, f: Sequence) -> list[Fraction]:
        """Residual coefficients for every t^n fully determined by ``f``."""
        f = [Fraction(v) for v in f]
        return [self._term(f, n) for n in range(len(f) - self.reach)]

    def first_failure(self, f: Sequence) -> int | None:
        for n, v in enumerate(self.residuals(f)):
            if v:
                return n
        return None

    def series_solution(self, initial: Sequence, count: int) -> list[Fraction]:
        """Coefficients of the power-series solution with the given initial terms.

        The t^n equation fixes ``f[n + reach]``; where the initial data already
        contains that term the equation is checked instead.
        """
        f = [Fraction(v) for v in initial]
        n = 0
        while len(f) < count or n + self.reach < len(f):
            m = n + self.reach
            if m < len(f):
                if self._term(f + [Fraction(0)] * (m + 1 - len(f)), n) != 0:
                    raise VerificationError(f"initial values violate the ODE at t^{n}", index=n)
            else:
                lead = self._lead(n)
                if lead == 0:
                    raise SingularIndexError(f"ODE cannot determine term {m}", index=m)
                f.append(-self._term(f + [Fraction(0)], n, skip=m) / lead)
            n += 1
            if len(f) >= count and n + self.reach >= len(f):
                break
        return f[:count]

    def __str__(self):
        names = ["f", "f'", "f''"] + [f"f^({k})" for k in range(3, self.order + 1)]
        parts = ([_pstr(self.inhom, "t")] if self.inhom else []) + [
            f"{_pstr(p, 't')}*{names[k]}" for k, p in enumerate(self.coeffs)
        ]
        return " + ".join(parts) + " = 0"


def _coefficients(series) -> list[Fraction]:
    if hasattr(series, "coefficients"):
        return series.coefficients(0)
    return [Fraction(v) for v in series]


def verify_ode(ode: LinearODE, series) -> bool:
    """True iff the ODE residual vanishes at every t-power the series determines.

    ``series`` is an x-free TruncSeries or a list of coefficients; it needs at
    least ``order + 3`` terms.
    """
    f = _coefficients(series)
    if len(f) < ode.order + 3:
        raise ValueError("series too short for this ODE")
    return ode.first_failure(f) is None


def rec_ode_consistency(
    rec: PRecurrence, ode: LinearODE, initial: Sequence, terms: int = 50
) -> bool:
    """Extend by the recurrence and solve the ODE from the same initial terms; compare."""
    a = extend(rec, initial, terms, integral=False)
    b = ode.series_solution(list(initial)[: max(ode.reach, 1)], terms)
    for n, (u, v) in enumerate(zip(a, b)):
        if Fraction(u) != v:
            raise VerificationError(f"recurrence and ODE disagree at term {n}", index=n)
    return True


# --------------------------------------------------------------------------
# asymptotics


@dataclass(frozen=True)
class AsymptoticFit:
    """Estimates for ``a(n) ~ kappa * rho^n / n^alpha``."""

    rho: float
    alpha: float
    alpha_used: float
    kappa: float
    alpha_spread: float
    kappa_spread: float
    n: int

    def __str__(self):
        return (
            f"rho={self.rho:.6f} alpha={self.alpha:.4f} (+-{self.alpha_spread:.2g}, using {self.alpha_used:g}) "
            f"kappa={self.kappa:.4f} (+-{self.kappa_spread:.2g}) at n={self.n}"
        )


def _log(v) -> float:
    v = Fraction(v)
    return math.log(v.numerator) - math.log(v.denominator)


def _richardson(f, n1: int, n2: int) -> float:
    """Remove a c/n error term from two samples."""
    return (n2 * f(n2) - n1 * f(n1)) / (n2 - n1)


def asymptotic_fit(seq: Sequence, growth_base: float, min_length: int = 200) -> AsymptoticFit:
    """Fit ``kappa * rho^n / n^alpha`` to the tail of ``seq``.

    The ratio a(n+1)/a(n) = rho (1 - alpha/n + ...) gives rho and, with the
    supplied growth base, alpha; both are improved by one Richardson step
    between n = M/2 and n = M.  Alpha is snapped to the nearest half-integer
    when within 0.05 before kappa is extrapolated the same way.  Spreads
    compare the extrapolations at (M/4, M/2) and (M/2, M).
    """
    if len(seq) < min_length:
        raise ValueError(f"need at least {min_length} terms")
    if any(Fraction(v) <= 0 for v in seq):
        raise ValueError("asymptotic fit needs positive terms")
    logs = [_log(v) for v in seq]
    M = len(seq) - 2
    log_rho = math.log(growth_base)

    def ratio(n):
        return math.exp(logs[n + 1] - logs[n])

    def alpha_n(n):
        return (log_rho - (logs[n + 1] - logs[n])) / math.log1p(1 / n)

    rho = _richardson(ratio, M // 2, M)
    alpha = _richardson(alpha_n, M // 2, M)
    alpha_prev = _richardson(alpha_n, M // 4, M // 2)
    half = round(alpha * 2) / 2
    alpha_used = half if abs(alpha - half) < 0.05 else alpha

    def kappa_n(n):
        return math.exp(logs[n] + alpha_used * math.log(n) - n * log_rho)

    kappa = _richardson(kappa_n, M // 2, M)
    kappa_prev = _richardson(kappa_n, M // 4, M // 2)
    return AsymptoticFit(
        rho, alpha, alpha_used, kappa, abs(alpha - alpha_prev), abs(kappa - kappa_prev), M
    )


# --------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class SequenceSource:
    """Which walk count a catalog entry is about."""

    flavor: str
    endset: str
    parity: str  # "even" or "odd" single-step lengths

    def dp_terms(self, count: int) -> list[int]:
        from .walks import EndSet, sequence

        return sequence(self.flavor, EndSet.parse(self.endset), count, parity=self.parity)

    def series_endset(self):
        """End set whose constant-term series has these terms as coefficients."""
        from .walks import ODD_REDUCTIONS, EndSet

        A = EndSet.parse(self.endset)
        if self.parity == "odd":
            key = self.endset.strip()
            if key not in ODD_REDUCTIONS:
                raise ValueError(f"no odd-length reduction for {self.endset}")
            A = ODD_REDUCTIONS[key][1]
        return A

    def series_terms(self, N: int) -> list[Fraction]:
        from .series import eval_CA, eval_EA, t_coefficients

        fn = eval_CA if self.flavor == "vacillating" else eval_EA
        return t_coefficients(fn(self.series_endset(), N))


@dataclass(frozen=True)
class RecurrenceEntry:
    name: str
    anchor: str
    rec: PRecurrence
    initial: tuple[int, ...]
    source: SequenceSource


@dataclass(frozen=True)
class ODEEntry:
    name: str
    anchor: str
    ode: LinearODE
    source: SequenceSource
    recurrence: str | None = None


@dataclass
class Catalog:
    recurrences: dict[str, RecurrenceEntry] = field(default_factory=dict)
    odes: dict[str, ODEEntry] = field(default_factory=dict)


def _int_list(p: Poly) -> list:
    return [int(c) if c.denominator == 1 else str(c) for c in p]


def _src_json(s: SequenceSource) -> dict:
    return {"flavor": s.flavor, "endset": s.endset, "parity": s.parity}


def catalog_to_json(cat: Catalog) -> str:
    data = {
        "format": 1,
        "recurrences": [
            {
                "name": e.name,
                "anchor": e.anchor,
                "coeffs": [_int_list(p) for p in e.rec.coeffs],
                "offset": e.rec.offset,
                "initial": list(e.initial),
                "sequence": _src_json(e.source),
            }
            for e in cat.recurrences.values()
        ],
        "odes": [
            {
                "name": e.name,
                "anchor": e.anchor,
                "coeffs": [_int_list(p) for p in e.ode.coeffs],
                "inhom": _int_list(e.ode.inhom),
                "sequence": _src_json(e.source),
                "recurrence": e.recurrence,
            }
            for e in cat.odes.values()
        ],
    }
    return json.dumps(data, indent=1) + "\n"


def catalog_from_json(text: str) -> Catalog:
    data = json.loads(text)
    if data.get("format") != 1:
        raise ValueError("unsupported catalog format")
    cat = Catalog()
    for r in data["recurrences"]:
        cat.recurrences[r["name"]] = RecurrenceEntry(
            r["name"],
            r["anchor"],
            PRecurrence.make([[Fraction(c) for c in p] for p in r["coeffs"]], r.get("offset", 0)),
            tuple(int(v) for v in r["initial"]),
            SequenceSource(**r["sequence"]),
        )
    for o in data["odes"]:
        cat.odes[o["name"]] = ODEEntry(
            o["name"],
            o["anchor"],
            LinearODE.make([[Fraction(c) for c in p] for p in o["coeffs"]], [Fraction(c) for c in o["inhom"]]),
            SequenceSource(**o["sequence"]),
            o.get("recurrence"),
        )
    return cat


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Read the shipped catalog, or another file in the same format."""
    if path is None:
        text = resources.files("crosswalks").joinpath("data/catalog.json").read_text()
    else:
        text = Path(path).read_text()
    return catalog_from_json(text)


# rows of the two walk tables: (flavor, end set, parity, growth base, exponent)
TABLE_ROWS = {
    "vac-A1": ("vacillating", "A1", "even", 9, 7),
    "vac-A2": ("vacillating", "A2", "even", 9, 3),
    "vac-A2-odd": ("vacillating", "A2", "odd", 9, 3),
    "vac-A3": ("vacillating", "A3", "even", 9, 4),
    "vac-A4": ("vacillating", "A4", "even", 9, 4),
    "hes-A1": ("hesitating", "A1", "even", 8, 7),
    "hes-A2": ("hesitating", "A2", "even", 8, 3),
    "hes-A2-odd": ("hesitating", "2*A2 - A4", "even", 8, 3),
    "hes-A3": ("hesitating", "A3", "even", 8, 4),
}


def row_asymptotics(row: str, n_max: int = 2000, seed_terms: int = 70) -> tuple[PRecurrence, AsymptoticFit]:
    """Guess a recurrence from walk counts, extend to ``n_max`` and fit the tail."""
    flavor, endset, parity, rho, _ = TABLE_ROWS[row]
    src = SequenceSource(flavor, endset, parity)
    seed = src.dp_terms(seed_terms)
    rec = guess_rec(seed, 4, 4)
    if rec is None:
        raise VerificationError(f"no recurrence found for {row}", index=seed_terms)
    seq = extend(rec, seed, n_max + 1)
    return rec, asymptotic_fit(seq, rho)
