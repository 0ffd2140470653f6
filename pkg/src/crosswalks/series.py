"""Truncated power series in t whose coefficients are Laurent polynomials in x.

A :class:`TruncSeries` keeps ``N`` rows (the coefficients of t^0 .. t^(N-1))
inside a fixed x-degree window ``[lo, hi]``.  All rows are packed into one
univariate rational polynomial (Kronecker substitution with stride
``2W - 1``, ``W = hi - lo + 1``) so that a product of two series is a single
FLINT multiplication.  After each product the padding slots are inspected:
anything landing there is an x-exponent outside the window, which raises
:class:`WindowOverflowError` unless truncation was asked for.

Every quantity is exact.  Only ``1/(1-x)`` and ``1/(1+x)`` have no t-adic
expansion; they are never formed as series and are instead passed to
:func:`ct_x` as a ``pole``, where ``CT_x T/g(x)`` is computed exactly from
the power series of ``1/g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Mapping, Sequence

import flint

from .errors import VerificationError, WindowOverflowError

Number = int | Fraction


# --------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Laurent polynomial in x with Fraction coefficients (sparse, immutable)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        self._c = {int(e): Fraction(v) for e, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, e: int = 1, c: Number = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def coerce(cls, v) -> "LaurentPoly":
        if isinstance(v, LaurentPoly):
            return v
        return cls({0: v})

    @property
    def lo(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def hi(self) -> int | None:
        return max(self._c) if self._c else None

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def ct(self) -> Fraction:
        return self.coeff(0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.coerce(other)
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return NotImplemented
        other = LaurentPoly.coerce(other)
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent-polynomial inverses")
            ((e, v),) = self._c.items()
            return LaurentPoly({e * k: v**k})
        out = LaurentPoly({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * v for e, v in self._c.items()})

    def reflect(self) -> "LaurentPoly":
        """Substitute x -> 1/x."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        return sum((v * x**e for e, v in self._c.items()), Fraction(0))

    def __repr__(self):
        return f"LaurentPoly({dict(self.items())})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            coef = str(v) if (mono == "" or abs(v) != 1) else ("-" if v < 0 else "")
            if mono and coef not in ("", "-"):
                coef += "*"
            parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


X = LaurentPoly.monomial(1)
ONE = LaurentPoly({0: 1})
U = X**-1 + 2 + X  # x^{-1}(1+x)^2


def series_inverse_coeffs(g: LaurentPoly, length: int) -> list[Fraction]:
    """First ``length`` power-series coefficients of ``1/g(x)``; needs g(0) != 0."""
    if g.lo is None or g.lo < 0 or g.coeff(0) == 0:
        raise ValueError("pole polynomial must be a polynomial with nonzero constant term")
    g0 = g.coeff(0)
    h: list[Fraction] = []
    for m in range(length):
        acc = Fraction(1 if m == 0 else 0)
        for e, v in g._c.items():
            if 1 <= e <= m:
                acc -= v * h[m - e]
        h.append(acc / g0)
    return h


# --------------------------------------------------------------------------
# truncated series


def default_window(N: int) -> tuple[int, int]:
    """x-window wide enough for every formula evaluated at order N.

    Row n of ``(x^{-2} Y)^m`` reaches x^{-2n}, and the catalog formulas add a
    few more factors of x^{+-1}, so the window grows like 2N on both sides.
    """
    return (-(2 * N + 8), 2 * N + 8)


def _fmpq(v: Number) -> flint.fmpq:
    v = Fraction(v)
    return flint.fmpq(v.numerator, v.denominator)


class TruncSeries:
    """Power series in t truncated mod t^N, Laurent-polynomial rows in x."""

    __slots__ = ("N", "lo", "hi", "_p")

    def __init__(self, N: int, window: tuple[int, int], poly: flint.fmpq_poly | None = None):
        lo, hi = window
        if not lo <= 0 <= hi:
            raise ValueError("window must contain 0")
        if N < 0:
            raise ValueError("order must be nonnegative")
        self.N, self.lo, self.hi = N, lo, hi
        self._p = flint.fmpq_poly() if poly is None else poly

    # layout -------------------------------------------------------------
    @property
    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def W(self) -> int:
        return self.hi - self.lo + 1

    @property
    def S(self) -> int:
        return 2 * self.W - 1

    def _numer_list(self) -> list:
        return self._p.numer().coeffs()

    def entries(self) -> Iterable[tuple[int, int, Fraction]]:
        """Nonzero ``(t_exp, x_exp, coefficient)`` triples in layout order."""
        den = int(self._p.denom())
        S, lo = self.S, self.lo
        for pos, c in enumerate(self._numer_list()):
            if c:
                n, off = divmod(pos, S)
                yield n, off + lo, Fraction(int(c), den)

    @classmethod
    def from_entries(
        cls, N: int, window: tuple[int, int], entries: Iterable[tuple[int, int, Number]]
    ) -> "TruncSeries":
        out = cls(N, window)
        lo, hi = window
        S = out.S
        vals: dict[int, Fraction] = {}
        for n, e, v in entries:
            if not 0 <= n < N or not v:
                continue
            if not lo <= e <= hi:
                raise WindowOverflowError(f"x^{e} at t^{n} outside window {window}")
            pos = n * S + e - lo
            vals[pos] = vals.get(pos, 0) + Fraction(v)
        if not vals:
            return out
        den = lcm(*(v.denominator for v in vals.values()))
        coeffs = [0] * (max(vals) + 1)
        for pos, v in vals.items():
            coeffs[pos] = v.numerator * (den // v.denominator)
        out._p = flint.fmpq_poly(coeffs, den)
        return out

    @classmethod
    def from_rows(cls, rows: Sequence, N: int, window: tuple[int, int]) -> "TruncSeries":
        entries = []
        for n, r in enumerate(rows):
            for e, v in LaurentPoly.coerce(r).items():
                entries.append((n, e, v))
        return cls.from_entries(N, window, entries)

    @classmethod
    def constant(cls, c, N: int, window: tuple[int, int]) -> "TruncSeries":
        return cls.from_rows([c], N, window)

    @classmethod
    def t_power(cls, k: int, N: int, window: tuple[int, int]) -> "TruncSeries":
        return cls.from_entries(N, window, [(k, 0, 1)])

    def like(self, c) -> "TruncSeries":
        """A constant (in t) series with this order and window."""
        return TruncSeries.constant(c, self.N, self.window)

    def row(self, n: int) -> LaurentPoly:
        if not 0 <= n < self.N:
            raise IndexError(n)
        out = {}
        for m, e, v in self.entries():
            if m == n:
                out[e] = v
        return LaurentPoly(out)

    def rows(self) -> list[LaurentPoly]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.N)]
        for n, e, v in self.entries():
            out[n][e] = v
        return [LaurentPoly(r) for r in out]

    __getitem__ = row

    def coefficients(self, e: int = 0) -> list[Fraction]:
        """The x^e coefficient of every row."""
        out = [Fraction(0)] * self.N
        for n, ex, v in self.entries():
            if ex == e:
                out[n] = v
        return out

    def valuation(self) -> int | None:
        """Smallest t-exponent with a nonzero row, or None for zero."""
        for n, _, _ in self.entries():
            return n
        return None

    def is_zero(self) -> bool:
        return self._p.is_zero()

    # reshaping ----------------------------------------------------------
    def with_window(self, window: tuple[int, int]) -> "TruncSeries":
        if window == self.window:
            return self
        return TruncSeries.from_entries(self.N, window, self.entries())

    def truncated(self, N: int) -> "TruncSeries":
        """Same series, known only mod t^N (N may exceed self.N: zero-padded)."""
        out = TruncSeries(N, self.window)
        out._p = self._p.truncate(N * self.S) if N < self.N else self._p
        return out

    def _align(self, other: "TruncSeries") -> tuple["TruncSeries", "TruncSeries"]:
        N = min(self.N, other.N)
        if self.window != other.window:
            w = (min(self.lo, other.lo), max(self.hi, other.hi))
            a, b = self.with_window(w), other.with_window(w)
        else:
            a, b = self, other
        if a.N != N:
            a = a.truncated(N)
        if b.N != N:
            b = b.truncated(N)
        return a, b

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.like(other)
        raise TypeError(f"cannot combine TruncSeries with {type(other).__name__}")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        a, b = self._align(self._coerce(other))
        return TruncSeries(a.N, a.window, a._p + b._p)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.N, self.window, -self._p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: Number) -> "TruncSeries":
        return TruncSeries(self.N, self.window, self._p * _fmpq(c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.mul(self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.like(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul(self, other: "TruncSeries", truncate: bool = False) -> "TruncSeries":
        """Product mod t^N.

        Product terms whose x-exponent leaves the window raise
        :class:`WindowOverflowError`; with ``truncate=True`` they are dropped.
        """
        a, b = self._align(other)
        N, lo, W, S = a.N, a.lo, a.W, a.S
        out = TruncSeries(N, a.window)
        if a._p.is_zero() or b._p.is_zero() or N == 0:
            return out
        # In the raw product, row n holds exponent e at n*S + (e - lo) - lo.
        raw = a._p.mul_low(b._p, N * S - lo)
        num = raw.numer().coeffs()
        den = raw.denom()
        shift = -lo
        if any(num[:shift]) and not truncate:
            bad = next(i for i in range(shift) if num[i])
            raise WindowOverflowError(f"x^{bad + 2 * lo} at t^0 below window {a.window}")
        num = num[shift:]
        dirty = False
        for n in range(N):
            start, stop = n * S + W, min((n + 1) * S, len(num))
            if start >= len(num):
                break
            seg = num[start:stop]
            if not any(seg):
                continue
            # Overflow of row n sits at offsets W .. W+hi-1; anything past
            # that is underflow belonging to row n+1.
            for k, c in enumerate(seg):
                if not c or truncate:
                    continue
                off = W + k
                if off < W + a.hi:
                    where, expo = n, off + lo
                else:
                    where, expo = n + 1, off - S + lo
                if where < N:
                    raise WindowOverflowError(f"x^{expo} at t^{where} outside window {a.window}")
            num[start:stop] = [0] * (stop - start)
            dirty = True
        if dirty:
            out._p = flint.fmpq_poly([int(c) for c in num], den) if num else flint.fmpq_poly()
        else:
            out._p = raw.right_shift(shift) if shift else raw
        return out

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the t^0 row must be a monomial c*x^j."""
        r0 = self.row(0) if self.N else LaurentPoly()
        if len(r0.items()) != 1:
            raise ValueError(f"t^0 coefficient {r0} is not a monomial; no t-adic inverse")
        z = TruncSeries.constant(r0**-1, 1, self.window)
        prec = 1
        while prec < self.N:
            prec = min(2 * prec, self.N)
            a = self.truncated(prec)
            z = z.truncated(prec)
            z = z + z * (1 - a * z)
        return z.truncated(self.N)

    def sqrt(self) -> "TruncSeries":
        """Square root of a series whose t^0 row is 1, with t^0 row 1."""
        if self.N and self.row(0) != ONE:
            raise ValueError("sqrt needs t^0 coefficient equal to 1")
        z = TruncSeries.constant(1, 1, self.window)  # approximates 1/sqrt
        prec = 1
        while prec < self.N:
            prec = min(2 * prec, self.N)
            a = self.truncated(prec)
            z = z.truncated(prec)
            z = z + z * (1 - a * z * z) * Fraction(1, 2)
        return self * z.truncated(self.N)

    # calculus and substitutions -----------------------------------------
    def _map_entries(self, N: int, f: Callable[[int, int, Fraction], tuple[int, int, Fraction] | None]):
        out = []
        for n, e, v in self.entries():
            r = f(n, e, v)
            if r is not None:
                out.append(r)
        return TruncSeries.from_entries(N, self.window, out)

    def dt(self) -> "TruncSeries":
        """d/dt; the result is known mod t^(N-1)."""
        return self._map_entries(
            max(self.N - 1, 0), lambda n, e, v: (n - 1, e, n * v) if n else None
        )

    def xdx(self) -> "TruncSeries":
        """x * d/dx, which keeps every exponent in place."""
        return self._map_entries(self.N, lambda n, e, v: (n, e, e * v))

    def dx(self) -> "TruncSeries":
        return self._map_entries(self.N, lambda n, e, v: (n, e - 1, e * v))

    def shift_t(self, k: int) -> "TruncSeries":
        """Multiply by t^k.  For k < 0 the low rows must vanish and N drops."""
        if k >= 0:
            return self._map_entries(self.N, lambda n, e, v: (n + k, e, v))
        v0 = self.valuation()
        if v0 is not None and v0 < -k:
            raise ValueError(f"cannot divide by t^{-k}: row t^{v0} is nonzero")
        return self._map_entries(self.N + k, lambda n, e, v: (n + k, e, v))

    def reflect_x(self) -> "TruncSeries":
        """Substitute x -> 1/x; the window grows to stay symmetric if needed."""
        window = (min(self.lo, -self.hi), max(self.hi, -self.lo))
        return TruncSeries.from_entries(self.N, window, ((n, -e, v) for n, e, v in self.entries()))

    # comparisons --------------------------------------------------------
    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return {(n, e): v for n, e, v in self.entries()}

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        N = min(self.N, other.N)
        a = {k: v for k, v in self.as_dict().items() if k[0] < N}
        b = {k: v for k, v in other.as_dict().items() if k[0] < N}
        return a == b

    __hash__ = None

    def first_nonzero_row(self) -> int | None:
        return self.valuation()

    def __repr__(self):
        rows = [f"({r})*t^{n}" for n, r in enumerate(self.rows()) if r]
        body = " + ".join(rows) if rows else "0"
        return f"TruncSeries[N={self.N}, x in {self.window}]: {body}"


def series_x(N: int, window: tuple[int, int], k: int = 1) -> TruncSeries:
    return TruncSeries.constant(LaurentPoly.monomial(k), N, window)


def series_t(N: int, window: tuple[int, int]) -> TruncSeries:
    return TruncSeries.t_power(1, N, window)


def poly_in_t(rows: Sequence, N: int, window: tuple[int, int]) -> TruncSeries:
    """Series from a list of LaurentPoly (or number) coefficients of t^0, t^1, ..."""
    return TruncSeries.from_rows(rows, N, window)


# --------------------------------------------------------------------------
# constant terms


def ct_x(s: TruncSeries, pole: LaurentPoly | None = None) -> TruncSeries:
    """Constant term in x of ``s`` (or of ``s / pole``), row by row.

    ``pole`` is a polynomial g(x) with g(0) != 0 whose inverse is read as a
    power series in x: ``CT_x T/g = sum_m h_m T_{-m}`` with ``1/g = sum h_m x^m``.
    Every row of ``s`` is a Laurent polynomial, so the sum is finite and exact.
    """
    if pole is None:
        vals = s.coefficients(0)
    else:
        h = series_inverse_coeffs(pole, -s.lo + 1)
        vals = [Fraction(0)] * s.N
        for n, e, v in s.entries():
            if e <= 0:
                vals[n] += h[-e] * v
    return TruncSeries.from_rows(vals, s.N, (0, 0))


def t_coefficients(s: TruncSeries) -> list[Fraction]:
    """The t-coefficients of an x-free series."""
    for _, e, _ in s.entries():
        if e != 0:
            raise ValueError("series still depends on x")
    return s.coefficients(0)


# --------------------------------------------------------------------------
# the kernel roots and the radical


def _check_order(N: int):
    if N < 1:
        raise ValueError("order must be at least 1")


def solve_Y(N: int, window: tuple[int, int] | None = None) -> TruncSeries:
    """The power series root of ``Y = t(1+x+Y)(1+(1+1/x)Y)``."""
    _check_order(N)
    window = window or default_window(N)
    t = series_t(N, window)
    c0 = t * (1 + X)
    c1 = t * (U + 1)
    c2 = t * (1 + X**-1)
    Y = TruncSeries(N, window)
    for _ in range(N):
        Y = c0 + c1 * Y + c2 * (Y * Y)
    return Y


def solve_Ytilde(N: int, window: tuple[int, int] | None = None) -> TruncSeries:
    """The power series root of ``Y = t(1+1/x)(1+Y)(x+Y)``."""
    _check_order(N)
    window = window or default_window(N)
    t = series_t(N, window)
    a = t * (1 + X**-1)
    c0, c1 = a * X, a * (1 + X)
    Y = TruncSeries(N, window)
    for _ in range(N):
        Y = c0 + c1 * Y + a * (Y * Y)
    return Y


VACILLATING = "vacillating"
HESITATING = "hesitating"


def radicand(flavor: str, N: int, window: tuple[int, int] | None = None) -> TruncSeries:
    """``(1-(u-1)t)^2 - 4t`` (vacillating) or ``(1-ut)^2 - 4ut^2`` (hesitating)."""
    window = window or default_window(N)
    if flavor == VACILLATING:
        rows = [ONE, -2 * (U - 1) - 4, (U - 1) ** 2]
    elif flavor == HESITATING:
        rows = [ONE, -2 * U, U**2 - 4 * U]
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return poly_in_t(rows, N, window)


def solve_Delta(flavor: str, N: int, window: tuple[int, int] | None = None) -> TruncSeries:
    _check_order(N)
    return radicand(flavor, N, window).sqrt()


def denominators(flavor: str, N: int, window: tuple[int, int] | None = None) -> dict[str, TruncSeries]:
    """D1, D2, D3 as polynomials in t (D3 = x^2 times the radicand)."""
    window = window or default_window(N)
    X2 = X**2
    if flavor == VACILLATING:
        d1 = [X, -X * (2 * U + 1)]
        d2 = [X2, -X2 * (U - 1) ** 2]
    elif flavor == HESITATING:
        d1 = [X, -2 * X * U]
        d2 = [X2, X2 * (1 - (1 - U) ** 2)]
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return {
        "D1": poly_in_t(d1, N, window),
        "D2": poly_in_t(d2, N, window),
        "D3": radicand(flavor, N, window) * X2,
    }


# --------------------------------------------------------------------------
# end-set descriptors and the constant-term formulas

Poly2 = dict[tuple[int, int], int]

# (numerator, power of (1-x), power of (1-xy)) for each catalog set
_CATALOG: dict[str, tuple[Poly2, int, int]] = {
    "A1": ({(1, 0): 1}, 0, 0),
    "A2": ({(1, 0): 1}, 1, 1),
    "A2p": ({(2, 0): 1, (2, 1): 1, (3, 1): -2}, 1, 1),
    "A2pp": ({(3, 1): 1}, 1, 1),
    "A3": ({(1, 0): 1}, 1, 0),
    "A4": ({(1, 0): 1}, 0, 1),
}


def _pmul(a: Poly2, b: Poly2) -> Poly2:
    out: Poly2 = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _ppow(a: Poly2, k: int) -> Poly2:
    out: Poly2 = {(0, 0): 1}
    for _ in range(k):
        out = _pmul(out, a)
    return out


@dataclass(frozen=True)
class ADescriptor:
    """``A(x, y) = P(x, y) / ((1-x)^d1 (1-xy)^d2)`` with integer P."""

    P: tuple[tuple[tuple[int, int], int], ...]
    d1: int = 1
    d2: int = 1

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise ValueError("denominator powers must be nonnegative")
        object.__setattr__(self, "P", tuple(sorted((k, v) for k, v in dict(self.P).items() if v)))

    @classmethod
    def make(cls, P: Mapping[tuple[int, int], int], d1: int = 1, d2: int = 1) -> "ADescriptor":
        return cls(tuple(P.items()), d1, d2)

    @classmethod
    def of(cls, kind: str) -> "ADescriptor":
        P, d1, d2 = _CATALOG[kind]
        return cls.make(P, d1, d2)

    @classmethod
    def from_endset(cls, A) -> "ADescriptor":
        """Convert a walk-engine EndSet (weighted shifted catalog sets)."""
        d1 = max(_CATALOG[k][1] for _, _, k in A.terms)
        d2 = max(_CATALOG[k][2] for _, _, k in A.terms)
        total: Poly2 = {}
        for w, (a, b), kind in A.terms:
            P, e1, e2 = _CATALOG[kind]
            term = _pmul({(a, b): w}, P)
            term = _pmul(term, _ppow({(0, 0): 1, (1, 0): -1}, d1 - e1))
            term = _pmul(term, _ppow({(0, 0): 1, (1, 1): -1}, d2 - e2))
            for k, v in term.items():
                total[k] = total.get(k, 0) + v
        return cls.make(total, d1, d2)

    @classmethod
    def coerce(cls, A) -> "ADescriptor":
        if isinstance(A, ADescriptor):
            return A
        if isinstance(A, str):
            from .walks import EndSet

            return cls.from_endset(EndSet.parse(A))
        return cls.from_endset(A)

    def __str__(self):
        terms = []
        for (i, j), c in self.P:
            mono = "*".join(
                p for p in (f"x^{i}" if i > 1 else "x" if i else "", f"y^{j}" if j > 1 else "y" if j else "") if p
            ) or "1"
            terms.append(f"{c}*{mono}")
        den = " * ".join(
            p for p in ((f"(1-x)^{self.d1}" if self.d1 > 1 else "(1-x)") if self.d1 else "",
                        (f"(1-x*y)^{self.d2}" if self.d2 > 1 else "(1-x*y)") if self.d2 else "") if p
        )
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"({num})" + (f" / ({den})" if den else "")

    def numerator_at(self, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
        """P(xs, ys)."""
        out = xs.like(0)
        xp: dict[int, TruncSeries] = {}
        yp: dict[int, TruncSeries] = {}
        for (i, j), c in self.P:
            if i not in xp:
                xp[i] = xs**i
            if j not in yp:
                yp[j] = ys**j
            out = out + c * (xp[i] * yp[j])
        return out

    def at(self, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
        """A(xs, ys) when both 1 - xs and 1 - xs*ys are t-adically invertible."""
        out = self.numerator_at(xs, ys)
        if self.d1:
            out = out * (1 - xs).inverse() ** self.d1
        if self.d2:
            out = out * (1 - xs * ys).inverse() ** self.d2
        return out


def _one_minus_x(d: int) -> LaurentPoly:
    return (1 - X) ** d


def eval_CA(A, N: int, window: tuple[int, int] | None = None) -> TruncSeries:
    """Generating function of walks from A to (1,0) of length 2n, mod t^N.

    Evaluates the constant-term formula with the kernel root Y; the only
    non-t-adic factor, ``(1-x)^-d1`` from ``A(x, Y)``, is handled as a pole
    of the constant-term extraction.
    """
    _check_order(N)
    A = ADescriptor.coerce(A)
    window = window or default_window(N)
    Y = solve_Y(N, window)
    x = series_x(N, window)
    xi = series_x(N, window, -1)
    pref = x.like(X**-2 - X**2)
    Yx = Y * xi
    # A(x, Y) with the (1-x) part held back
    first = A.numerator_at(x, Y)
    if A.d2:
        first = first * (1 - x * Y).inverse() ** A.d2
    first = pref * (x + Y + x * Y) * first
    second = (Yx + Y + Yx * Y) * A.at(Yx, Y)
    third = (Yx + xi + Yx * xi) * A.at(Yx, xi)
    rest = pref * (third - second)
    return ct_x(first, _one_minus_x(A.d1)) + ct_x(rest)


def eval_EA(A, N: int, window: tuple[int, int] | None = None) -> TruncSeries:
    """Generating function of hesitating walks from A to (1,0), mod t^N."""
    _check_order(N)
    A = ADescriptor.coerce(A)
    M = N + 1  # one order is spent dividing by t
    window = window or default_window(M)
    Y = solve_Ytilde(M, window)
    x = series_x(M, window)
    xi = series_x(M, window, -1)
    pref = x.like(X**-2 - X**3)
    Yx = Y * xi
    first = A.numerator_at(x, Y)
    if A.d2:
        first = first * (1 - x * Y).inverse() ** A.d2
    first = pref * x * Y * first
    rest = pref * (Yx * xi * A.at(Yx, xi) - Yx * Y * A.at(Yx, Y))
    total = ct_x(first, _one_minus_x(A.d1) * (1 + X)) + ct_x(rest, 1 + X)
    return total.shift_t(-1)


# --------------------------------------------------------------------------
# text dump


def dump_series(s: TruncSeries) -> str:
    """Stable text form: a header then one ``t_exp x_exp num den`` line per term."""
    lines = [f"# order {s.N} window {s.lo} {s.hi}"]
    for n, e, v in s.entries():
        lines.append(f"{n} {e} {v.numerator} {v.denominator}")
    return "\n".join(lines) + "\n"


def parse_series(text: str) -> TruncSeries:
    N = None
    window = None
    entries = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["order"]:
                N = int(parts[1])
                window = (int(parts[3]), int(parts[4]))
            continue
        n, e, num, den = (int(p) for p in line.split())
        if den <= 0:
            raise ValueError(f"bad denominator in line {raw!r}")
        entries.append((n, e, Fraction(num, den)))
    if N is None:
        raise ValueError("missing '# order N window lo hi' header")
    return TruncSeries.from_entries(N, window, entries)


# --------------------------------------------------------------------------
# identity catalog


class _Ctx:
    """Shared building blocks for one flavor, order and window."""

    def __init__(self, flavor: str, N: int, window: tuple[int, int]):
        self.flavor, self.N, self.window = flavor, N, window
        self.t = series_t(N, window)
        self.x = series_x(N, window)
        self.Delta = solve_Delta(flavor, N, window)
        self.R = radicand(flavor, N, window)
        self.D = denominators(flavor, N, window)
        self._inv: dict[str, TruncSeries] = {}

    def c(self, v) -> TruncSeries:
        return self.x.like(v)

    def tpoly(self, *coeffs) -> TruncSeries:
        """Polynomial in t with LaurentPoly (or number) coefficients."""
        return poly_in_t(list(coeffs), self.N, self.window)

    def inv(self, name: str) -> TruncSeries:
        if name not in self._inv:
            self._inv[name] = self.D[name].inverse()
        return self._inv[name]


def _lp(coeffs: Mapping[int, Number]) -> LaurentPoly:
    return LaurentPoly(coeffs)


def _tx(rows: Mapping[tuple[int, int], Number]):
    """Polynomial in t and x from {(t_exp, x_exp): coeff}."""
    out: dict[int, dict[int, Number]] = {}
    for (n, e), v in rows.items():
        out.setdefault(n, {})[e] = v
    return [LaurentPoly(out.get(n, {})) for n in range(max(out) + 1)]


Pair = tuple[TruncSeries, TruncSeries]


def _id_P2(c: _Ctx) -> Pair:
    lhs = sum((ct_x((c.c(X**k - X**-k)) * c.Delta) for k in range(0, 6)), c.c(0))
    return lhs, c.c(0).with_window((0, 0))


def _id_P3(c: _Ctx) -> Pair:
    base = c.x * c.Delta * c.inv("D1")
    vals = [ct_x(c.c(X**k - X**-k) * base) for k in range(1, 6)]
    return sum(vals[1:], vals[0]), c.c(0).with_window((0, 0))


def _id_P4(c: _Ctx) -> Pair:
    base = c.x * c.x * c.Delta * c.inv("D2")
    vals = [ct_x(c.c(X**k - X**-k) * base) for k in range(1, 6)]
    return sum(vals[1:], vals[0]), c.c(0).with_window((0, 0))


def _id_P5(c: _Ctx) -> Pair:
    lhs = ct_x(c.c(1 - X) * c.Delta, 1 + X)
    rhs = c.tpoly(1, -1) if c.flavor == VACILLATING else c.c(1)
    return lhs, ct_x(rhs)


def _id_P6(c: _Ctx) -> Pair:
    lhs = ct_x(c.c(1 - X) * c.x * c.Delta * c.inv("D1"), 1 + X)
    return lhs, ct_x(c.c(1))


def _id_P7(c: _Ctx) -> Pair:
    lhs = ct_x(c.c(1 - X) * c.x * c.x * c.Delta * c.inv("D2"), 1 + X)
    return lhs, ct_x(c.c(1))


def _id_P8(c: _Ctx) -> Pair:
    if c.flavor == VACILLATING:
        lhs = ct_x(c.tpoly(1 - X, -3 * X * (1 - X)) * c.Delta)
        return lhs, ct_x(c.tpoly(1, -2, 1))
    lhs = ct_x(c.tpoly(1 - X, (1 - X) * (1 - 3 * X)) * c.Delta)
    return lhs, ct_x(c.c(1))


def _id_P8_derivative(c: _Ctx) -> Pair:
    # The proof of the last identity: multiplied through by 2t(t-1)^3
    # (vacillating) or 2t(1+t) (hesitating), the difference is pointwise zero.
    D = c.Delta
    if c.flavor == VACILLATING:
        f = c.tpoly(1 - X, -3 * X * (1 - X)) * D
        Q = c.tpoly(*_tx({(1, 3): 4, (2, 2): 3, (1, 2): -7, (2, 1): 3, (1, 1): -4, (0, 1): -3, (2, 0): 3, (1, 0): 1}))
        lhs = -2 * c.t * (c.tpoly(1, -1) * f.dt() + 2 * f)
        rhs = 2 * c.t * c.tpoly(1, 3) * c.c(X - X**-1) * D - (Q * c.c(X**-1) * D).xdx()
        return lhs, rhs
    f = c.tpoly(1 - X, (1 - X) * (1 - 3 * X)) * D
    Q = c.tpoly(*_tx({(2, 3): -4, (1, 3): -4, (2, 2): 4, (1, 2): 7, (2, 1): 4, (1, 1): 10, (0, 1): 3, (1, 0): -1, (2, 0): -4}))
    lhs = 2 * c.t * c.tpoly(1, 1) * f.dt()
    rhs = -2 * c.t * c.tpoly(1, 4) * c.c(X - X**-1) * D - (Q * c.c(X**-1) * D).xdx()
    return lhs, rhs


def _id_Delta_squared(c: _Ctx) -> Pair:
    return c.Delta * c.Delta, c.R


def _id_D_forms(c: _Ctx) -> Pair:
    # expanded polynomial forms of D1, D2, D3 against their factored forms
    if c.flavor == VACILLATING:
        e1 = _tx({(1, 0): -2, (0, 1): 1, (1, 1): -5, (1, 2): -2})
        e2 = _tx({(1, 0): -1, (1, 1): -2, (1, 2): -3, (0, 2): 1, (1, 3): -2, (1, 4): -1})
        e3 = _tx({(2, 0): 1, (2, 1): 2, (1, 1): -2, (2, 2): 3, (1, 2): -6, (0, 2): 1, (2, 3): 2, (1, 3): -2, (2, 4): 1})
    else:
        e1 = _tx({(0, 1): 1, (1, 0): -2, (1, 1): -4, (1, 2): -2})
        e2 = _tx({(1, 0): -1, (1, 1): -2, (1, 2): -2, (0, 2): 1, (1, 3): -2, (1, 4): -1})
        e3 = _tx({(2, 0): 1, (1, 1): -2, (2, 2): -2, (1, 2): -4, (0, 2): 1, (1, 3): -2, (2, 4): 1})
    lhs = c.D["D1"] + c.D["D2"] * c.t + c.D["D3"] * c.t * c.t
    rhs = c.tpoly(*e1) + c.tpoly(*e2) * c.t + c.tpoly(*e3) * c.t * c.t
    extra = c.D["D3"] - c.x * c.x * c.Delta * c.Delta
    return lhs + extra, rhs


def _id_dDelta_dx(c: _Ctx) -> Pair:
    if c.flavor == VACILLATING:
        P = _tx({(2, 4): 1, (2, 3): 1, (1, 3): -1, (2, 1): -1, (1, 1): 1, (2, 0): -1})
    else:
        P = _tx({(2, 4): 1, (1, 3): -1, (1, 1): 1, (2, 0): -1})
    return c.D["D3"] * c.Delta.xdx(), c.tpoly(*P) * c.Delta


def _id_dDelta_dt(c: _Ctx) -> Pair:
    if c.flavor == VACILLATING:
        P = _tx({(1, 4): 1, (1, 3): 2, (0, 3): -1, (1, 2): 3, (0, 2): -3, (1, 1): 2, (0, 1): -1, (1, 0): 1})
    else:
        P = _tx({(1, 4): 1, (0, 3): -1, (1, 2): -2, (0, 2): -2, (0, 1): -1, (1, 0): 1})
    return c.D["D3"] * c.Delta.dt(), c.tpoly(*P) * c.Delta


def _id_Y_closed(c: _Ctx) -> Pair:
    if c.flavor == VACILLATING:
        Y = solve_Y(c.N, c.window)
        lhs = 2 * c.t * c.c(1 + X) * Y
        rhs = c.tpoly(X, -(1 + X * X + 3 * X)) - c.x * c.Delta
    else:
        Y = solve_Ytilde(c.N, c.window)
        lhs = 2 * c.t * c.c(1 + X**-1) * Y
        rhs = c.tpoly(1, -U) - c.Delta
    return lhs, rhs


def _id_Y_equation(c: _Ctx) -> Pair:
    t = c.t
    if c.flavor == VACILLATING:
        Y = solve_Y(c.N, c.window)
        return Y, t * (1 + c.x + Y) * (1 + c.c(1 + X**-1) * Y)
    Y = solve_Ytilde(c.N, c.window)
    return Y, t * c.c(1 + X**-1) * (1 + Y) * (c.x + Y)


def _id_step2_D1(c: _Ctx) -> Pair:
    # CT[Delta + (4t + (5t-1)x) Delta / D1] = 0, i.e. the P6 rewrite times (t-1)
    num = c.tpoly(-X, 4 + 5 * X)
    return ct_x(c.Delta + num * c.Delta * c.inv("D1")), ct_x(c.c(0))


def _id_step2_log_D1(c: _Ctx) -> Pair:
    # 4(t-1) * CT[-1/4 + Delta/(4(t-1)) + x Delta/D1 - N Delta/(2(t-1) D3)] = 0
    N = c.tpoly(*_tx({(2, 0): 1, (2, 1): 1, (1, 1): -2, (2, 2): 1, (1, 2): -1, (0, 2): -1, (1, 3): 1}))
    tm1 = c.tpoly(-1, 1)
    body = -tm1 + c.Delta + 4 * tm1 * c.x * c.Delta * c.inv("D1") - 2 * N * c.Delta * c.inv("D3")
    return ct_x(body), ct_x(c.c(0))


def step3_D2_residual(c: _Ctx, x_coeff: int = 2) -> TruncSeries:
    """``CT_x[Delta + (2t + k t x + (3t-1)x^2 + 2t x^3) Delta / D2]`` for k = ``x_coeff``.

    Partial fractions of ``(1-x) x^2 / ((1+x) D2)`` give k = 2, and then the
    constant term vanishes; with k = 4 it does not (it starts 2t^2 + 8t^3).
    """
    num = c.tpoly(*_tx({(1, 0): 2, (1, 1): x_coeff, (1, 2): 3, (0, 2): -1, (1, 3): 2}))
    return ct_x(c.Delta + num * c.Delta * c.inv("D2"))


def _id_step3_D2(c: _Ctx) -> Pair:
    return step3_D2_residual(c), ct_x(c.c(0))


def _id_step3_log_D2(c: _Ctx) -> Pair:
    N = c.tpoly(*_tx({(2, 0): 1, (2, 1): 1, (1, 1): -2, (2, 2): 3, (1, 2): -5, (0, 2): 1, (1, 3): 1}))
    tm1 = c.tpoly(-1, 1)
    body = 3 * tm1 + c.Delta - 4 * tm1 * c.x * c.x * c.Delta * c.inv("D2") - 2 * N * c.Delta * c.inv("D3")
    return ct_x(body), ct_x(c.c(0))


def _id_step5(c: _Ctx) -> Pair:
    D3 = c.Delta * c.Delta * c.Delta
    P = _tx({(2, 3): 4, (2, 2): 5, (1, 2): -5, (2, 1): 3, (0, 1): 1, (1, 1): -6, (2, 0): -1, (1, 0): 1, (2, -1): -2})
    return (c.x * D3).xdx(), c.tpoly(*P) * c.Delta


def _id_forD2(c: _Ctx) -> Pair:
    D = c.Delta
    if c.flavor == VACILLATING:
        r = c.tpoly(-1, 8, 55, -440, 861, -528, 45)
        p = c.tpoly(1, -5, -74, 210, -87, -45)
        q = c.tpoly(0, -4, 8, 240, -552, 180) * c.x
        s = c.tpoly(0, 4, 20, -84, 60) * c.tpoly(-1, 9)  # 4t(1+5t-21t^2+15t^3)(9t-1)
        body = r + (p + q) * D - s * D * c.inv("D2")
    else:
        r = c.tpoly(1, -6, -32, 48, 64)
        p = c.tpoly(1, -4, -44, -48)
        q = c.tpoly(0, 4, -8, -112, -64) * c.x  # 4t(1-2t-28t^2-16t^3)
        s = c.tpoly(0, 4, 4) * c.tpoly(-1, 8) * c.tpoly(1, 4)  # 4t(1+t)(8t-1)(1+4t)
        body = r - p * D + q * D + s * D * c.inv("D2")
    return ct_x(body), ct_x(c.c(0))


def _id_rational_T0(c: _Ctx) -> Pair:
    # CT_x (4t + (5t-1)x) / (2t + (5t-1)x + 2tx^2) = 1; the denominator is -D1
    num = c.tpoly(-X, 4 + 5 * X)
    return ct_x(-num * c.inv("D1")), ct_x(c.c(1))


IDENTITIES: dict[str, tuple[tuple[str, ...], Callable[[_Ctx], Pair], str]] = {
    # name: (flavors, builder, level)
    "Y-equation": ((VACILLATING, HESITATING), _id_Y_equation, "pointwise"),
    "Y-closed-form": ((VACILLATING, HESITATING), _id_Y_closed, "pointwise"),
    "Delta-squared": ((VACILLATING, HESITATING), _id_Delta_squared, "pointwise"),
    "D-forms": ((VACILLATING, HESITATING), _id_D_forms, "pointwise"),
    "dDelta-dx": ((VACILLATING, HESITATING), _id_dDelta_dx, "pointwise"),
    "dDelta-dt": ((VACILLATING, HESITATING), _id_dDelta_dt, "pointwise"),
    "P2": ((VACILLATING, HESITATING), _id_P2, "ct"),
    "P3": ((VACILLATING, HESITATING), _id_P3, "ct"),
    "P4": ((VACILLATING, HESITATING), _id_P4, "ct"),
    "P5": ((VACILLATING, HESITATING), _id_P5, "ct"),
    "P6": ((VACILLATING, HESITATING), _id_P6, "ct"),
    "P7": ((VACILLATING, HESITATING), _id_P7, "ct"),
    "P8": ((VACILLATING, HESITATING), _id_P8, "ct"),
    "P8-derivative": ((VACILLATING, HESITATING), _id_P8_derivative, "pointwise"),
    "step2-D1": ((VACILLATING,), _id_step2_D1, "ct"),
    "step2-log-D1": ((VACILLATING,), _id_step2_log_D1, "ct"),
    "step3-D2": ((VACILLATING,), _id_step3_D2, "ct"),
    "step3-log-D2": ((VACILLATING,), _id_step3_log_D2, "ct"),
    "step5-x-Delta-cubed": ((VACILLATING,), _id_step5, "pointwise"),
    "forD2": ((VACILLATING, HESITATING), _id_forD2, "ct"),
    "rational-T0": ((VACILLATING,), _id_rational_T0, "ct"),
}


def identity_names() -> list[str]:
    """Every ``flavor:name`` pair in the catalog, plus the Jacobi check."""
    out = []
    for flavor in (VACILLATING, HESITATING):
        for name, (flavors, _, _) in IDENTITIES.items():
            if flavor in flavors:
                out.append(f"{flavor}:{name}")
    out.append("jacobi")
    return out


def _compare(lhs: TruncSeries, rhs: TruncSeries, label: str) -> None:
    diff = lhs - rhs
    first = diff.valuation()
    if first is not None:
        raise VerificationError(f"{label} fails at t^{first}", index=first)


def identity_sides(name: str, N: int, window: tuple[int, int] | None = None) -> Pair:
    flavor, _, base = name.partition(":")
    if base not in IDENTITIES or flavor not in IDENTITIES[base][0]:
        raise KeyError(f"unknown identity {name!r}")
    window = window or default_window(N)
    lhs, rhs = IDENTITIES[base][1](_Ctx(flavor, N, window))
    N_eff = min(lhs.N, rhs.N)
    return lhs.truncated(N_eff), rhs.truncated(N_eff)


def verify_identity(name: str, N: int = 24, window: tuple[int, int] | None = None, stability: bool = True) -> bool:
    """Check one catalog identity mod t^N; raise VerificationError on failure.

    Names are ``"vacillating:P5"``, ``"hesitating:forD2"`` and so on (see
    :func:`identity_names`), or ``"jacobi"``.  With ``stability`` the left side
    is recomputed with the window widened by 8 and must not change.
    """
    if N < 8:
        raise ValueError("identity checks need N >= 8")
    if name == "jacobi":
        return jacobi_check()
    window = window or default_window(N)
    lhs, rhs = identity_sides(name, N, window)
    _compare(lhs, rhs, name)
    if stability:
        wide = (window[0] - 8, window[1] + 8)
        lhs2, _ = identity_sides(name, N, wide)
        if lhs2 != lhs:
            diff = (lhs2 - lhs.with_window(lhs2.window)).valuation()
            raise VerificationError(f"{name} changes when the window is widened (t^{diff})", index=diff)
    return True


# --------------------------------------------------------------------------
# Jacobi's change of variables for u = x^{-1}(1+x)^2


def jacobi_lhs(G: Mapping[int, Number]) -> Fraction:
    """``CT_x G(u) (1-x)/(1+x)`` for a Laurent polynomial ``G(u) = sum g_k u^k``.

    Negative powers ``u^{-k} = x^k (1+x)^{-2k}`` are power series in x.
    """
    total = Fraction(0)
    for k, g in G.items():
        if not g:
            continue
        if k >= 0:
            num = U**k * (1 - X)
            den = 1 + X
        else:
            num = X ** (-k) * (1 - X)
            den = (1 + X) ** (1 - 2 * k)
        # CT of num/den with 1/den expanded in positive powers of x
        lo = num.lo
        h = series_inverse_coeffs(den, max(-lo, 0) + 1)
        total += g * sum((v * h[-e] for e, v in num.items() if e <= 0), Fraction(0))
    return total


_JACOBI_CASES = (
    {0: 1},
    {1: 1},
    {-1: 1},
    {2: 3, -2: 5, 0: 7},
    {3: -1, 1: 2, -3: 4, -1: -6, 0: Fraction(1, 2)},
    {k: k * k - 3 for k in range(-6, 7)},
)


def jacobi_check(cases: Iterable[Mapping[int, Number]] = _JACOBI_CASES) -> bool:
    """``CT_x G(u) (1-x)/(1+x) == CT_u G(u)`` for each Laurent polynomial G."""
    for i, G in enumerate(cases):
        if jacobi_lhs(G) != Fraction(G.get(0, 0)):
            raise VerificationError(f"Jacobi check fails for case {i}: {dict(G)}", index=i)
    return True


# --------------------------------------------------------------------------
# window stability


def stable_eval(fn: Callable[..., TruncSeries], A, N: int, widen: int = 8) -> TruncSeries:
    """Evaluate ``fn(A, N)`` twice, the second time with a wider window.

    Returns the result when both agree and raises VerificationError otherwise.
    """
    base = default_window(N + 1)
    a = fn(A, N, base)
    b = fn(A, N, (base[0] - widen, base[1] + widen))
    if a != b:
        raise VerificationError(f"result changes when the window is widened by {widen}")
    return a


# --------------------------------------------------------------------------
# the Delta-free part of the constant-term formula


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of :func:`ct_T0_rationality_probe`; it only reports."""

    A: str
    found: bool
    numerator: tuple[Fraction, ...] = ()
    denominator: tuple[Fraction, ...] = ()
    t_shift: int = 0
    terms_fitted: int = 0
    terms_confirmed: int = 0
    note: str = ""

    def __str__(self):
        if not self.found:
            return f"A = {self.A}: no rational fit ({self.note})"

        def poly(cs):
            return " + ".join(f"({c})t^{i}" for i, c in enumerate(cs) if c) or "0"

        pre = f"t^{-self.t_shift} * " if self.t_shift else ""
        return (
            f"A = {self.A}: CT_x T0 = {pre}[{poly(self.numerator)}] / [{poly(self.denominator)}]"
            f" (fitted on {self.terms_fitted}, confirmed on {self.terms_confirmed})"
        )


def _delta_free_part(A: ADescriptor):
    """T0 with ``C^A = CT_x T0 + CT_x T1 Delta`` as a sympy rational function."""
    import sympy as sp

    x, t, y = sp.symbols("x t y")

    def A_at(a, b):
        num = sum(c * a**i * b**j for (i, j), c in A.P)
        return num / ((1 - a) ** A.d1 * (1 - a * b) ** A.d2)

    F = (x**-2 - x**2) * (
        (x + y + x * y) * A_at(x, y)
        - (y / x + y + y**2 / x) * A_at(y / x, y)
        + (y / x + 1 / x + y / x**2) * A_at(y / x, 1 / x)
    )
    # y is a root of y^2 - s y + p with s, p below; reduce F to A0 + B0 y
    s = (1 - t * (x**-1 + 3 + x)) / (t * (1 + 1 / x))
    p = x
    num, den = sp.fraction(sp.together(F))
    kernel = sp.Poly(y**2 - s * y + p, y)

    def reduce(e):
        r = sp.Poly(e, y).rem(kernel)
        return r.coeff_monomial(1), r.coeff_monomial(y)

    a, b = reduce(num)
    c, d = reduce(den)
    norm = c**2 + c * d * s + d**2 * p
    A0 = (a * (c + d * s) + b * d * p) / norm
    B0 = (b * c - a * d) / norm
    alpha = (x - (1 + x**2 + 3 * x) * t) / (2 * t * (1 + x))
    T0 = sp.cancel(sp.together(A0 + B0 * alpha))
    return T0, x, t


def _frac(v) -> Fraction:
    import sympy as sp

    v = sp.Rational(v)
    return Fraction(int(v.p), int(v.q))


def _rational_series(T0, x, t, N: int):
    """Expand a rational function in x, t in Q((x))((t)) and take CT_x.

    Returns ``(coeffs, shift)`` with CT_x T0 = t^(-shift) * sum coeffs[n] t^n.
    Denominator factors must be t, a polynomial in x alone, or have a monomial
    lowest-order coefficient in t.
    """
    import sympy as sp

    num, den = sp.fraction(T0)
    const, factors = sp.factor_list(den, x, t)
    shift = 0
    xpow = 0
    pole = LaurentPoly({0: 1})
    tadic: list[tuple[dict, int, int]] = []  # (rows as dict, t-valuation, multiplicity)
    for f, k in factors:
        fp = sp.Poly(f, x, t)
        if fp.degree(t) == 0:
            gx = sp.Poly(f, x)
            low = min(m[0] for m in gx.monoms())
            xpow += low * k
            g = LaurentPoly({m[0] - low: _frac(c) for m, c in zip(gx.monoms(), gx.coeffs())})
            pole = pole * g**k
            continue
        rows: dict[int, dict[int, Fraction]] = {}
        for (ex, et), cf in zip(fp.monoms(), fp.coeffs()):
            rows.setdefault(et, {})[ex] = _frac(cf)
        m0 = min(rows)
        if len(rows[m0]) != 1:
            raise ValueError(f"denominator factor {f} has no t-adic inverse")
        if fp.degree(x) == 0 and fp.degree(t) == 1 and len(rows) == 1:
            shift += k  # the factor t itself
            continue
        tadic.append((rows, m0, k))
        shift += m0 * k
    M = N + shift
    window = default_window(M)
    window = (window[0] - 4 * len(factors), window[1] + 4 * len(factors))
    nump = sp.Poly(num, x, t)
    entries = []
    for (ex, et), cf in zip(nump.monoms(), nump.coeffs()):
        entries.append((et, ex - xpow, _frac(cf) / _frac(const)))
    ser = TruncSeries.from_entries(M, window, entries)
    for rows, m0, k in tadic:
        f = TruncSeries.from_entries(
            M, window, [(et - m0, ex, v) for et, r in rows.items() for ex, v in r.items()]
        )
        ser = ser * f.inverse() ** k
    ct = ct_x(ser, pole if pole != ONE else None)
    return t_coefficients(ct), shift


def _pade(coeffs: Sequence[Fraction], deg: int, fit: int) -> tuple[list[int], list[int]] | None:
    """P/Q with deg P, deg Q <= deg matching the first ``fit`` coefficients."""
    from .linalg import nullspace

    # unknowns q_0..q_deg, then p_0..p_deg; (Q * f)_n - p_n = 0 for n < fit
    rows = []
    for n in range(fit):
        row = [coeffs[n - j] if n - j >= 0 else 0 for j in range(deg + 1)]
        row += [-1 if n == j else 0 for j in range(deg + 1)]
        rows.append(row)
    for vec in nullspace(rows):
        q, p = vec[: deg + 1], vec[deg + 1 :]
        if q[0] != 0:
            return p, q
    return None


def ct_T0_rationality_probe(A, N: int = 30, max_degree: int = 6, fit: int = 20) -> ProbeReport:
    """Test whether ``CT_x T0`` looks rational in t, where ``C^A = CT_x T0 + CT_x T1 Delta``.

    T0 is obtained by reducing the constant-term integrand modulo the kernel
    equation satisfied by Y and substituting ``Y = alpha + beta * Delta``.  Its
    constant term is expanded to ``N`` terms, a Pade approximant of degree
    ``max_degree`` is fitted on the first ``fit`` terms and confirmed on the
    rest.  The outcome is a report, never an exception.
    """
    if N < 20:
        raise ValueError("the probe needs N >= 20")
    A = ADescriptor.coerce(A)
    label = str(A)
    try:
        T0, x, t = _delta_free_part(A)
        coeffs, shift = _rational_series(T0, x, t, N)
    except (ValueError, WindowOverflowError) as exc:
        return ProbeReport(label, False, note=f"expansion unsupported: {exc}")
    fit = min(fit, len(coeffs))
    for deg in range(max_degree + 1):
        if 2 * deg + 2 > fit:
            break
        res = _pade(coeffs, deg, fit)
        if res is None:
            continue
        p, q = res
        # confirm on every remaining coefficient: (Q f)_n == p_n
        ok = True
        for n in range(len(coeffs)):
            lhs = sum((q[j] * coeffs[n - j] for j in range(deg + 1) if n - j >= 0), Fraction(0))
            if lhs != (p[n] if n <= deg else 0):
                ok = False
                break
        if ok:
            return ProbeReport(
                label,
                True,
                tuple(Fraction(v, q[0]) for v in p),
                tuple(Fraction(v, q[0]) for v in q),
                shift,
                fit,
                len(coeffs) - fit,
            )
    return ProbeReport(label, False, t_shift=shift, terms_fitted=fit, note=f"no fit of degree <= {max_degree}")
