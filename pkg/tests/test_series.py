from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosswalks.errors import WindowOverflowError
from crosswalks.oracles import baxter
from crosswalks.series import (
    X,
    ADescriptor,
    LaurentPoly,
    TruncSeries,
    _Ctx,
    ct_T0_rationality_probe,
    ct_x,
    default_window,
    dump_series,
    eval_CA,
    eval_EA,
    identity_sides,
    jacobi_check,
    jacobi_lhs,
    parse_series,
    radicand,
    series_t,
    series_x,
    solve_Delta,
    solve_Y,
    stable_eval,
    step3_D2_residual,
    t_coefficients,
    verify_identity,
)
from crosswalks.walks import EndSet, sequence

laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=5).map(LaurentPoly)
entries = st.lists(
    st.tuples(st.integers(0, 5), st.integers(-3, 3), st.integers(-4, 4)), max_size=8
)


def naive_product(a, b, N):
    out = {}
    for (n1, e1), v1 in a.items():
        for (n2, e2), v2 in b.items():
            if n1 + n2 < N:
                key = (n1 + n2, e1 + e2)
                out[key] = out.get(key, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


@given(laurent, laurent, st.fractions(min_value=1, max_value=5))
def test_laurent_product_evaluates_pointwise(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


def test_laurent_basics():
    p = (1 - X) ** 2
    assert p == LaurentPoly({0: 1, 1: -2, 2: 1})
    assert (X**-2).lo == -2
    assert p.derivative() == LaurentPoly({0: -2, 1: 2})
    assert LaurentPoly({-1: 3, 2: 1}).reflect() == LaurentPoly({1: 3, -2: 1})
    assert LaurentPoly({0: 5, 1: 1}).ct() == 5


@settings(max_examples=50)
@given(entries, entries)
def test_packed_product_matches_naive(ea, eb):
    N, window = 6, (-8, 8)
    a = TruncSeries.from_entries(N, window, [(n, e, Fraction(v)) for n, e, v in ea])
    b = TruncSeries.from_entries(N, window, [(n, e, Fraction(v)) for n, e, v in eb])
    assert (a * b).as_dict() == naive_product(a.as_dict(), b.as_dict(), N)


def test_window_overflow_is_reported():
    x = series_x(6, (-3, 3))
    with pytest.raises(WindowOverflowError):
        x**4


def test_inverse_and_sqrt():
    N, window = 10, (-12, 12)
    t, x = series_t(N, window), series_x(N, window)
    s = 1 + t * x - 3 * t * t * x.like(X**-1)
    assert s * s.inverse() == s.like(1)
    r = (1 + 4 * t * x).sqrt()
    assert r * r == 1 + 4 * t * x


def test_derivatives():
    N, window = 6, (-4, 4)
    t, x = series_t(N, window), series_x(N, window)
    s = t * t * x * x
    assert s.dt() == 2 * t * x * x
    assert s.xdx() == 2 * s


def test_ct_with_pole():
    s = series_x(6, (-3, 3), -2)
    # CT of x^-2 / (1 - x) picks the x^2 coefficient of the geometric series
    assert t_coefficients(ct_x(s, 1 - X))[0] == 1
    assert t_coefficients(ct_x(s, 1 + X))[0] == 1
    assert t_coefficients(ct_x(series_x(6, (-3, 3), -1), 1 + X))[0] == -1


def test_kernel_root():
    N = 12
    window = default_window(N)
    Y = solve_Y(N, window)
    t, x = series_t(N, window), series_x(N, window)
    assert Y == t * (1 + x + Y) * (1 + x.like(1 + X**-1) * Y)


@pytest.mark.parametrize("flavor", ["vacillating", "hesitating"])
def test_delta_squares_to_radicand(flavor):
    N = 12
    D = solve_Delta(flavor, N)
    assert D * D == radicand(flavor, N)


def test_dump_round_trip():
    s = eval_CA("A2", 8)
    text = dump_series(s)
    assert text.startswith("# order 8 window")
    assert parse_series(text) == s
    assert dump_series(parse_series(text)) == text
    with pytest.raises(ValueError):
        parse_series("0 0 1 1\n")


def test_descriptor_from_endset():
    assert ADescriptor.coerce("A2") == ADescriptor.of("A2")
    odd = ADescriptor.coerce("A1 + 2*A2p + 3*A2pp")
    assert (odd.d1, odd.d2) == (1, 1)


def test_eval_small_rows():
    assert t_coefficients(eval_CA("A2", 7)) == [1, 2, 7, 30, 148, 806, 4716]
    assert t_coefficients(eval_CA("A1 + 2*A2p + 3*A2pp", 5)) == [1, 3, 12, 57, 303]
    assert t_coefficients(eval_EA("A3", 8)) == [baxter(n + 1) for n in range(8)]
    assert t_coefficients(eval_EA("2*A2 - A4", 5)) == [1, 3, 11, 48, 232]


def test_eval_window_stable():
    a = stable_eval(eval_CA, EndSet.parse("A4"), 12)
    assert t_coefficients(a) == sequence("vacillating", EndSet.parse("A4"), 12)


def test_identity_examples():
    lhs, rhs = identity_sides("vacillating:P5", 10)
    assert t_coefficients(lhs) == [1, -1] + [0] * 8
    lhs, rhs = identity_sides("vacillating:P8", 10)
    assert t_coefficients(lhs) == [1, -2, 1] + [0] * 7
    lhs, _ = identity_sides("hesitating:P5", 10)
    assert t_coefficients(lhs) == [1] + [0] * 9


def test_verify_identity_arguments():
    assert verify_identity("hesitating:P6", 10)
    with pytest.raises(ValueError):
        verify_identity("hesitating:P6", 4)
    with pytest.raises(KeyError):
        verify_identity("hesitating:step2-D1", 10)


def test_step3_variant_with_4tx_is_not_an_identity():
    c = _Ctx("vacillating", 12, default_window(12))
    assert step3_D2_residual(c, x_coeff=2).is_zero()
    wrong = step3_D2_residual(c, x_coeff=4)
    assert wrong.valuation() == 2
    assert t_coefficients(wrong)[2:4] == [2, 8]


def test_jacobi():
    assert jacobi_check()
    assert jacobi_lhs({1: 1}) == 0
    assert jacobi_lhs({0: 3}) == 3
    assert jacobi_check([{-2: 1, 0: 1}, {3: 2, -1: 5}])


@pytest.mark.parametrize("A", ["A1", "A2", "A3", "A4", "A1 + 2*A2p + 3*A2pp"])
def test_rationality_probe_finds_fit(A):
    report = ct_T0_rationality_probe(A)
    assert report.found, str(report)


def test_rationality_probe_reports_failure():
    report = ct_T0_rationality_probe(ADescriptor.make({(1, 0): 1}, 2, 0))
    assert not report.found
    assert "no rational fit" in str(report)
