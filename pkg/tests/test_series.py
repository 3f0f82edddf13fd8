from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from daehee.ring import LAMBDA, ONE, XVAR, YVAR, ZERO, MultiPoly, substitute_lambda
from daehee.series import (
    SeriesError,
    TruncatedSeries,
    compose,
    div_exact,
    egf_coefficient,
    exp,
    expm1_t,
    int_pow,
    log1p,
    log1p_t,
    scaled_log,
    series_arith,
    sym_binom_pow,
    t_series,
)
from strategies import polys, series, small_fractions


def S(*coeffs, order=None):
    return TruncatedSeries(list(coeffs), order)


# -- independent oracles: plain Fraction lists, power sums ---------------------


def synthetic_division(num, den, terms):
    """Long division of power series given as Fraction lists (den[0] != 0)."""
    num = list(num) + [F(0)] * terms
    out = []
    for n in range(terms):
        q = num[n] / den[0]
        out.append(q)
        for k, d in enumerate(den):
            if n + k < len(num):
                num[n + k] -= q * d
    return out


def power_sum(u: TruncatedSeries, weights) -> TruncatedSeries:
    """sum_k weights(k) u^k by explicit powers."""
    total = TruncatedSeries.zero(u.order)
    power = TruncatedSeries.constant(1, u.order)
    for k in range(u.order + 1):
        total = total + power * weights(k)
        power = power * u
    return total


def log_weights(k):
    return F((-1) ** (k - 1), k) if k else F(0)


def exp_weights(k):
    return F(1, factorial(k))


# -- arithmetic ----------------------------------------------------------------


def test_series_arith_examples():
    assert series_arith(S(1, 1, 0, 0), S(1, -1, 0, 0), "mul") == S(1, 0, -1, 0)
    f = S(1, 2, 3)
    assert series_arith(f, TruncatedSeries.zero(2), "add") == f
    assert series_arith(S(0, 1), S(0, 1), "mul") == S(0, 0)


def test_order_mismatch_is_an_error():
    with pytest.raises(SeriesError):
        S(1, 2) + S(1, 2, 3)
    with pytest.raises(SeriesError):
        S(1, 2) * S(1, 2, 3)


def test_div_exact_examples():
    assert div_exact(t_series(5), t_series(5)) == TruncatedSeries.constant(1, 4)
    mercator = [F(0)] + [F((-1) ** (n - 1), n) for n in range(1, 5)]
    expected = synthetic_division(mercator[1:], [F(1)], 4)
    assert expected == [1, F(-1, 2), F(1, 3), F(-1, 4)]
    assert div_exact(log1p_t(4), t_series(4)) == S(*expected)
    assert div_exact(TruncatedSeries.constant(1, 3), S(1, -1, 0, 0)) == S(1, 1, 1, 1)


def test_div_exact_preconditions():
    with pytest.raises(SeriesError):
        div_exact(TruncatedSeries.constant(1, 3), t_series(3))  # val(g) > val(f)
    with pytest.raises(SeriesError):
        div_exact(t_series(3), t_series(3) * LAMBDA)  # leading coefficient lam
    with pytest.raises(SeriesError):
        div_exact(t_series(3), TruncatedSeries.zero(3))


def test_compose_examples():
    N = 6
    assert compose(log1p_t(N), expm1_t(N)) == t_series(N)
    g = S(1, 2, 3, 4, 5, 6)
    assert compose(g, t_series(5)) == g
    geometric = S(*[1] * 6)
    t2 = S(0, 0, 1, 0, 0, 0)
    # direct substitution oracle: 1/(1 - t^2) = sum t^{2k}
    assert compose(geometric, t2) == S(1, 0, 1, 0, 1, 0)


def test_compose_rejects_constant_term():
    with pytest.raises(SeriesError):
        compose(S(1, 1), S(1, 1))


def test_log1p_examples():
    assert log1p(t_series(3)) == S(0, 1, F(-1, 2), F(1, 3))
    assert log1p(TruncatedSeries.zero(4)) == TruncatedSeries.zero(4)
    with pytest.raises(SeriesError):
        log1p(S(1, 1))


def test_exp_examples():
    assert exp(t_series(3)) == S(1, 1, F(1, 2), F(1, 6))
    assert exp(TruncatedSeries.zero(3)) == TruncatedSeries.constant(1, 3)
    with pytest.raises(SeriesError):
        exp(S(1, 1))


def test_scaled_log_examples():
    assert scaled_log(t_series(3)) == S(0, 1, -LAMBDA / 2, LAMBDA**2 / 3)
    # oracle: log1p of lam*t, then drop one power of lam from every term
    via_log = log1p(t_series(3) * LAMBDA)
    lowered = via_log.map(
        lambda c: MultiPoly({(a - 1, b, d): q for (a, b, d), q in c.terms.items()})
    )
    assert scaled_log(t_series(3)) == lowered
    u = S(0, XVAR, 2, LAMBDA)
    assert scaled_log(u).map(lambda c: substitute_lambda(c, 0)) == u.map(
        lambda c: substitute_lambda(c, 0)
    )
    assert scaled_log(TruncatedSeries.zero(3)) == TruncatedSeries.zero(3)


def test_sym_binom_pow_examples():
    t = t_series(4)
    assert sym_binom_pow(t, 0) == TruncatedSeries.constant(1, 4)
    assert sym_binom_pow(t, 1)[2] == (ONE - LAMBDA) / 2
    u = log1p(t)
    assert sym_binom_pow(u, XVAR) * sym_binom_pow(u, YVAR) == sym_binom_pow(u, XVAR + YVAR)


def test_sym_binom_pow_rejects_nonlinear_exponent():
    with pytest.raises(SeriesError):
        sym_binom_pow(t_series(3), XVAR**2)
    with pytest.raises(SeriesError):
        sym_binom_pow(t_series(3), LAMBDA)


def test_sym_binom_pow_at_lambda_one_is_binomial():
    # at lam = 1, (1 + lam*t)^(a/lam) is the polynomial (1 + t)^a
    t = t_series(4)
    assert sym_binom_pow(t, 1).map(lambda c: c.evaluate(lam=1)) == S(1, 1, 0, 0, 0)
    assert sym_binom_pow(t, 2).map(lambda c: c.evaluate(lam=1)) == S(1, 2, 1, 0, 0)


def test_int_pow_examples():
    f = S(1, 2, -1, F(1, 2))
    assert int_pow(f, 0) == TruncatedSeries.constant(1, 3)
    assert int_pow(f, 1) == f
    assert int_pow(f, 2) * int_pow(f, -2) == TruncatedSeries.constant(1, 3)
    assert int_pow(f, 3) == f * f * f
    with pytest.raises(SeriesError):
        int_pow(t_series(3), -1)
    with pytest.raises(SeriesError):
        int_pow(S(LAMBDA, 1), -1)


def test_egf_coefficient_examples():
    assert egf_coefficient(exp(t_series(5)), 5) == 1
    assert egf_coefficient(log1p_t(3), 3) == 2
    assert egf_coefficient(S(1, 1, 1, 1, 1), 4) == 24
    with pytest.raises(SeriesError):
        egf_coefficient(S(1, 1), 2)


def test_json_round_trip():
    f = S(1, XVAR - F(1, 2), LAMBDA)
    data = f.to_json()
    assert data == {"order": 2, "coeffs": [[["1", 0, 0, 0]], [["-1/2", 0, 0, 0], ["1", 0, 1, 0]], [["1", 1, 0, 0]]]}
    assert TruncatedSeries.from_json(data) == f


# -- properties -------------------------------------------------------------------

nonzero_fractions = small_fractions.filter(lambda q: q != 0)


@given(series(order=6, zero_constant=True))
def test_log1p_matches_mercator_power_sum(u):
    assert log1p(u) == power_sum(u, log_weights)


@given(series(order=6, zero_constant=True))
def test_exp_matches_power_sum(u):
    assert exp(u) == power_sum(u, exp_weights)


@given(series(order=8, zero_constant=True))
def test_exp_log_inverse(u):
    assert exp(log1p(u)) == u + 1
    assert log1p(exp(u) - 1) == u


@given(series(order=5, coeffs=polys(max_terms=2), zero_constant=True))
@settings(deadline=None, max_examples=40)
def test_exp_log_inverse_polynomial_coefficients(u):
    assert exp(log1p(u)) == u + 1


@given(series(order=5, zero_constant=True))
def test_scaled_log_matches_power_sum(u):
    expected = power_sum(u, lambda k: LAMBDA ** (k - 1) * log_weights(k) if k else ZERO)
    assert scaled_log(u) == expected


@given(series(order=6), series(order=6), series(order=6, zero_constant=True))
def test_compose_is_linear(g1, g2, f):
    assert compose(g1 + g2, f) == compose(g1, f) + compose(g2, f)


@given(series(order=6), nonzero_fractions, series(order=6))
def test_div_exact_undoes_mul(h, lead, rest):
    g = TruncatedSeries([lead, *rest.coeffs[1:]], 6)
    assert div_exact(g * h, g) == h


@given(series(order=6), st.integers(1, 3))
def test_div_exact_with_valuation(h, v):
    g = TruncatedSeries([0] * v + [1, 2, 3], 6)
    assert div_exact(g * h, g) == h.truncate(6 - v)


@given(series(order=5, zero_constant=True), polys(max_terms=2), polys(max_terms=2))
@settings(deadline=None, max_examples=30)
def test_sym_binom_pow_additive_in_exponent(u, a, b):
    a = MultiPoly({(0, e[1] % 2, 0): c for e, c in a.terms.items()})
    b = MultiPoly({(0, 0, e[2] % 2): c for e, c in b.terms.items()})
    assert sym_binom_pow(u, a) * sym_binom_pow(u, b) == sym_binom_pow(u, a + b)


@given(series(order=5, zero_constant=True), small_fractions)
def test_sym_binom_pow_at_lambda_zero_is_exp(u, c):
    a = XVAR * c + 1
    lhs = sym_binom_pow(u, a).map(lambda p: substitute_lambda(p, 0))
    rhs = exp(u * a).map(lambda p: substitute_lambda(p, 0))
    assert lhs == rhs


@given(series(order=5).filter(lambda f: f[0] != 0), st.integers(-3, 3), st.integers(-3, 3))
def test_int_pow_exponent_law(f, a, b):
    assert int_pow(f, a) * int_pow(f, b) == int_pow(f, a + b)
