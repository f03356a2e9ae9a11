from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iptm import fps
from iptm.fps import QQ, TruncatedSeries as TS

# reversion of the Thue-Morse series, first terms
G_PREFIX = [0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1]


def series(draw_coeffs, order, modulus, zero_const=False, unit_linear=False):
    vals = list(draw_coeffs)
    if zero_const:
        vals[0] = 0
    if unit_linear:
        vals[1] = vals[1] or 1
    return TS(vals, order, modulus)


def coeff_strategy(modulus, order):
    if modulus is QQ:
        elem = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    else:
        elem = st.integers(0, modulus - 1)
    return st.lists(elem, min_size=order + 1, max_size=order + 1)


FIELDS = [2, 3, 5, QQ]


# --- construction and arithmetic -------------------------------------------


def test_basic_construction():
    s = TS([1, 0, 1], 5)
    assert s.order == 5
    assert list(s.coeffs) == [1, 0, 1, 0, 0, 0]
    assert s.valuation() == 0
    assert TS.zero(4).valuation() == float("inf")
    assert TS.x(3)[1] == 1


def test_reduction_mod_p():
    assert list(TS([3, 4, 5], 2, 3).coeffs) == [0, 1, 2]
    assert list(TS([-1], 0, 7).coeffs) == [6]


def test_invalid_modulus():
    with pytest.raises(fps.InvalidPrimeError):
        TS([1], 3, 4)
    with pytest.raises(fps.InvalidPrimeError):
        fps.sp_series(9, 10)


def test_domain_mismatch():
    with pytest.raises(fps.DomainMismatchError):
        TS([1], 3, 2) + TS([1], 3, 3)
    with pytest.raises(fps.DomainMismatchError):
        fps.series_mul(TS([1], 3, 2), TS([1], 3, QQ))


def test_product_order_is_minimum():
    assert fps.series_mul(TS([1, 1], 10), TS([1, 1], 4)).order == 4


def test_mul_matches_schoolbook():
    rng = np.random.default_rng(5)
    for p in (2, 3, 65537, 2147483647):
        a = rng.integers(0, p, 300)
        b = rng.integers(0, p, 300)
        got = fps.series_mul(TS(a, 299, p), TS(b, 299, p)).coeffs
        want = [int(v) % p for v in np.convolve(a.astype(object), b.astype(object))[:300]]
        assert list(got) == want


def test_inverse():
    w = TS([1, 1], 20, 2)  # 1/(1+X) = sum X^n over F_2
    assert list(fps.series_inverse(w).coeffs) == [1] * 21
    w = TS([2, 1], 6, QQ)
    inv = fps.series_inverse(w)
    assert inv[3] == Fraction(-1, 16)
    with pytest.raises(fps.NotInvertibleError):
        fps.series_inverse(TS([0, 1], 5))


def test_compose_requires_zero_constant():
    with pytest.raises(fps.CompositionError):
        fps.series_compose(TS([0, 1], 5), TS([1, 1], 5))


def test_reverse_preconditions():
    with pytest.raises(fps.NotInvertibleError):
        fps.series_reverse(TS([1, 1], 5))
    with pytest.raises(fps.NotInvertibleError):
        fps.series_reverse(TS([0, 0, 1], 5))


# --- the Thue-Morse series and its inverse -----------------------------------


def test_reverse_thue_morse_prefix():
    g = fps.series_reverse(fps.ptm_series(64))
    assert list(g.coeffs[:11]) == G_PREFIX


def test_reverse_composes_to_identity_large():
    f = fps.ptm_series(8192)
    g = fps.series_reverse(f)
    x = TS.x(8192)
    assert fps.series_compose(f, g) == x
    assert fps.series_compose(g, f) == x


@pytest.mark.parametrize("p", [3, 5, 7])
def test_reverse_general_prime(p):
    f = fps.sp_series(p, 512)
    g = fps.series_reverse(f)
    assert fps.series_compose(f, g) == TS.x(512, p)
    assert fps.series_compose(g, f) == TS.x(512, p)


@pytest.mark.parametrize("p,order", [(2, 64), (3, 48), (5, 32)])
def test_newton_matches_naive(p, order):
    f = fps.sp_series(p, order)
    assert fps.series_reverse(f) == fps.series_reverse_naive(f)


def test_rational_reversion_of_geometric():
    # X/(1-X) reverses to X/(1+X)
    f = TS([0] + [1] * 12, 12, QQ)
    g = fps.series_reverse(f)
    assert list(g.coeffs) == [0] + [(-1) ** (k + 1) for k in range(1, 13)]


def test_sp_series_p2_is_ptm():
    assert fps.sp_series(2, 100) == fps.ptm_series(100)


@pytest.mark.parametrize("eq", ["PTM_EQUATION", "G_CUBIC_EQUATION", "G_QUARTIC_EQUATION"])
def test_equations_vanish(eq):
    f = fps.ptm_series(4096)
    s = f if eq == "PTM_EQUATION" else fps.series_reverse(f)
    assert fps.equation_residual(getattr(fps, eq), s).is_zero()


def test_equation_residual_detects_wrong_series():
    f = fps.ptm_series(64)
    assert not fps.equation_residual(fps.G_CUBIC_EQUATION, f).is_zero()


def test_iterate_compose():
    f = fps.ptm_series(200)
    g = fps.series_reverse(f)
    assert fps.iterate_compose(f, 1) == f
    f3 = fps.iterate_compose(f, 3)
    assert fps.series_compose(fps.iterate_compose(g, 3), f3) == TS.x(200)
    assert fps.iterate_compose(f, 2)[1] == 1
    with pytest.raises(ValueError):
        fps.iterate_compose(f, 0)


# --- the rational function R ---------------------------------------------------


def test_rational_expand_r_prefix():
    r = fps.rational_expand(fps.R_NUMERATOR, fps.R_DENOMINATOR, 14)
    assert list(r.coeffs) == [0, 0, 0, 1, 1, 1, 1, -1, -1, -1, -1, 1, 1, 1, 1]


def test_rational_expand_poles():
    with pytest.raises(fps.PoleError):
        fps.rational_expand([1], [0, 1], 5)
    with pytest.raises(fps.PoleError):
        fps.rational_expand([1], [], 5)


def test_rational_expand_non_integral():
    s = fps.rational_expand([1], [2, -1], 5)  # 1/(2 - X)
    assert list(s.coeffs) == [Fraction(1, 2 ** (k + 1)) for k in range(6)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6),
       st.lists(st.integers(-4, 4), min_size=1, max_size=5).filter(lambda d: d[0] != 0))
def test_rational_expand_times_denominator(num, den):
    order = 20
    s = fps.rational_expand(num, den, order)
    back = s * TS(den, order, QQ)
    assert back == TS(num, order, QQ)


def test_functional_equation():
    assert fps.functional_residual(4096).is_zero()


def test_functional_equation_sign_symmetry():
    # C(-X)(X+1) = (X-1) C(X) over the rationals
    from iptm.seqgen import iptm_batch
    n = 400
    c = TS([Fraction(int(v)) for v in iptm_batch(n + 1)], n, QQ)
    c_neg = fps.substitute_monomial(c, 1, -1)
    assert c_neg * TS([1, 1], n, QQ) == c * TS([-1, 1], n, QQ)


# --- properties ------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_compose_is_linear_in_outer(field, data):
    order = 24
    u1 = TS(data.draw(coeff_strategy(field, order)), order, field)
    u2 = TS(data.draw(coeff_strategy(field, order)), order, field)
    v = series(data.draw(coeff_strategy(field, order)), order, field, zero_const=True)
    assert fps.series_compose(u1 + u2, v) == fps.series_compose(u1, v) + fps.series_compose(u2, v)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_compose_is_multiplicative(field, data):
    order = 24
    u1 = TS(data.draw(coeff_strategy(field, order)), order, field)
    u2 = TS(data.draw(coeff_strategy(field, order)), order, field)
    v = series(data.draw(coeff_strategy(field, order)), order, field, zero_const=True)
    assert fps.series_compose(u1 * u2, v) == fps.series_compose(u1, v) * fps.series_compose(u2, v)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_reverse_is_involution(field, data):
    order = 64 if field is not QQ else 16
    u = series(data.draw(coeff_strategy(field, order)), order, field, zero_const=True, unit_linear=True)
    v = fps.series_reverse(u)
    assert fps.series_reverse(v) == u
    assert fps.series_compose(u, v) == TS.x(order, field)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_frobenius(p, data):
    # s(X)^p = s(X^p) over F_p
    order = 60
    s = TS(data.draw(coeff_strategy(p, order)), order, p)
    assert s ** p == fps.substitute_monomial(s, p).truncate(order)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_inverse_property(field, data):
    order = 30
    w = series(data.draw(coeff_strategy(field, order)), order, field)
    if w[0] == 0:
        w = w + TS.one(order, field)
    assert w * fps.series_inverse(w) == TS.one(order, field)
