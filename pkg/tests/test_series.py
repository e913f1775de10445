from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kdvtau.errors import InsufficientDepthError, NonUnitError, NotNormalizedError
from kdvtau.grassmann import wk_point
from kdvtau.series import (
    M2,
    LaurentSeries,
    MatrixSeries,
    constant_series,
    kac_schwarz_apply,
    lam_power,
    matrix_series_inverse,
    negate_argument,
    polynomial_part,
    series_from_json,
    series_inverse,
    series_to_json,
    tail_series,
)


def S(data, order):
    return LaurentSeries.from_dict({e: Fraction(v) for e, v in data.items()}, order)


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------


def test_mul_binomials():
    a = S({0: 1, -1: 1}, None)
    b = S({0: 1, -1: -1}, None)
    assert a * b == S({0: 1, -2: -1}, None)


def test_mul_lam_by_inverse_lam():
    assert lam_power(1) * lam_power(-1) == S({0: 1}, None)


def test_mul_cq_depth6():
    p = wk_point(6)
    prod = p.a * p.b
    assert prod.tail_order == 6
    assert prod.coeff(-3) == Fraction(1, 12)  # c_1 + q_1 = -5/24 + 7/24
    assert prod.coeff(0) == 1


def test_mul_window_formula():
    # truncated tail times a series with a head: the head eats validity
    a = S({0: 1, -1: 2}, 5)
    b = S({2: 1}, None)
    prod = a * b
    assert prod.tail_order == 3  # O_a - h_b = 5 - 2
    a = S({0: 1}, 4)
    b = S({0: 1}, 7)
    assert (a * b).tail_order == 4


def brute_convolution(a: LaurentSeries, b: LaurentSeries) -> dict:
    out = {}
    for e1, v1 in a.coeffs:
        for e2, v2 in b.coeffs:
            out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + v1 * v2
    return {e: v for e, v in out.items() if v != 0}


small_rationals = st.builds(
    Fraction, st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=5)
)


@st.composite
def exact_series(draw):
    exps = draw(st.lists(st.integers(min_value=-6, max_value=4), max_size=5, unique=True))
    return LaurentSeries.from_dict(
        {e: draw(small_rationals) for e in exps}, None
    )


@given(exact_series(), exact_series())
def test_mul_matches_brute_convolution_on_exact_series(a, b):
    assert dict((a * b).coeffs) == brute_convolution(a, b)


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------


def test_inverse_one():
    one = constant_series(1, 5)
    assert series_inverse(one) == one


def test_inverse_geometric():
    a = S({0: 1, -1: 1}, 4)
    assert series_inverse(a) == S({0: 1, -1: -1, -2: 1, -3: -1, -4: 1}, 4)


def test_inverse_geometric_even():
    # independent oracle: 1/(1 - 2 x^2) = sum 2^k x^(2k)
    a = S({0: 1, -2: -2}, 8)
    inv = series_inverse(a)
    for k in range(5):
        assert inv.coeff(-2 * k) == 2**k
        if 2 * k + 1 <= 8:
            assert inv.coeff(-(2 * k + 1)) == 0


def test_inverse_requires_unit():
    with pytest.raises(NonUnitError):
        series_inverse(S({0: 2}, 3))
    with pytest.raises(NonUnitError):
        series_inverse(S({1: 1, 0: 1}, 3))
    with pytest.raises(NonUnitError):
        series_inverse(S({0: 1}, None))  # exact input needs a target order


@st.composite
def unit_series(draw, order=8):
    data = {0: Fraction(1)}
    for e in range(1, order + 1):
        data[-e] = draw(small_rationals)
    return LaurentSeries.from_dict(data, order)


@given(unit_series())
@settings(max_examples=40)
def test_inverse_is_right_inverse_through_window(a):
    inv = series_inverse(a)
    prod = a * inv
    assert prod.tail_order == a.tail_order
    assert prod == constant_series(1, a.tail_order)


@given(unit_series())
@settings(max_examples=30)
def test_truncation_soundness(a):
    """Recomputing at higher input truncation never changes a previously
    reported coefficient (mul, inverse, and the differential operator)."""
    shallow = a.truncated(5)
    deep_inv, shallow_inv = series_inverse(a), series_inverse(shallow)
    for e in range(0, 6):
        assert deep_inv.coeff(-e) == shallow_inv.coeff(-e)
    deep_sq, shallow_sq = a * a, shallow * shallow
    for e in range(0, shallow_sq.tail_order + 1):
        assert deep_sq.coeff(-e) == shallow_sq.coeff(-e)
    deep_ks, shallow_ks = kac_schwarz_apply(a), kac_schwarz_apply(shallow)
    for e in range(-shallow_ks.tail_order, 2):
        assert deep_ks.coeff(e) == shallow_ks.coeff(e)


# ---------------------------------------------------------------------------
# polynomial part, argument negation
# ---------------------------------------------------------------------------


def test_polynomial_part():
    s = S({2: 1, 0: 1, -1: 1}, 4)
    assert polynomial_part(s) == S({2: 1, 0: 1}, None)
    assert polynomial_part(S({-3: 1}, 5)) == S({}, None)
    shifted = S({0: 1, -1: 1, -2: 1}, 6).shift(1)
    assert polynomial_part(shifted) == S({1: 1, 0: 1}, None)


def test_negate_argument():
    assert negate_argument(S({0: 1, -1: 1}, 2)) == S({0: 1, -1: -1}, 2)
    assert negate_argument(lam_power(1)) == S({1: -1}, None)
    c = wk_point(6).a
    assert negate_argument(c).coeff(-3) == Fraction(5, 24)


@given(exact_series())
def test_negate_argument_is_involution(a):
    assert negate_argument(negate_argument(a)) == a


# ---------------------------------------------------------------------------
# the differential operator
# ---------------------------------------------------------------------------


def test_kac_schwarz_on_one():
    out = kac_schwarz_apply(constant_series(1, None))
    assert out == S({1: -1, -2: Fraction(-1, 2)}, None)


def test_kac_schwarz_on_inverse_cube():
    out = kac_schwarz_apply(lam_power(-3))
    assert out == S({-2: -1, -5: Fraction(-7, 2)}, None)


def test_kac_schwarz_q_relation_coefficientwise():
    p = wk_point(18)
    derived_q = -kac_schwarz_apply(p.a).shift(-1)
    assert derived_q.difference_support(p.b) == []
    assert derived_q.agreement_window(p.b) == 18


def test_kac_schwarz_ode_residual_zero():
    c = wk_point(21).a
    residual = kac_schwarz_apply(kac_schwarz_apply(c)) - c.shift(2)
    assert residual.tail_order == 19
    assert residual.is_zero()


def test_window_never_extended():
    s = S({0: 1}, 3)
    with pytest.raises(InsufficientDepthError):
        s.coeff(-4)
    with pytest.raises(InsufficientDepthError):
        s.truncated(9)


# ---------------------------------------------------------------------------
# matrix series
# ---------------------------------------------------------------------------


def test_matrix_inverse_identity():
    eye = MatrixSeries.from_blocks([M2.identity()], 4)
    inv = matrix_series_inverse(eye)
    assert inv.blocks(4) == [M2.identity()] + [M2.zero()] * 4


def test_matrix_inverse_nilpotent():
    g1 = M2.of(0, 3, 0, 0)
    G = MatrixSeries.from_blocks([M2.identity(), g1], 4)
    U = matrix_series_inverse(G)
    assert U.block(1) == -g1
    assert all(U.block(k).is_zero() for k in range(2, 5))


def test_matrix_inverse_wk_blocks():
    from kdvtau.grassmann import wk_G

    G = wk_G(6)
    U = matrix_series_inverse(G)
    assert U.block(1) == -G.block(1)
    assert U.block(2) == M2.of(0, 0, Fraction(5, 24), 0)
    assert U.block(3) == M2.diag(Fraction(-455, 1152), Fraction(385, 1152))
    prod = G @ U
    assert prod.block(0) == M2.identity()
    assert all(prod.block(k).is_zero() for k in range(1, 7))


def test_matrix_inverse_requires_identity_leading_block():
    G = MatrixSeries.from_blocks([M2.of(2, 0, 0, 1)], 3)
    with pytest.raises(NotNormalizedError):
        matrix_series_inverse(G)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_series_json_round_trip():
    s = S({2: Fraction(1, 3), 0: 1, -1: Fraction(-5, 24), -4: 2}, 6)
    doc = series_to_json(s)
    assert doc["tail_order"] == 6
    assert doc["head"] == [[2, "1/3"]]
    assert doc["tail"][0] == "1" and doc["tail"][1] == "-5/24"
    assert series_from_json(doc) == s


def test_series_json_respects_window():
    s = S({0: 1}, 3)
    with pytest.raises(InsufficientDepthError):
        series_to_json(s, tail_order=5)


def test_tail_series_constructor():
    s = tail_series([1, 0, Fraction(1, 2)])
    assert s.tail_order == 2
    assert s.coeff(-2) == Fraction(1, 2)
