from fractions import Fraction

import pytest

from kdvtau.errors import DegreeExceededError, InsufficientTableError
from kdvtau.grassmann import AffineTable
from kdvtau.schur import GradedPoly, graded_exp
from kdvtau.tau import (
    CorrelatorSpec,
    free_energy,
    initial_data,
    intersection_number,
    log_series,
    tau_truncated,
    to_t_variables,
    verify_dimension_filter,
    verify_kdv_flow,
    verify_string_equation,
    verify_string_recursion,
)
from kdvtau.zhou import zhou_affine_table

from conftest import example_table

F = Fraction


def theta_mon(*pairs):
    return tuple(sorted(pairs))


def t_mon(*pairs):
    return tuple(sorted(pairs))


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------


def test_example_tau_theta_form(example_tau_c1):
    """Single nonzero table entry c at (1,1): tau = 1 - c (theta1^3/3 - theta3)."""
    poly = example_tau_c1.poly
    assert poly.terms == {
        (): F(1),
        theta_mon((1, 3)): F(-1, 3),
        theta_mon((3, 1)): F(1),
    }


def test_wk_degree3_slice(wk_tau12):
    slice3 = wk_tau12.poly.degree_slice(3)
    assert slice3.terms == {
        theta_mon((1, 3)): F(-1, 6),
        theta_mon((3, 1)): F(-1, 8),
    }
    # the theta1*theta2 coefficient cancels between the three weight-3 terms


def test_wk_tau_degree0():
    table = AffineTable(0, 0, {}, "grassmann")
    t = tau_truncated(table, 0)
    assert t.poly.terms == {(): F(1)}


def test_tau_requires_big_enough_table():
    table = AffineTable(2, 2, {}, "grassmann")
    with pytest.raises(InsufficientTableError):
        tau_truncated(table, 5)


def test_pipeline_independence(wk_affine31):
    """tau assembled from the closed-form table equals tau from the
    Grassmannian table coefficient for coefficient."""
    t_grass = tau_truncated(wk_affine31, 10)
    t_closed = tau_truncated(zhou_affine_table(9, 9), 10)
    assert t_grass.poly.terms == t_closed.poly.terms


def test_stabilization_in_table_size(wk_affine31):
    small = tau_truncated(zhou_affine_table(7, 7), 8)
    big = tau_truncated(wk_affine31, 8)
    assert small.poly.terms == big.poly.terms


def test_stabilization_in_degree(wk_tau12, wk_affine31):
    t8 = tau_truncated(wk_affine31, 8)
    for d in range(9):
        assert t8.poly.degree_slice(d).terms == wk_tau12.poly.degree_slice(d).terms


# ---------------------------------------------------------------------------
# coupling constants
# ---------------------------------------------------------------------------


def test_to_t_example(example_tau_c1):
    Z = to_t_variables(example_tau_c1)
    assert Z.terms == {
        (): F(1),
        t_mon((0, 3)): F(1, 3),
        t_mon((1, 1)): F(-1, 3),
    }


def test_to_t_wk_degree3(wk_tau12):
    Z = to_t_variables(wk_tau12)
    assert Z.terms[t_mon((0, 3))] == F(1, 6)
    assert Z.terms[t_mon((1, 1))] == F(1, 24)
    assert Z.constant_term() == 1


def test_log_series_examples(wk_tau12):
    one = GradedPoly.const("t", 1, 6)
    assert log_series(one).is_zero()
    Z = to_t_variables(wk_tau12)
    L = log_series(Z)
    assert L.terms[t_mon((0, 3))] == F(1, 6)
    assert L.terms[t_mon((1, 1))] == F(1, 24)
    assert graded_exp(L, 12).terms == Z.terms


# ---------------------------------------------------------------------------
# correlators
# ---------------------------------------------------------------------------


def test_spec_genus():
    assert CorrelatorSpec.of([0, 0, 0]).genus == 0
    assert CorrelatorSpec.of([1]).genus == 1
    assert CorrelatorSpec.of([4]).genus == 2
    assert CorrelatorSpec.of([0, 0]).genus is None
    assert not CorrelatorSpec.of([0, 0]).is_valid


def test_known_intersection_numbers(wk_tau12, wk_F12):
    def val(ks):
        return intersection_number(CorrelatorSpec.of(ks), wk_tau12, wk_F12)

    assert val([0, 0, 0]).value == 1 and val([0, 0, 0]).genus == 0
    assert val([1]).value == F(1, 24) and val([1]).genus == 1
    # string-equation oracle seeded by the genus-0 three-point value
    assert val([0, 0, 0, 1]).value == 1
    assert val([0, 2]).value == F(1, 24)
    assert val([1, 1]).value == F(1, 24)
    assert val([0, 0, 3]).value == F(1, 24)
    assert val([0, 0, 0, 1, 1]).value == 2  # string: two ways down to <t0^3 t1>
    # genus-2 one-point value from the published table
    assert val([4]).value == F(1, 1152) and val([4]).genus == 2


def test_dimension_mismatch_flag(wk_tau12, wk_F12):
    res = intersection_number(CorrelatorSpec.of([0, 0]), wk_tau12, wk_F12)
    assert res.value == 0 and res.genus is None and not res.dimension_ok


def test_degree_guard(wk_tau12, wk_F12):
    with pytest.raises(DegreeExceededError):
        intersection_number(CorrelatorSpec.of([0, 0, 6]), wk_tau12, wk_F12)


# ---------------------------------------------------------------------------
# differential identities
# ---------------------------------------------------------------------------


def test_string_equation_wk(wk_tau12):
    rep = verify_string_equation(wk_tau12)
    assert rep.passed
    assert rep.bound == 11


def test_string_equation_fails_on_example(example_tau_c1):
    rep = verify_string_equation(example_tau_c1)
    assert not rep.passed  # expected-fail fixture: not the string-equation solution


def test_string_recursion_wk(wk_tau12):
    assert verify_string_recursion(wk_tau12).passed


def test_dimension_filter_wk(wk_tau12):
    assert verify_dimension_filter(wk_tau12).passed


def test_kdv_flow1_wk(wk_tau12):
    rep = verify_kdv_flow(wk_tau12, 1)
    assert rep.passed
    assert rep.bound >= 6


def test_kdv_flow2_wk(wk_tau12):
    rep = verify_kdv_flow(wk_tau12, 2)
    assert rep.passed
    assert rep.bound >= 4


def test_kdv_flow1_example(example_tau_c1):
    assert verify_kdv_flow(example_tau_c1, 1).passed


def test_kdv_flow_degree_guard(wk_affine31):
    shallow = tau_truncated(wk_affine31, 5)
    with pytest.raises(DegreeExceededError):
        verify_kdv_flow(shallow, 2)  # flow 2 consumes 7 degrees of reliability


def test_example_u_matches_closed_form(example_tau_c1):
    """u = d^2 log tau agrees with the closed rational form
    -3 c t0 (c (t0^3 + 2 t1) - 6) / (c (t0^3 - t1) + 3)^2  for c = 1,
    checked by cross-multiplying inside the reliable window."""
    F_ = free_energy(example_tau_c1)
    u = F_.derivative(0).derivative(0)
    t0 = GradedPoly.variable("t", 0)
    t1 = GradedPoly.variable("t", 1)
    t0cubed = t0 * t0 * t0
    denom = t0cubed - t1 + GradedPoly.const("t", 3)
    numer = (t0cubed + t1.scale(2) - GradedPoly.const("t", 6)) * t0.scale(-3)
    residual = u * denom * denom - numer
    assert residual.bound is not None and residual.bound >= 8
    assert residual.is_zero()


# ---------------------------------------------------------------------------
# initial data
# ---------------------------------------------------------------------------


def test_initial_data_wk(wk_tau12):
    values = initial_data(wk_tau12, 10)
    assert values[0] == 0 and values[1] == 1
    assert all(v == 0 for v in values[2:])


def test_initial_data_example():
    import math

    for c in (F(1), F(-2, 3), F(5)):
        t = tau_truncated(example_table(c), 12)
        values = initial_data(t, 10)
        expected_series = {1: 2 * c, 4: F(-5, 3) * c**2, 7: F(8, 9) * c**3, 10: F(-11, 27) * c**4}
        for n in range(11):
            assert values[n] == expected_series.get(n, F(0)) * math.factorial(n)


def test_initial_data_trivial_tau():
    table = AffineTable(11, 11, {}, "grassmann")
    t = tau_truncated(table, 12)
    assert initial_data(t, 10) == [F(0)] * 11


def test_initial_data_degree_guard(wk_tau12):
    with pytest.raises(DegreeExceededError):
        initial_data(wk_tau12, 11)
