import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lorentz_harmonics.principal_series import (
    EXACT_J_LIMIT,
    CoefficientIndex,
    EpsilonDomainError,
    IndexRangeError,
    PrincipalSeriesLabel,
    admissible_pairs,
    boundary_ratio_test,
    diagonal_coefficient,
    duc_hieu_general,
    evaluation_path,
    predicted_boundary_ratio,
    predicted_diagonal_ratio,
    ratio_test,
)


def rel_between(a, b) -> float:
    return abs(cmath.exp(complex(a.log_mag - b.log_mag, a.phase - b.phase)) - 1.0)


# --------------------------------------------------------------------- types

def test_simple_label_constructor():
    lab = PrincipalSeriesLabel.simple(4, 0.5 + 0.25j)
    assert lab.k == 4
    assert lab.rho == (0.5 + 0.25j) * 4


def test_coefficient_index_validation():
    CoefficientIndex(3, 3, 2, 2)
    with pytest.raises(IndexRangeError):
        CoefficientIndex(3, 3, 4, 4)
    with pytest.raises(IndexRangeError):
        CoefficientIndex(3, 5, 0, 4)
    with pytest.raises(IndexRangeError):
        CoefficientIndex(-1, 1, 0, 0)


def test_evaluation_path_switch():
    assert evaluation_path(EXACT_J_LIMIT) == "exact"
    assert evaluation_path(EXACT_J_LIMIT + 1) == "asymptotic"


# ---------------------------------------------------------- general formula

def test_general_vanishes_off_diagonal():
    for j in range(0, 4):
        lab = PrincipalSeriesLabel.simple(j, 0.3)
        for m in range(-j, j + 1):
            for n in range(-j, j + 1):
                if m == n:
                    continue
                val = duc_hieu_general(lab, CoefficientIndex(j, j, m, n), 2.0)
                assert val.is_zero


def test_double_sum_collapses_at_top_weight():
    for j in range(0, 7):
        lab = PrincipalSeriesLabel.simple(j, 0.0)
        for m in range(-j, j + 1):
            pairs = admissible_pairs(lab, CoefficientIndex.diagonal(j, m))
            assert pairs == [(0, 0)]
    # away from the top weight the sum has genuine support
    lab = PrincipalSeriesLabel(k=1, rho=0.0)
    pairs = admissible_pairs(lab, CoefficientIndex(3, 3, 0, 0))
    assert len(pairs) > 1


def test_general_at_origin_is_one():
    lab = PrincipalSeriesLabel(k=0, rho=0.0)
    val = duc_hieu_general(lab, CoefficientIndex(0, 0, 0, 0), 1.0)
    assert val.to_complex() == pytest.approx(1.0, abs=1e-13)


def test_general_matches_diagonal_formula_small_j():
    for j in range(1, 5):
        for m in (-j, 0, min(1, j)):
            for tau in (0.0, 0.3, 1 + 0.2j):
                for eps in (0.5, 2.0):
                    lab = PrincipalSeriesLabel.simple(j, tau)
                    dh = duc_hieu_general(lab, CoefficientIndex.diagonal(j, m), eps)
                    dg = diagonal_coefficient(j, m, tau, eps)
                    assert rel_between(dh, dg) < 1e-9


def test_general_epsilon_domain():
    lab = PrincipalSeriesLabel.simple(2, 0.0)
    with pytest.raises(EpsilonDomainError):
        duc_hieu_general(lab, CoefficientIndex.diagonal(2, 0), 0.0)
    with pytest.raises(IndexRangeError):
        duc_hieu_general(PrincipalSeriesLabel(k=5, rho=0.0), CoefficientIndex(3, 3, 0, 0), 2.0)


# -------------------------------------------------------- diagonal coefficient

def test_diagonal_unit_boost_is_one():
    for j in (0, 1, 5, 40):
        for m in (-j, 0, j):
            for tau in (0.0, 0.5, 1 + 0.2j):
                v = diagonal_coefficient(j, m, tau, 1.0)
                assert v.to_complex() == pytest.approx(1.0, abs=1e-13)


def test_diagonal_frozen_value():
    # independent oracle: 16 * 2F1(2,2;4;-15) via the plain-float Pfaff loop
    w = 15.0 / 16.0
    term, total = 1.0, 1.0
    for n in range(5000):
        term *= (2 + n) * (2 + n) / ((4 + n) * (n + 1)) * w
        total += term
        if term < 1e-18 * total:
            break
    oracle = 16.0 * total / 256.0
    got = diagonal_coefficient(1, 0, 0.0, 2.0).to_complex().real
    assert got == pytest.approx(oracle, rel=1e-12)
    assert got == pytest.approx(0.4873673465763917, rel=1e-12)


def test_diagonal_j0_value():
    # eps^2 * 2F1(1,1;2;1-eps^4) = eps^2 * (-ln eps^4)/(1-eps^4)
    eps = 2.0
    want = eps**2 * (-4.0 * math.log(eps)) / (1.0 - eps**4)
    assert diagonal_coefficient(0, 0, 0.0, eps).to_complex().real == pytest.approx(
        want, rel=1e-12
    )


def test_diagonal_index_and_domain_errors():
    with pytest.raises(IndexRangeError):
        diagonal_coefficient(1, 5, 0.0, 2.0)
    with pytest.raises(IndexRangeError):
        diagonal_coefficient(-1, 0, 0.0, 2.0)
    with pytest.raises(EpsilonDomainError):
        diagonal_coefficient(1, 0, 0.0, 0.0)


def test_diagonal_methods_agree_at_moderate_j():
    exact = diagonal_coefficient(48, 0, 0.0, 2.0, method="exact")
    asym = diagonal_coefficient(48, 0, 0.0, 2.0, method="asymptotic")
    assert rel_between(exact, asym) < 0.02
    with pytest.raises(ValueError):
        diagonal_coefficient(4, 0, 0.0, 2.0, method="magic")


def test_diagonal_magnitude_bookkeeping_for_imaginary_tau():
    # |eps^{i tau j}| = eps^{-Im(tau) j}; with tau = i omega the remaining 2F1
    # has real parameters, so the magnitude splits exactly
    from lorentz_harmonics.special import hyp2f1

    j, m, omega, eps = 6, 1, 0.4, 2.0
    v = diagonal_coefficient(j, m, 1j * omega, eps)
    f = hyp2f1(j + 1 - 0.5 * omega * j, m + j + 1, 2 * j + 2, 1.0 - eps**4)
    want = (2 * (m + j + 1) - omega * j) * math.log(eps) + f.log_mag
    assert v.log_mag == pytest.approx(want, rel=1e-12)


# ----------------------------------------------------------------- ratio tests

def test_predicted_ratio_values():
    assert predicted_diagonal_ratio(2.0) == pytest.approx(16.0 / 25.0)
    assert predicted_boundary_ratio("m_equals_j", 2.0) == pytest.approx(4.0 / 25.0)
    assert predicted_boundary_ratio("m_equals_0", 2.0) == pytest.approx(16.0 / 25.0)
    with pytest.raises(ValueError):
        predicted_boundary_ratio("diagonal", 2.0)


@given(st.floats(min_value=0.05, max_value=20.0).filter(lambda e: abs(e - 1) > 1e-6))
def test_predicted_ratio_inversion_invariance(eps):
    assert predicted_diagonal_ratio(eps) == pytest.approx(
        predicted_diagonal_ratio(1.0 / eps), rel=1e-12
    )
    assert predicted_diagonal_ratio(eps) < 1.0


def test_predicted_boundary_ratios_below_one_on_sample():
    for eps in (0.2, 0.5, 2.0, 5.0):
        assert predicted_boundary_ratio("m_equals_j", eps) < 1.0
        assert predicted_boundary_ratio("m_equals_0", eps) < 1.0


def test_ratio_test_matches_prediction():
    rep = ratio_test(0, 0.0, 2.0, 200)
    assert rep.predicted_limit == pytest.approx(0.64)
    assert rep.relative_deviation < 0.02
    assert rep.params["j_start"] == 1
    # deviation shrinks between j = 50 and j = 200
    rep50 = ratio_test(0, 0.0, 2.0, 50)
    assert rep.relative_deviation < rep50.relative_deviation


def test_ratio_test_tau_independence_for_real_tau():
    limits = [ratio_test(0, tau, 2.0, 200).empirical_limit for tau in (0.0, 0.5, 2.0)]
    base = limits[0]
    for lim in limits[1:]:
        assert abs(lim - base) / base < 0.02


def test_ratio_test_informational_flag():
    rep = ratio_test(0, 1j, 2.0, 60)
    assert rep.params["informational"] is True
    rep = ratio_test(0, 0.5, 2.0, 60)
    assert rep.params["informational"] is False


def test_ratio_test_preconditions():
    with pytest.raises(EpsilonDomainError):
        ratio_test(0, 0.0, 1.0, 100)
    with pytest.raises(ValueError):
        ratio_test(5, 0.0, 2.0, 10)


def test_ratio_test_workers_deterministic():
    a = ratio_test(1, 0.3, 0.5, 80, workers=1)
    b = ratio_test(1, 0.3, 0.5, 80, workers=4)
    assert a.terms == b.terms
    assert a.partial_sums == b.partial_sums


def test_boundary_tracks_near_prediction():
    bj = boundary_ratio_test("m_equals_j", 0.0, 2.0, 200)
    assert bj.predicted_limit == pytest.approx(0.16)
    assert bj.relative_deviation < 0.03
    b0 = boundary_ratio_test("m_equals_0", 0.0, 2.0, 200)
    assert b0.predicted_limit == pytest.approx(0.64)
    assert b0.relative_deviation < 0.03
    with pytest.raises(ValueError):
        boundary_ratio_test("m_equals_2", 0.0, 2.0, 100)
