"""Quantile machinery against scipy (independent oracle) and published values."""

import math

import pytest
import scipy.stats
from hypothesis import assume, given
from hypothesis import strategies as st

from tailbound import (
    BLR_TAIL_FACTORS,
    BlrParameters,
    DomainError,
    TableLookupError,
    TailFactorQuery,
    blr_h_from_kurtosis,
    blr_kurtosis,
    blr_tail_factor,
    g_from_mean_reversion_label,
    normal_cdf,
    normal_quantile,
    student_t_cdf,
    student_t_kurtosis,
    student_t_quantile,
)

import goldens

probabilities = st.floats(min_value=1e-9, max_value=1.0 - 1e-9)


# ---------------------------------------------------------------------------
# normal quantile
# ---------------------------------------------------------------------------


def test_normal_one_in_million():
    assert normal_quantile(1 - 1e-6) == pytest.approx(4.753, abs=1e-3)


def test_normal_centre_and_anchor():
    assert normal_quantile(0.5) == 0.0
    # frozen value derived by bisection on an erfc-based CDF
    assert normal_quantile(0.9999) == pytest.approx(3.719016485455709, abs=1e-9)


@given(probabilities)
def test_normal_matches_scipy(p):
    assert normal_quantile(p) == pytest.approx(
        scipy.stats.norm.ppf(p), abs=1e-10, rel=1e-10
    )


@given(probabilities)
def test_normal_round_trip(p):
    assert abs(normal_cdf(normal_quantile(p)) - p) < 1e-9


@given(st.floats(min_value=1e-4, max_value=0.5))
def test_normal_symmetry(p):
    # p floored at 1e-4: beyond that the float representation of 1 - p
    # moves the upper quantile by more than this tolerance
    assert normal_quantile(p) == pytest.approx(-normal_quantile(1 - p), abs=1e-12)


@given(st.floats(min_value=1e-9, max_value=1e-4))
def test_normal_symmetry_deep_tail(p):
    # limited by ulp(1 - p)/pdf, not by the solver
    assert normal_quantile(p) == pytest.approx(-normal_quantile(1 - p), abs=5e-8)


def test_normal_rejects_endpoints():
    for p in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(DomainError):
            normal_quantile(p)


# ---------------------------------------------------------------------------
# Student-t quantile
# ---------------------------------------------------------------------------


def test_student_t_published_tail_factors():
    for dof, row in goldens.STUDENT_T_TAIL_FACTORS.items():
        for n, want in row.items():
            assert student_t_quantile(1 - 1 / n, dof) == pytest.approx(want, abs=0.01)


def test_student_t_centre():
    assert student_t_quantile(0.5, 7) == 0.0


@given(
    probabilities,
    st.integers(min_value=1, max_value=200),
)
def test_student_t_matches_scipy(p, dof):
    mine = student_t_quantile(p, dof)
    ref = scipy.stats.t.ppf(p, dof)
    assert mine == pytest.approx(ref, abs=1e-8, rel=1e-8)


@given(
    probabilities,
    st.sampled_from([1, 2, 3, 4, 5, 6, 12, 30, 100]),
)
def test_student_t_round_trip(p, dof):
    assert abs(student_t_cdf(student_t_quantile(p, dof), dof) - p) < 1e-9


@given(
    st.floats(min_value=0.501, max_value=1 - 1e-9),
    st.floats(min_value=1e-6, max_value=0.4),
    st.sampled_from([3, 5, 9]),
)
def test_student_t_monotone(p, gap, dof):
    hi = p + gap * (1 - p)
    assert student_t_quantile(hi, dof) > student_t_quantile(p, dof)


def test_student_t_heavier_than_normal_converges():
    p = 0.99
    assert student_t_quantile(p, 3) > normal_quantile(p)
    assert student_t_quantile(p, 1_000_000) == pytest.approx(
        normal_quantile(p), abs=0.01
    )


def test_student_t_cdf_matches_scipy_grid():
    for dof in (1, 2, 3, 6, 50):
        for x in (-100.0, -5.5, -1.0, 0.0, 0.25, 2.0, 30.0, 250.0):
            assert student_t_cdf(x, dof) == pytest.approx(
                scipy.stats.t.cdf(x, dof), abs=1e-12, rel=1e-10
            )


def test_student_t_rejects_bad_inputs():
    with pytest.raises(DomainError):
        student_t_quantile(0.5, 0)
    with pytest.raises(DomainError):
        student_t_quantile(0.5, 2.5)
    with pytest.raises(DomainError):
        student_t_quantile(1.0, 5)


# ---------------------------------------------------------------------------
# Student-t kurtosis
# ---------------------------------------------------------------------------


def test_student_t_kurtosis_conventions():
    assert student_t_kurtosis(5, convention="excess") == pytest.approx(6.0)
    assert student_t_kurtosis(6, convention="excess") == pytest.approx(3.0)
    assert student_t_kurtosis(5, convention="raw") == pytest.approx(9.0)
    assert student_t_kurtosis(6) == pytest.approx(6.0)  # raw is the default


def test_student_t_kurtosis_rejects_low_dof():
    for dof in (1, 2, 3, 4):
        with pytest.raises(DomainError):
            student_t_kurtosis(dof)
    with pytest.raises(DomainError):
        student_t_kurtosis(6, convention="other")


# ---------------------------------------------------------------------------
# tail-factor queries
# ---------------------------------------------------------------------------


def test_query_probability_level():
    q = TailFactorQuery(horizon_n=250, model="normal")
    assert q.probability == pytest.approx(0.996, abs=1e-12)
    assert q.tail_factor() == pytest.approx(normal_quantile(0.996), abs=0.0)


def test_query_dispatch_student_t():
    q = TailFactorQuery(horizon_n=1_000_000, model="student-t", dof=3)
    assert q.tail_factor() == pytest.approx(103.299, abs=0.01)


def test_query_validation():
    with pytest.raises(DomainError):
        TailFactorQuery(horizon_n=1.5, model="normal")
    with pytest.raises(DomainError):
        TailFactorQuery(horizon_n=250, model="student-t")  # dof missing
    with pytest.raises(DomainError):
        TailFactorQuery(horizon_n=250, model="normal", dof=5)
    with pytest.raises(DomainError):
        TailFactorQuery(horizon_n=250, model="cauchy")


# ---------------------------------------------------------------------------
# BLR model
# ---------------------------------------------------------------------------


def test_blr_kurtosis_anchors():
    assert blr_kurtosis(0.0, 1.0) == pytest.approx(3.0, abs=0.0)
    assert blr_kurtosis(math.sqrt(2 * math.log(2.0)), 1.0) == pytest.approx(6.0, rel=1e-12)


@given(
    st.floats(min_value=1e-6, max_value=10.0),
    st.floats(min_value=1e-2, max_value=5.0),
)
def test_blr_round_trip(g, h):
    # h is kept away from 0: kappa - 3 ~ 3h^2/2g must stay resolvable
    # above the ulp of 3 for the inverse to recover h at this precision
    assume(h * h / (2.0 * g) < 700.0)
    kappa = blr_kurtosis(h, g)
    assert blr_h_from_kurtosis(kappa, g) == pytest.approx(h, rel=1e-9, abs=1e-12)


def test_blr_kurtosis_overflow_is_typed():
    with pytest.raises(DomainError):
        blr_kurtosis(1.0, 1e-6)


def test_blr_six_month_round_trip():
    g = g_from_mean_reversion_label("6m")
    h = blr_h_from_kurtosis(16.0, g)
    assert blr_kurtosis(h, g) == pytest.approx(16.0, rel=1e-12)
    params = BlrParameters.from_kurtosis(16.0, g, g_inverse_label="6m")
    assert params.h == pytest.approx(h, abs=0.0)


def test_blr_rejects_bad_arguments():
    with pytest.raises(DomainError):
        blr_kurtosis(1.0, 0.0)
    with pytest.raises(DomainError):
        blr_kurtosis(-0.5, 1.0)
    with pytest.raises(DomainError):
        blr_h_from_kurtosis(2.9, 1.0)
    with pytest.raises(DomainError):
        g_from_mean_reversion_label("6 months")
    with pytest.raises(DomainError):
        BlrParameters(g=1.0, h=1.0, kappa=3.0)  # inconsistent triple


def test_blr_table_matches_reference():
    for label, row in goldens.BLR_GRID.items():
        for kappa, want in zip(goldens.KAPPAS, row):
            assert BLR_TAIL_FACTORS[label][int(kappa)] == want
            assert blr_tail_factor(label, kappa) == want


def test_blr_table_lookup_errors():
    with pytest.raises(TableLookupError):
        blr_tail_factor("7m", 7.0)
    with pytest.raises(TableLookupError):
        blr_tail_factor("6m", 8.0)
