"""Core estimator tests: weights, extreme moments, GMD/Gini, GIM."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from gimtools import (
    EmptySample,
    EnumerationTooLarge,
    NegativeIncome,
    NonFinite,
    OrderExceedsSample,
    SampleTooSmall,
    ZeroMean,
    extended_gini,
    gim_edf,
    gim_ustat,
    gim_ustat_naive,
    gini_ustat,
    gmd,
    make_sample,
    max_moment_u,
    min_moment_u,
    subset_weights,
)
from gimtools.measures import edf_weights

# ---------------------------------------------------------------------------
# strategies


def incomes(min_size=2, max_size=40):
    """Non-negative income vectors with a strictly positive mean.

    Exact zeros are allowed (they are legal incomes); positive entries stay
    above 1e-9 so weighted products cannot round all the way to zero.
    """
    element = st.one_of(
        st.just(0.0), st.floats(min_value=1e-9, max_value=1e6, allow_nan=False)
    )
    return st.lists(element, min_size=min_size, max_size=max_size).filter(
        lambda xs: sum(xs) > 0.0
    )


# ---------------------------------------------------------------------------
# sample container


def test_make_sample_sorts_and_freezes():
    s = make_sample([3.0, 1.0, 2.0])
    assert list(s.values) == [1.0, 2.0, 3.0]
    assert s.n == len(s) == 3
    assert s.mean() == 2.0
    with pytest.raises(ValueError):
        s.values[0] = 99.0


def test_make_sample_rejects_bad_input():
    with pytest.raises(EmptySample):
        make_sample([])
    with pytest.raises(NegativeIncome):
        make_sample([1.0, -0.5])
    with pytest.raises(NonFinite):
        make_sample([1.0, np.nan])
    with pytest.raises(NonFinite):
        make_sample([1.0, np.inf])


# ---------------------------------------------------------------------------
# subset weights


def test_subset_weights_small_case():
    w_max, w_min = subset_weights(3, 2)
    assert_allclose(w_max, [0.0, 1 / 3, 2 / 3], rtol=0, atol=0)
    assert_allclose(w_min, [2 / 3, 1 / 3, 0.0], rtol=0, atol=0)


@pytest.mark.parametrize("n,v", [(2, 1), (5, 2), (10, 3), (25, 7), (200, 2), (1000, 5)])
def test_subset_weights_match_binomials(n, v):
    w_max, w_min = subset_weights(n, v)
    cnv = math.comb(n, v)
    expect = np.array([math.comb(i - 1, v - 1) / cnv for i in range(1, n + 1)])
    assert_allclose(w_max, expect, rtol=1e-13)
    assert np.all(w_min == w_max[::-1])
    assert_allclose(w_max.sum(), 1.0, rtol=1e-12)
    assert_allclose(w_min.sum(), 1.0, rtol=1e-12)


def test_subset_weights_large_n_no_overflow():
    # factorial-free recurrence must survive n far beyond comb() comfort
    w_max, _ = subset_weights(10**6, 4)
    assert np.isfinite(w_max).all()
    assert_allclose(w_max.sum(), 1.0, rtol=1e-9)


def test_subset_weights_rejects_bad_order():
    with pytest.raises(OrderExceedsSample):
        subset_weights(3, 4)
    with pytest.raises(OrderExceedsSample):
        subset_weights(3, 0)


# ---------------------------------------------------------------------------
# extreme moments


def test_moments_small_case():
    s = make_sample([1.0, 2.0, 3.0])
    assert_allclose(max_moment_u(s, 2), 8 / 3, rtol=1e-14)
    assert_allclose(min_moment_u(s, 2), 4 / 3, rtol=1e-14)


def test_moments_v1_is_the_mean_twice():
    s = make_sample([4.0, 1.0, 7.0, 2.0])
    assert max_moment_u(s, 1) == min_moment_u(s, 1)
    assert_allclose(max_moment_u(s, 1), s.mean(), rtol=1e-14)


def test_moments_v_equals_n_are_the_extremes():
    s = make_sample([5.0, 1.0, 9.0, 4.0])
    assert_allclose(max_moment_u(s, 4), 9.0, rtol=1e-14)
    assert_allclose(min_moment_u(s, 4), 1.0, rtol=1e-14)


# ---------------------------------------------------------------------------
# GMD / Gini


def test_gmd_small_case():
    assert_allclose(gmd(make_sample([1.0, 2.0, 3.0])), 4 / 3, rtol=1e-14)


def test_gmd_needs_two_points():
    with pytest.raises(SampleTooSmall):
        gmd(make_sample([1.0]))


def test_gini_small_case():
    assert_allclose(gini_ustat(make_sample([1.0, 2.0, 3.0])), 1 / 3, rtol=1e-14)


def test_gini_zero_mean_rejected():
    with pytest.raises(ZeroMean):
        gini_ustat(make_sample([0.0, 0.0]))


@given(incomes())
@settings(max_examples=200, deadline=None)
def test_gini_identity(xs):
    """gim_ustat at v=2 is the Gini index, to near machine precision."""
    s = make_sample(xs)
    assert abs(gim_ustat(s, 2).value - gini_ustat(s)) <= 1e-12


# ---------------------------------------------------------------------------
# GIM U-statistic


def test_gim_ustat_small_cases():
    s = make_sample([1.0, 2.0, 3.0])
    assert_allclose(gim_ustat(s, 2).value, 1 / 3, rtol=1e-14)
    assert_allclose(gim_ustat(s, 3).value, 1 / 2, rtol=1e-14)


def test_gim_ustat_fields():
    est = gim_ustat([1.0, 2.0, 3.0], 2)
    assert est.kind == "ustat"
    assert est.n == 3 and est.v == 2
    assert_allclose(est.numerator, 4 / 3, rtol=1e-14)
    assert_allclose(est.denominator, 4.0, rtol=1e-14)


def test_gim_ustat_v1_exactly_zero():
    assert gim_ustat([3.0, 1.0, 4.0, 1.5], 1).value == 0.0


@pytest.mark.parametrize("n", [2, 3, 7, 19, 64, 101])
def test_gim_constant_sample_exactly_zero(n):
    s = make_sample(np.full(n, math.pi))
    for v in {1, 2, min(3, n), min(5, n)}:
        assert gim_ustat(s, v).value == 0.0
        assert gim_ustat(s, v).numerator == 0.0


def test_gim_all_zero_sample_rejected():
    with pytest.raises(ZeroMean):
        gim_ustat([0.0, 0.0, 0.0], 2)


@given(incomes(), st.integers(min_value=1, max_value=6))
@settings(max_examples=200, deadline=None)
def test_gim_ustat_bounds(xs, v):
    """The estimate never leaves [0, 1], even in floating point."""
    s = make_sample(xs)
    value = gim_ustat(s, min(v, s.n)).value
    assert 0.0 <= value <= 1.0


@given(incomes(), st.integers(min_value=1, max_value=6))
@settings(max_examples=150, deadline=None)
def test_gim_ustat_decomposition(xs, v):
    """numerator/denominator are exactly the moment difference and sum."""
    s = make_sample(xs)
    v = min(v, s.n)
    est = gim_ustat(s, v)
    e_max = max_moment_u(s, v)
    e_min = min_moment_u(s, v)
    assert est.numerator == max(e_max - e_min, 0.0)
    assert est.denominator == e_max + e_min


@given(incomes(), st.floats(min_value=1e-3, max_value=1e3), st.integers(min_value=1, max_value=5))
@settings(max_examples=150, deadline=None)
def test_gim_scale_invariance(xs, c, v):
    s = make_sample(xs)
    v = min(v, s.n)
    scaled = make_sample(np.asarray(xs) * c)
    assert abs(gim_ustat(scaled, v).value - gim_ustat(s, v).value) <= 1e-12
    assert abs(gim_edf(scaled, v).value - gim_edf(s, v).value) <= 1e-12


@given(incomes(min_size=3, max_size=20), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_gim_permutation_invariance(xs, rnd):
    shuffled = list(xs)
    rnd.shuffle(shuffled)
    for v in (1, 2, 3):
        assert gim_ustat(xs, v).value == gim_ustat(shuffled, v).value
        assert gim_edf(xs, v).value == gim_edf(shuffled, v).value


@given(incomes(min_size=2, max_size=30))
@settings(max_examples=150, deadline=None)
def test_gim_monotone_in_order(xs):
    """Widening the subsets can only spread the extremes further apart.

    Observed, not proven, for the underlying measure; for the U-statistic it
    follows from E(max) rising and E(min) falling in v.  Should a counter-
    example ever surface here, demote this to a logged observation.
    """
    s = make_sample(xs)
    values = [gim_ustat(s, v).value for v in range(1, min(s.n, 6) + 1)]
    for lo, hi in zip(values, values[1:]):
        assert hi >= lo - 1e-12


# ---------------------------------------------------------------------------
# brute-force oracle


@given(incomes(min_size=2, max_size=12))
@settings(max_examples=200, deadline=None)
def test_gim_matches_enumeration(xs):
    """Weighted order statistics agree with literal subset enumeration."""
    s = make_sample(xs)
    for v in range(1, s.n + 1):
        fast = gim_ustat(s, v)
        slow = gim_ustat_naive(s, v)
        assert abs(fast.value - slow.value) <= 1e-10
        assert abs(fast.numerator - slow.numerator) <= 1e-10 * max(1.0, abs(slow.numerator))
        assert abs(fast.denominator - slow.denominator) <= 1e-10 * max(1.0, abs(slow.denominator))


def test_moments_match_enumeration():
    rng = np.random.default_rng(42)
    for _ in range(25):
        n = int(rng.integers(2, 13))
        xs = rng.lognormal(0.0, 1.0, n)
        s = make_sample(xs)
        for v in range(1, n + 1):
            slow = gim_ustat_naive(s, v)
            e_max, e_min = max_moment_u(s, v), min_moment_u(s, v)
            assert abs((e_max - e_min) - slow.numerator) <= 1e-10 * max(1.0, slow.numerator)
            assert abs((e_max + e_min) - slow.denominator) <= 1e-10 * slow.denominator


def test_naive_enumeration_guard():
    s = make_sample(np.ones(80))
    with pytest.raises(EnumerationTooLarge):
        gim_ustat_naive(s, 8)  # C(80, 8) is far past the enumeration budget


# ---------------------------------------------------------------------------
# EDF estimator


def test_edf_weights_small_case():
    w_num, w_den = edf_weights(3, 2)
    # (v/n) * ((i/n)^(v-1) -/+ ((n-i)/n)^(v-1)), i = 1..3
    assert_allclose(w_num, [2 / 3 * (1 / 3 - 2 / 3), 2 / 3 * (2 / 3 - 1 / 3), 2 / 3], rtol=1e-14)
    assert_allclose(w_den, [2 / 3 * (1 / 3 + 2 / 3), 2 / 3 * (2 / 3 + 1 / 3), 2 / 3], rtol=1e-14)


def test_gim_edf_small_cases():
    s = make_sample([1.0, 2.0, 3.0])
    assert_allclose(gim_edf(s, 2).value, 5 / 9, rtol=1e-14)
    assert_allclose(gim_edf(s, 3).value, 5 / 7, rtol=1e-14)
    assert gim_edf(s, 2).kind == "edf"


def test_gim_edf_v1_exactly_zero():
    assert gim_edf([2.0, 5.0, 11.0], 1).value == 0.0


@pytest.mark.parametrize("n", [2, 5, 17])
@pytest.mark.parametrize("v", [2, 3])
def test_gim_edf_constant_sample_value(n, v):
    """The plug-in estimator does NOT vanish on constant samples.

    Its numerator weights sum to (v/n)·(n/n)^(v-1) > 0, so a constant sample
    c gives n^(v-1) / (2·Σ i^(v-1) − n^(v-1)) — e.g. exactly 1/n at v=2.
    """
    if v > n:
        pytest.skip("order exceeds sample")
    s = make_sample(np.full(n, 7.5))
    expect = n ** (v - 1) / (2 * sum(i ** (v - 1) for i in range(1, n + 1)) - n ** (v - 1))
    assert_allclose(gim_edf(s, v).value, expect, rtol=1e-12)
    if v == 2:
        assert_allclose(gim_edf(s, v).value, 1 / n, rtol=1e-12)


@given(incomes(min_size=2, max_size=60))
@settings(max_examples=150, deadline=None)
def test_gim_edf_ustat_link_at_v2(xs):
    """At v=2 the two estimators obey edf = ((n-1)·ustat + 1)/n exactly."""
    s = make_sample(xs)
    u = gim_ustat(s, 2).value
    e = gim_edf(s, 2).value
    assert abs(e - ((s.n - 1) * u + 1.0) / s.n) <= 1e-12


def test_estimator_agreement_gap_shrinks():
    """|ustat − edf| behaves like C/n along growing seeded samples."""
    rng = np.random.default_rng(7)
    base = rng.exponential(size=6400)
    gaps = {}
    for n in (100, 200, 400, 800):
        s = make_sample(base[:n])
        for v in (2, 3):
            gaps[(n, v)] = abs(gim_ustat(s, v).value - gim_edf(s, v).value)
    for v in (2, 3):
        c = gaps[(100, v)] * 100  # fitted constant at the smallest size
        for n in (200, 400, 800):
            assert gaps[(n, v)] <= 2.0 * c / n
        assert gaps[(800, v)] < gaps[(100, v)]


def test_order_validation_applies_to_both_estimators():
    s = make_sample([1.0, 2.0])
    for fn in (gim_ustat, gim_edf):
        with pytest.raises(OrderExceedsSample):
            fn(s, 3)
        with pytest.raises(OrderExceedsSample):
            fn(s, 0)


# ---------------------------------------------------------------------------
# extended Gini premia


def test_extended_gini_small_case():
    rep = extended_gini(make_sample([1.0, 2.0, 3.0]), 2)
    assert_allclose(rep.mean, 2.0, rtol=1e-14)
    assert_allclose(rep.starting_bid, 4 / 3, rtol=1e-14)
    assert_allclose(rep.bin_price, 8 / 3, rtol=1e-14)
    assert_allclose(rep.risk_premium, 2 / 3, rtol=1e-14)
    assert_allclose(rep.gain_premium, 2 / 3, rtol=1e-14)
    assert_allclose(rep.price_spread_width, 4 / 3, rtol=1e-14)


@given(incomes(min_size=2, max_size=30), st.integers(min_value=2, max_value=5))
@settings(max_examples=100, deadline=None)
def test_extended_gini_consistency(xs, v):
    s = make_sample(xs)
    v = min(v, s.n)
    rep = extended_gini(s, v)
    assert rep.starting_bid <= rep.mean * (1 + 1e-12) + 1e-12
    assert rep.bin_price >= rep.mean * (1 - 1e-12) - 1e-12
    assert rep.price_spread_width >= 0.0
    assert_allclose(
        rep.price_spread_width, gim_ustat(s, v).numerator, rtol=1e-12, atol=1e-12
    )
