#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for permutation averages and the b-norm."""

from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from orlicz_embedding import (
    LengthMismatch,
    McEstimate,
    SamplingMode,
    TooLargeForExact,
    WeightSequence,
    ave_max_matrix,
    ave_max_tensor,
    ave_quadratic,
    b_norm,
    c_n,
    c_n_exact,
    dual_from_b,
    lemma6_bracket,
    outer_tensor,
    rearrange,
    sqrt_prefix_b,
)


def test_c_n():
    assert c_n_exact(1) == 1
    assert c_n_exact(3) == Fraction(2, 3)
    assert c_n(2) == 0.5
    assert abs(c_n(20) - (1.0 - math.exp(-1.0))) < 1e-12
    with pytest.raises(ValueError):
        c_n(0)


def test_rearrange():
    table = rearrange([[1.0, 4.0], [3.0, 2.0]])
    np.testing.assert_array_equal(table.s, [4.0, 3.0, 2.0, 1.0])
    assert table.top_mean(2) == 3.5
    assert table.top_mean(2, divisor=4) == 1.75


def test_sampling_mode():
    assert SamplingMode.coerce(None).is_exact
    assert SamplingMode.coerce("exact").is_exact
    mode = SamplingMode.coerce({"kind": "mc", "samples": 100, "seed": 3})
    assert not mode.is_exact
    with pytest.raises(ValueError):
        SamplingMode("sometimes")
    with pytest.raises(ValueError):
        SamplingMode.mc(1)


def test_ave_quadratic():
    assert ave_quadratic([3.0, 4.0], [1.0, 1.0]) == pytest.approx(5.0)
    assert ave_quadratic([1.0, 0.0], [2.0, 1.0]) == pytest.approx(1.5)
    with pytest.raises(LengthMismatch):
        ave_quadratic([1.0, 2.0], [1.0])
    with pytest.raises(TooLargeForExact):
        ave_quadratic(np.ones(11), np.ones(11), n_max=10)


def test_identity_matrix():
    """Ave_π max_i δ(π(i) = i) is the probability of a fixed point."""
    report = ave_max_matrix(np.eye(2))
    assert report.value == pytest.approx(0.5)
    assert report.upper == pytest.approx(1.0)
    assert report.holds()
    report = ave_max_matrix(np.eye(5))
    assert report.value == pytest.approx(c_n(5))
    assert report.lower == pytest.approx(c_n(5))


def test_matrix_bracket(rng):
    for n in range(2, 7):
        for _ in range(5):
            assert ave_max_matrix(rng.random((n, n))).holds(1e-12)


def test_tensor_bracket(rng):
    report = ave_max_tensor(np.ones((3, 3, 3)))
    assert report.value == pytest.approx(1.0)
    assert report.upper == pytest.approx(1.0)
    for n in range(2, 5):
        assert ave_max_tensor(rng.random((n, n, n))).holds(1e-12)
    with pytest.raises(TooLargeForExact):
        ave_max_tensor(np.ones((7, 7, 7)), n_max=6)
    with pytest.raises(ValueError):
        ave_max_tensor(-np.ones((2, 2, 2)))


def test_outer_tensor():
    T = outer_tensor([1.0, -2.0], [3.0, 1.0], [1.0, 0.5])
    assert T.shape == (2, 2, 2)
    assert T[1, 0, 1] == pytest.approx(3.0)
    with pytest.raises(LengthMismatch):
        outer_tensor([1.0], [1.0, 1.0], [1.0, 1.0])


def test_monte_carlo_is_reproducible():
    x = np.arange(1.0, 7.0)
    a = np.linspace(1.0, 0.5, 6)
    first = ave_quadratic(x, a, SamplingMode.mc(5000, 42))
    second = ave_quadratic(x, a, SamplingMode.mc(5000, 42))
    assert isinstance(first, McEstimate)
    assert first.mean == second.mean
    assert first.half_width_99 == second.half_width_99
    assert first.seed == 42


def test_monte_carlo_calibration(rng):
    """The 99% intervals cover the exact average for nearly every seed."""
    x = rng.standard_normal(6)
    a = np.sort(rng.uniform(0.05, 1.0, 6))[::-1]
    exact = ave_quadratic(x, a)
    covered = sum(
        ave_quadratic(x, a, SamplingMode.mc(4000, seed)).covers(exact)
        for seed in range(100)
    )
    assert covered >= 95


def test_monte_carlo_matrix(rng):
    A = rng.random((5, 5))
    exact = ave_max_matrix(A).value
    report = ave_max_matrix(A, SamplingMode.mc(20000, 7))
    assert report.estimate is not None
    assert report.estimate.covers(exact, slack=1e-3)


def test_b_norm_examples():
    assert b_norm([1.0, 1.0], np.ones(4)) == pytest.approx(4.0)
    assert b_norm([1.0, 0.0], sqrt_prefix_b(4)) == pytest.approx(4.0)
    assert b_norm([1.0, 1.0], np.ones(4), method="exhaustive") == pytest.approx(4.0)
    with pytest.raises(LengthMismatch):
        b_norm(np.ones(5), np.ones(4))
    with pytest.raises(ValueError):
        b_norm([1.0], np.ones(2), method="guess")


@pytest.mark.parametrize("min_part", [0, 1])
def test_greedy_is_exact(rng, min_part):
    for n in (1, 2, 3, 4):
        for s in (4, 6, 8):
            for _ in range(10):
                x = rng.standard_normal(n)
                b = WeightSequence(np.sort(rng.uniform(0.05, 1.0, s))[::-1])
                greedy = b_norm(x, b, s, "greedy", min_part)
                exhaustive = b_norm(x, b, s, "exhaustive", min_part)
                assert greedy == exhaustive


def test_dual_from_b():
    b = sqrt_prefix_b(4)
    dual = dual_from_b(b)
    for l, value in enumerate(b.prefix_sums, start=1):
        assert dual(value) == pytest.approx(l / 4)


def test_lemma6_bracket(rng):
    for n in (1, 2, 3, 4):
        for s in (4, 6, 8):
            for _ in range(10):
                x = rng.standard_normal(n)
                b = WeightSequence(np.sort(rng.uniform(0.05, 1.0, s))[::-1])
                report = lemma6_bracket(x, b, s)
                assert report.details["b_norm"] == report.lower
                assert report.holds(1e-9 * report.lower)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(-5.0, 5.0, allow_nan=False), min_size=1, max_size=12),
    st.randoms(use_true_random=False),
)
def test_rearrange_ignores_order(values, random):
    shuffled = list(values)
    random.shuffle(shuffled)
    table = rearrange(values)
    np.testing.assert_array_equal(table.s, rearrange(shuffled).s)
    assert np.all(np.diff(table.s) <= 0.0)
    assert table.source_size == len(values)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(-5.0, 5.0, allow_nan=False), min_size=1, max_size=4),
    st.lists(st.floats(0.05, 1.0), min_size=4, max_size=8),
    st.sampled_from([0, 1]),
)
def test_greedy_matches_exhaustive(x, weights, min_part):
    b = WeightSequence(sorted(weights, reverse=True))
    greedy = b_norm(x, b, method="greedy", min_part=min_part)
    exhaustive = b_norm(x, b, method="exhaustive", min_part=min_part)
    assert greedy == pytest.approx(exhaustive, rel=1e-12, abs=1e-12)
