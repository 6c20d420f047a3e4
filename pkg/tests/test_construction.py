#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for the constructions between weights and Orlicz functions."""

import math

import numpy as np
import pytest

from orlicz_embedding import (
    ConcaveProfile,
    DegenerateProfile,
    DensityF,
    LengthMismatch,
    NotDecreasing,
    NotNormalized,
    NotStrictlyIncreasing,
    NotTwoConcave,
    OrliczFunction,
    WeightSequence,
    conjugate_dual,
    cumulative_f,
    f_from_profile,
    knot_corridor,
    knots_from_weights,
    lemma8_limits,
    normalize_dual_at_one,
    orlicz_from_knots,
    product_knots,
    reconstruct_H_check,
    sqrt_prefix_b,
    theorem2_corridor,
    total_mass,
    weights_by_quadrature,
    weights_from_orlicz,
    weights_from_profile,
)

from .conftest import sqrt_cumulative, sqrt_density


def test_weight_sequence():
    a = WeightSequence([3.0, 2.0, 2.0])
    assert a.n == 3
    assert list(a) == [3.0, 2.0, 2.0]
    np.testing.assert_allclose(a.prefix_sums, [3.0, 5.0, 7.0])
    assert WeightSequence.coerce(a) is a


@pytest.mark.parametrize("a", [[1.0, 2.0], [1.0, 0.0], [], [1.0, math.nan]])
def test_bad_weights(a):
    with pytest.raises(NotDecreasing):
        WeightSequence(a)


def test_knots_of_two_ones():
    knots = knots_from_weights([1.0, 1.0])
    np.testing.assert_allclose(knots.t, [0.0, 0.5, 1.0])
    np.testing.assert_allclose(knots.v, [0.0, math.sqrt(0.5), 1.0])


@pytest.mark.parametrize("n", [1, 3, 6])
def test_knots_of_ones(n):
    """a = (1, …, 1) puts the knots on √t."""
    knots = knots_from_weights(np.ones(n))
    levels = np.arange(1, n + 1) / n
    np.testing.assert_allclose(knots(levels), np.sqrt(levels), rtol=1e-14)
    assert knots.is_concave()


def test_orlicz_from_knots():
    dual = orlicz_from_knots(knots_from_weights([2.0, 1.0]))
    assert dual.kind == "piecewise_affine"
    knots = knots_from_weights([2.0, 1.0])
    for level, value in knots.knots[1:]:
        assert dual(value) == pytest.approx(level)
        assert dual.inverse(level) == pytest.approx(value)


def test_orlicz_from_flat_knots():
    with pytest.raises(NotStrictlyIncreasing):
        orlicz_from_knots([(0.5, 1.0), (1.0, 1.0)])


def test_sqrt_prefix_b():
    b = sqrt_prefix_b(5)
    np.testing.assert_allclose(b.prefix_sums, np.sqrt(5.0 * np.arange(1, 6)))
    assert b[0] == pytest.approx(math.sqrt(5.0))


def test_product_knots():
    knots = product_knots([1.0, 1.0], [1.0, 1.0])
    np.testing.assert_allclose(knots.t, [0.0, 0.25, 0.5, 0.75, 1.0])
    np.testing.assert_allclose(knots.v, [0.0, 0.25, 0.5, 0.75, 1.0])
    with pytest.raises(LengthMismatch):
        product_knots([1.0, 1.0], [1.0, 1.0, 1.0])


def test_knot_corridor_of_ones():
    """With a = 1 and the default b both inverses are √t."""
    for row in knot_corridor(np.ones(4)):
        assert row.value == pytest.approx(row.lower * math.sqrt(2.0))
        assert row.holds()


def test_knot_corridor_random(rng):
    for n in (2, 3, 5, 8):
        a = np.sort(rng.uniform(0.05, 1.0, n))[::-1]
        assert all(row.holds(1e-12) for row in knot_corridor(a))


def test_profile_power():
    H = ConcaveProfile.power(0.5)
    assert H(0.25) == pytest.approx(0.5)
    assert H.first(0.25) == pytest.approx(1.0)
    assert H.gap(0.25) == pytest.approx(0.25)
    assert H.validate() is H
    with pytest.raises(ValueError):
        ConcaveProfile.power(1.5)


def test_degenerate_profile():
    H = ConcaveProfile.power(1.0)
    with pytest.raises(DegenerateProfile):
        H.validate()
    with pytest.raises(DegenerateProfile):
        f_from_profile(H, 0.5)


@pytest.mark.parametrize("t", [1e-4, 0.1, 0.3, 0.5, 0.9, 1.0])
def test_density_of_sqrt(sqrt_profile, t):
    assert f_from_profile(sqrt_profile, t) == pytest.approx(
        sqrt_density(t), rel=1e-9, abs=1e-9
    )
    assert cumulative_f(sqrt_profile, t) == pytest.approx(
        sqrt_cumulative(t), rel=1e-9, abs=1e-9
    )


def test_density_values(sqrt_profile):
    F = DensityF(sqrt_profile)
    assert F.F(0.5) == pytest.approx(0.8214, abs=5e-5)
    assert F.F(1.0) == pytest.approx(1.0)
    assert F.F(0.0) == 0.0
    values = F([0.1, 0.2, 0.4, 0.8])
    assert np.all(np.diff(values) < 0)


def test_weights_of_sqrt(sqrt_profile):
    a = weights_from_profile(sqrt_profile, 2)
    F = sqrt_cumulative(0.5)
    np.testing.assert_allclose(a.a, [2.0 * F, 2.0 * (1.0 - F)], rtol=1e-9)
    np.testing.assert_allclose(a.a, [1.643, 0.357], atol=1e-3)


@pytest.mark.parametrize("n", [1, 4, 9])
def test_weights_sum(sqrt_profile, n):
    a = weights_from_profile(sqrt_profile, n)
    assert math.fsum(a) == pytest.approx(n, rel=1e-9)
    assert np.all(np.diff(a.a) <= 0)


def test_weights_by_quadrature(sqrt_profile):
    direct = weights_from_profile(sqrt_profile, 4)
    integrated = weights_by_quadrature(sqrt_profile, 4)
    np.testing.assert_allclose(integrated, direct.a, rtol=1e-6)


def test_reconstruction(sqrt_profile):
    report = reconstruct_H_check(sqrt_profile, np.linspace(0.1, 1.0, 10))
    assert report
    assert report.max_deviation < 1e-6
    with pytest.raises(ValueError):
        reconstruct_H_check(sqrt_profile, [0.0, 0.5])


def test_limits(sqrt_profile):
    table = lemma8_limits(sqrt_profile, k_max=40)
    assert table.decreasing
    assert table.below_threshold
    assert table.passed
    np.testing.assert_allclose(
        table.tail_term, np.sqrt(0.5) * table.t**0.25, rtol=1e-12
    )
    # Too shallow to get below the threshold
    assert not lemma8_limits(sqrt_profile, k_max=20).below_threshold


def test_weights_from_orlicz(normalized):
    for n in (1, 2, 4, 8):
        a = weights_from_orlicz(normalized, n)
        assert a.n == n
        assert math.fsum(a) == pytest.approx(n, rel=1e-8)


def test_weights_from_orlicz_errors():
    with pytest.raises(NotTwoConcave):
        weights_from_orlicz(OrliczFunction.power(2.0), 2)
    with pytest.raises(NotNormalized):
        weights_from_orlicz(OrliczFunction.power(1.5), 2)


def test_profile_from_power_dual(normalized):
    """For a power function, H = (M*⁻¹)² is again a power of t."""
    dual = conjugate_dual(normalized)
    H = ConcaveProfile.from_dual(dual)
    alpha = 2.0 / 3.0
    t = np.array([0.1, 0.4, 0.8])
    np.testing.assert_allclose(H(t), t**alpha, rtol=1e-10)
    np.testing.assert_allclose(H.first(t), alpha * t ** (alpha - 1.0), rtol=1e-10)
    np.testing.assert_allclose(
        H.second(t), alpha * (alpha - 1.0) * t ** (alpha - 2.0), rtol=1e-8
    )


def test_theorem2_corridor(normalized):
    dual = conjugate_dual(normalized)
    for n in (1, 2, 4, 8):
        a = weights_from_orlicz(normalized, n)
        assert all(row.holds(1e-9) for row in theorem2_corridor(a, dual))


@pytest.mark.parametrize("alpha", [0.5, 0.75, 0.9])
def test_reconstruction_on_fine_grid(alpha):
    H = ConcaveProfile.power(alpha)
    grid = np.arange(1, 65) / 64
    report = reconstruct_H_check(H, grid, tol=1e-6)
    assert report.passed
    assert report.max_deviation <= 1e-6
    assert abs(cumulative_f(H, 1.0) - math.sqrt(H(1.0))) <= 1e-9


def test_limits_of_flat_profile():
    """H = t^0.9 gets below the threshold by k = 20."""
    table = lemma8_limits(ConcaveProfile.power(0.9), k_max=20)
    assert table.decreasing
    assert table.below_threshold
    assert table.passed


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_weights_from_normalized_power(sqrt_profile, n):
    """|t|^{4/3} normalized has H = √t; the weights sit between values of f."""
    M = normalize_dual_at_one(OrliczFunction.power(4.0 / 3.0))
    a = weights_from_orlicz(M, n)
    assert abs(math.fsum(a) - n) <= 1e-8
    for l in range(1, n + 1):
        assert f_from_profile(sqrt_profile, l / n) <= a[l - 1] * (1.0 + 1e-9)
        if l > 1:
            assert a[l - 1] <= f_from_profile(sqrt_profile, (l - 1) / n) * (
                1.0 + 1e-9
            )
    if n == 2:
        np.testing.assert_allclose(a.a, [1.643, 0.357], atol=1e-3)


@pytest.mark.parametrize("p", [1.2, 1.5, 1.8])
@pytest.mark.parametrize("n", [4, 8, 16])
def test_round_trip_corridor(p, n):
    M = normalize_dual_at_one(OrliczFunction.power(p))
    dual = conjugate_dual(M)
    a = weights_from_orlicz(M, n)
    rows = theorem2_corridor(a, dual)
    assert len(rows) == n
    assert all(row.holds(1e-9) for row in rows)


@pytest.mark.parametrize("alpha", [0.5, 0.75, 0.9])
def test_total_mass(alpha):
    # ∫₀¹ f = √H(1) = 1 for H = t^α
    assert total_mass(ConcaveProfile.power(alpha)) == pytest.approx(1.0, abs=1e-10)


def test_total_mass_of_orlicz_profile(normalized):
    profile = ConcaveProfile.from_dual(conjugate_dual(normalized, t_max=2.0))
    assert total_mass(profile) == pytest.approx(math.sqrt(profile.H(1.0)), abs=1e-9)
    a = weights_by_quadrature(profile, 4)
    b = weights_from_profile(profile, 4)
    np.testing.assert_allclose(a[1:], b.a[1:], rtol=1e-6)
    assert math.fsum(a) == pytest.approx(4.0 * total_mass(profile), abs=1e-7)
