#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for Orlicz functions, their duals and the norms."""

import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from orlicz_embedding import (
    DomainExceeded,
    NotConvex,
    NotStrictlyConvex,
    OrliczFunction,
    ZeroVector,
    conjugate_dual,
    dual_by_quadrature,
    knots_from_weights,
    luxemburg_norm,
    normalize_dual_at_one,
    orlicz_from_knots,
    orlicz_norm,
    sqrt_prefix_b,
    two_concavity_check,
)

GRID = np.geomspace(1e-3, 1e1, 41)


@pytest.mark.parametrize("p", [1.25, 1.5, 2.0])
def test_closed_form_dual(p):
    """|t|^p/p has the dual |t|^q/q."""
    q = p / (p - 1.0)
    dual = conjugate_dual(OrliczFunction.power(p))
    t = np.linspace(0.0, 2.0, 9)
    np.testing.assert_allclose(dual(t), t**q / q, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("p", [1.25, 1.5, 2.0])
def test_numerical_dual_matches_closed_form(p):
    M = OrliczFunction.power(p)
    exact = conjugate_dual(M)
    numerical = conjugate_dual(M, t_max=2.0, closed_form=False)
    assert numerical.kind == "numerical"
    t = np.linspace(0.0, 2.0, 9)
    np.testing.assert_allclose(numerical(t), exact(t), atol=1e-6)
    np.testing.assert_allclose(numerical.slope(t), exact.slope(t), atol=1e-6)
    v = np.linspace(0.05, 0.5, 4)
    np.testing.assert_allclose(numerical.inverse(v), exact.inverse(v), atol=1e-6)


def test_dual_by_quadrature():
    dual = conjugate_dual(OrliczFunction.power(1.5))
    assert dual_by_quadrature(dual, 1.5) == pytest.approx(dual(1.5), abs=1e-8)


def test_square_dual(square):
    dual = conjugate_dual(square)
    assert dual(2.0) == pytest.approx(1.0)
    assert dual.inverse(1.0) == pytest.approx(2.0)


@pytest.mark.parametrize("p", [1.25, 1.5, 2.0])
def test_dual_of_dual_is_the_function(p):
    M = OrliczFunction.power(p)
    twice = conjugate_dual(conjugate_dual(M).as_orlicz())
    t = np.linspace(0.1, 3.0, 12)
    np.testing.assert_allclose(twice(t), M(t), rtol=1e-12)


@pytest.mark.parametrize("p", [1.25, 1.5, 2.0])
def test_numerical_dual_of_dual(p):
    """M** = M through two root-finding conjugations."""
    M = OrliczFunction.power(p)
    Mstar = conjugate_dual(M, t_max=4.0, closed_form=False).as_orlicz()
    assert Mstar.kind == "user_defined"
    twice = conjugate_dual(Mstar, t_max=2.0, closed_form=False)
    assert twice.kind == "numerical"
    t = np.linspace(0.1, 1.5, 6)
    np.testing.assert_allclose(twice(t), M(t), rtol=1e-7)


def test_legendre_value():
    M = OrliczFunction.power(1.5)
    dual = conjugate_dual(M)
    s = np.linspace(0.1, 2.0, 7)
    np.testing.assert_allclose(
        dual.legendre_value(s), dual(dual.slope_inverse(s)), rtol=1e-12
    )


def test_domain():
    dual = conjugate_dual(OrliczFunction.power(1.5), t_max=2.0, closed_form=False)
    with pytest.raises(DomainExceeded):
        dual(3.0)


def test_not_convex():
    with pytest.raises(NotConvex):
        OrliczFunction.power(0.5)


def test_not_strictly_convex():
    with pytest.raises(NotStrictlyConvex):
        conjugate_dual(OrliczFunction.power(1.0))
    linear = OrliczFunction.user_defined(lambda t: t, lambda t: 1.0, name="|t|")
    with pytest.raises(NotStrictlyConvex):
        conjugate_dual(linear)


def test_convexity_check():
    assert OrliczFunction.power(1.5).convexity_check(GRID)
    concave = OrliczFunction.user_defined(
        lambda t: math.sqrt(t), lambda t: 0.5 / math.sqrt(t), name="√t"
    )
    report = concave.convexity_check(GRID)
    assert not report
    assert report.violations


def test_orlicz_norm_of_square(square):
    dual = conjugate_dual(square)
    assert orlicz_norm([1.0, 1.0], dual) == pytest.approx(2.0 * math.sqrt(2.0))
    assert orlicz_norm([1.0, -1.0], dual) == pytest.approx(2.0 * math.sqrt(2.0))


def test_zero_vector(square):
    assert orlicz_norm([0.0, 0.0], conjugate_dual(square)) == 0.0
    assert luxemburg_norm([0.0, 0.0], square) == 0.0
    with pytest.raises(ZeroVector):
        luxemburg_norm([0.0, 0.0], square, strict=True)


def test_luxemburg_norm(square):
    assert luxemburg_norm([1.0, 1.0], square) == pytest.approx(math.sqrt(2.0))
    M = OrliczFunction.power(1.5, coefficient=1.0)
    assert luxemburg_norm([1.0, 1.0], M) == pytest.approx(2.0 ** (2.0 / 3.0))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
        min_size=1,
        max_size=6,
    ).filter(lambda x: max(abs(v) for v in x) > 1e-3)
)
def test_orlicz_against_luxemburg(x):
    """‖x‖_(M) ≤ ‖x‖_M ≤ 2‖x‖_(M)."""
    M = OrliczFunction.power(1.5)
    orlicz = orlicz_norm(x, conjugate_dual(M))
    luxemburg = luxemburg_norm(x, M)
    assert luxemburg <= orlicz * (1.0 + 1e-9)
    assert orlicz <= 2.0 * luxemburg * (1.0 + 1e-9)


def test_knapsack_sup_norm():
    """With M*(t) = t the Orlicz norm is the largest |xᵢ|."""
    dual = orlicz_from_knots([(1.0, 1.0)])
    assert orlicz_norm([3.0, -5.0, 1.0], dual) == pytest.approx(5.0)


def test_knapsack_two_segments():
    # M* has slopes 1 and 2, so M*⁻¹ has knots (1, 1) and (3, 2)
    dual = orlicz_from_knots([(1.0, 1.0), (3.0, 2.0)])
    assert orlicz_norm([1.0, 1.0], dual) == pytest.approx(1.0)
    # One coordinate uses both segments: y = 2 costs M*(2) = 3 > 1, so y = 1
    assert orlicz_norm([2.0, 0.0], dual) == pytest.approx(2.0)


def test_knapsack_matches_smooth_norm_at_fine_knots(square):
    """Fine knots of (M*)⁻¹ for M = t² approach the smooth norm."""
    smooth = conjugate_dual(square)
    levels = np.linspace(0.0, 4.0, 4001)[1:]
    dual = orlicz_from_knots(list(zip(levels, 2.0 * np.sqrt(levels))))
    x = [1.0, 0.5, -2.0]
    assert orlicz_norm(x, dual) == pytest.approx(orlicz_norm(x, smooth), rel=1e-4)


def test_normalize_square(square):
    normalized = normalize_dual_at_one(square)
    assert normalized.parameters["scale"] == pytest.approx(0.5)
    assert conjugate_dual(normalized)(1.0) == pytest.approx(1.0, abs=1e-12)


def test_normalize_numerically():
    M = OrliczFunction.user_defined(
        lambda t: t * t, lambda t: 2.0 * t, lambda t: 2.0, name="t²"
    )
    normalized = normalize_dual_at_one(M)
    assert normalized.parameters["scale"] == pytest.approx(0.5, rel=1e-8)
    assert normalized(2.0) == pytest.approx(1.0, rel=1e-8)


def test_normalize_already_normalized(normalized):
    assert normalize_dual_at_one(normalized) is normalized


def test_two_concavity():
    assert two_concavity_check(OrliczFunction.power(1.5), GRID, margin=1e-10)
    # t² is 2-concave but not strictly
    square = OrliczFunction.power(2.0)
    assert two_concavity_check(square, GRID)
    assert not two_concavity_check(square, GRID, margin=1e-10)
    report = two_concavity_check(OrliczFunction.power(3.0), GRID)
    assert not report
    assert report.tested == GRID.size - 2


@pytest.mark.parametrize("p", [1.25, 1.5, 2.0])
def test_young_inequality(rng, p):
    """st ≤ M(s) + M*(t) on 10⁴ random pairs."""
    M = OrliczFunction.power(p)
    dual = conjugate_dual(M)
    s = rng.uniform(0.0, 5.0, 10000)
    t = rng.uniform(0.0, 5.0, 10000)
    assert np.all(s * t <= M(s) + dual(t) + 1e-12 * (1.0 + s * t))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 3.0), st.floats(0.0, 1.9), st.sampled_from([1.25, 1.5, 2.0]))
def test_young_inequality_numerical_dual(s, t, p):
    M = OrliczFunction.power(p)
    dual = conjugate_dual(M, t_max=2.0, closed_form=False)
    assert s * t <= float(M(s)) + float(dual(t)) + 1e-9


def test_young_equality(normalized):
    """Equality holds at t = M′(s)."""
    dual = conjugate_dual(normalized)
    s = np.linspace(0.1, 2.0, 5)
    t = normalized.first(s)
    np.testing.assert_allclose(s * t, normalized(s) + dual(t), rtol=1e-12)


def test_normalize_cube():
    """|t|³/3 rescaled by root-finding has M̃*(1) = 1."""
    normalized = normalize_dual_at_one(OrliczFunction.power(3.0), closed_form=False)
    alpha = normalized.parameters["scale"]
    assert alpha == pytest.approx(1.5 ** (-2.0 / 3.0), rel=1e-8)
    check = conjugate_dual(normalized, t_max=2.0, closed_form=False)(1.0)
    assert check == pytest.approx(1.0, abs=1e-8)
    # M*(1/α) = 1 for the unscaled function
    dual = conjugate_dual(OrliczFunction.power(3.0))
    assert dual(1.0 / alpha) == pytest.approx(1.0, abs=1e-8)


def test_norm_of_unit_vector(normalized, square):
    for M in (normalized, square, OrliczFunction.power(1.25)):
        dual = conjugate_dual(M)
        assert orlicz_norm([0.0, 1.0, 0.0], dual) == pytest.approx(
            float(dual.inverse(1.0)), rel=1e-9
        )
    dual = orlicz_from_knots(knots_from_weights(sqrt_prefix_b(4)))
    assert orlicz_norm([1.0, 0.0, 0.0, 0.0], dual) == pytest.approx(
        float(dual.inverse(1.0)), rel=1e-12
    )


def _norms():
    """(name, norm) pairs: smooth and piecewise Orlicz norms and a Luxemburg norm."""
    M = OrliczFunction.power(1.5)
    smooth = conjugate_dual(M)
    piecewise = orlicz_from_knots(knots_from_weights(sqrt_prefix_b(4)))
    return [
        ("smooth", lambda x: orlicz_norm(x, smooth)),
        ("piecewise", lambda x: orlicz_norm(x, piecewise)),
        ("luxemburg", lambda x: luxemburg_norm(x, M)),
    ]


NORMS = _norms()
vectors = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
    min_size=4,
    max_size=4,
).filter(lambda x: max(abs(v) for v in x) > 1e-3)


@pytest.mark.parametrize("name, norm", NORMS)
@settings(max_examples=30, deadline=None)
@given(x=vectors, c=st.floats(-8.0, 8.0).filter(lambda c: abs(c) > 1e-3))
def test_homogeneity(name, norm, x, c):
    x = np.array(x)
    assert norm(c * x) == pytest.approx(abs(c) * norm(x), rel=1e-8)


@pytest.mark.parametrize("name, norm", NORMS)
@settings(max_examples=30, deadline=None)
@given(x=vectors, y=vectors)
def test_triangle_inequality(name, norm, x, y):
    x = np.array(x)
    y = np.array(y)
    assert norm(x + y) <= (norm(x) + norm(y)) * (1.0 + 1e-8)


@pytest.mark.parametrize("name, norm", NORMS)
@settings(max_examples=30, deadline=None)
@given(x=vectors, extra=st.lists(st.floats(0.0, 5.0), min_size=4, max_size=4))
def test_monotonicity(name, norm, x, extra):
    """|xᵢ| ≤ |yᵢ| for all i gives ‖x‖ ≤ ‖y‖."""
    x = np.array(x)
    y = np.sign(x) * (np.abs(x) + np.array(extra))
    assert norm(x) <= norm(y) * (1.0 + 1e-8)


@pytest.mark.parametrize("name, norm", NORMS)
@settings(max_examples=30, deadline=None)
@given(x=vectors, order=st.permutations(range(4)))
def test_permutation_invariance(name, norm, x, order):
    x = np.array(x)
    assert norm(x[list(order)]) == pytest.approx(norm(x), rel=1e-8)
