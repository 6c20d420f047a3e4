# -*- coding: utf-8 -*-

"""Orlicz functions, their duals, and the Orlicz and Luxemburg norms.

An Orlicz function M is even and convex with M(0) = 0 and M(t) > 0 for
t != 0. Only t >= 0 is stored; every evaluation takes |t| first.

The dual is

    M*(t) = ∫₀ᵗ (M′)⁻¹(s) ds = t·u − M(u),   M′(u) = t,

and the Orlicz norm used throughout is the dual form

    ‖x‖_M = sup{ Σ xᵢyᵢ : Σ M*(yᵢ) ≤ 1 }.
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy import integrate, optimize

from .errors import DomainExceeded, NotConvex, NotNormalized, NotStrictlyConvex
from .errors import ZeroVector
from .piecewise import PiecewiseAffine

logger = logging.getLogger("OrliczEmbedding")

# Relative tolerance for the inner root-finding kernels
KERNEL_RTOL = 1e-13
# Number of doublings allowed when bracketing a root
MAX_DOUBLINGS = 200


def _map(fn, x, vectorized=False):
    """Apply fn to a scalar or elementwise to an array of floats."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return float(fn(float(x)))
    if vectorized:
        return np.asarray(fn(x), dtype=float)
    return np.array([fn(float(v)) for v in x.ravel()], dtype=float).reshape(x.shape)


def _brentq(fn, a, b, rtol=KERNEL_RTOL):
    """brentq with a guard for roots sitting on an end of the bracket."""
    fa = fn(a)
    if fa == 0.0:
        return a
    fb = fn(b)
    if fb == 0.0:
        return b
    return optimize.brentq(
        fn, a, b, xtol=1e-300, rtol=max(rtol, 4 * np.finfo(float).eps), maxiter=500
    )


def _bracket_decreasing(fn, start):
    """Find lo < hi with fn(lo) > 0 >= fn(hi) for a decreasing function."""
    lo = hi = float(start)
    value = fn(start)
    if value > 0:
        for _ in range(MAX_DOUBLINGS):
            lo = hi
            hi *= 2.0
            if fn(hi) <= 0:
                return lo, hi
    else:
        for _ in range(MAX_DOUBLINGS):
            hi = lo
            lo /= 2.0
            if fn(lo) > 0:
                return lo, hi
    raise DomainExceeded(f"Could not bracket a root starting from {start:.6g}")


def _three_point_gaps(grid, values):
    """g(t₂) minus the chord through (t₁, g(t₁)) and (t₃, g(t₃)), per triple."""
    t1, t2, t3 = grid[:-2], grid[1:-1], grid[2:]
    g1, g2, g3 = values[:-2], values[1:-1], values[2:]
    lam = (t3 - t2) / (t3 - t1)
    chord = lam * g1 + (1.0 - lam) * g3
    scale = np.maximum(np.maximum(np.abs(g1), np.abs(g2)), np.abs(g3))
    scale = np.maximum(scale, np.finfo(float).tiny)
    return g2 - chord, scale


def _validate_grid(grid):
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size < 3:
        raise ValueError("A concavity check needs at least three grid points")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("The grid must be positive and strictly increasing")
    return grid


@dataclass(frozen=True)
class ConcavityReport:
    """The result of a three-point concavity (or convexity) check.

    Attributes
    ----------
    passed : bool
        True if no consecutive triple violates the test.
    violations : list of dict
        One entry per failing triple with keys t1, t2, t3 and gap, where gap
        is g(t₂) minus the chord value, relative to the largest |g|.
    tested : int
        The number of triples tested.
    margin : float
        The strictness margin that was required (0 for plain concavity).
    """

    passed: bool
    violations: list
    tested: int
    margin: float = 0.0

    def __bool__(self):
        return self.passed


@dataclass(frozen=True, eq=False)
class OrliczFunction:
    """An Orlicz function M with access to M′ and, optionally, M″.

    Attributes
    ----------
    function : callable
        t ↦ M(t) for t >= 0.
    derivative : callable
        t ↦ M′(t) for t >= 0.
    second_derivative : callable, optional
        t ↦ M″(t) for t > 0. When missing, central finite differences of M′
        with step h = max(1e-5, 1e-5·t) are used.
    kind : str
        "power", "piecewise_affine_dual" or "user_defined".
    parameters : dict
        Parameters of the kind, e.g. {"p": 1.5, "coefficient": 1.0}.
    vectorized : bool
        Whether the callables accept numpy arrays.
    name : str
        A printable description.
    """

    function: Callable
    derivative: Callable
    second_derivative: Optional[Callable] = None
    kind: str = "user_defined"
    parameters: dict = field(default_factory=dict)
    vectorized: bool = False
    name: str = ""

    @classmethod
    def power(cls, p, coefficient=None):
        """M(t) = c·|t|^p, with c = 1/p unless given."""
        p = float(p)
        if p < 1.0:
            raise NotConvex(f"|t|^p is not convex for p = {p}")
        c = 1.0 / p if coefficient is None else float(coefficient)
        if c <= 0.0:
            raise ValueError("The coefficient of a power function must be positive")

        def function(t):
            return c * np.power(t, p)

        def derivative(t):
            return c * p * np.power(t, p - 1.0)

        def second_derivative(t):
            return c * p * (p - 1.0) * np.power(t, p - 2.0)

        return cls(
            function,
            derivative,
            second_derivative,
            kind="power",
            parameters={"p": p, "coefficient": c},
            vectorized=True,
            name=f"{c:.6g}·|t|^{p:.6g}",
        )

    @classmethod
    def user_defined(
        cls, function, derivative, second_derivative=None, name="", vectorized=False
    ):
        """Wrap arbitrary callables for M, M′ and optionally M″."""
        return cls(
            function,
            derivative,
            second_derivative,
            kind="user_defined",
            vectorized=vectorized,
            name=name or "user defined",
        )

    def __call__(self, t):
        return _map(self.function, np.abs(np.asarray(t, dtype=float)), self.vectorized)

    def first(self, t):
        """M′(|t|)."""
        return _map(
            self.derivative, np.abs(np.asarray(t, dtype=float)), self.vectorized
        )

    def second(self, t):
        """M″(|t|), by finite differences of M′ when no M″ was given."""
        t = np.abs(np.asarray(t, dtype=float))
        if self.second_derivative is not None:
            return _map(self.second_derivative, t, self.vectorized)
        h = np.maximum(1e-5, 1e-5 * t)
        lo = np.maximum(t - h, 0.0)
        hi = t + h
        result = (self.first(hi) - self.first(lo)) / (hi - lo)
        if np.ndim(result) == 0:
            return float(result)
        return result

    def scaled(self, alpha):
        """The Orlicz function t ↦ M(αt)."""
        alpha = float(alpha)
        if alpha <= 0:
            raise ValueError("The scale factor must be positive")
        if self.kind == "power":
            p = self.parameters["p"]
            result = OrliczFunction.power(p, self.parameters["coefficient"] * alpha**p)
            result.parameters["scale"] = alpha * self.parameters.get("scale", 1.0)
            return result

        M = self

        def function(t):
            return M(alpha * t)

        def derivative(t):
            return alpha * M.first(alpha * t)

        def second_derivative(t):
            return alpha * alpha * M.second(alpha * t)

        return OrliczFunction(
            function,
            derivative,
            second_derivative,
            kind=self.kind,
            parameters={**self.parameters, "scale": alpha},
            vectorized=True,
            name=f"{self.name}(·{alpha:.6g})",
        )

    def convexity_check(self, grid, tol=1e-10):
        """Three-point convexity of M and monotonicity of M′ on a grid."""
        grid = _validate_grid(grid)
        gaps, scale = _three_point_gaps(grid, np.asarray(self(grid)))
        bad = gaps > tol * scale
        slopes = np.asarray(self.first(grid))
        bad_slope = np.diff(slopes) < -tol * np.maximum(1.0, np.abs(slopes[1:]))
        violations = [
            {"t1": grid[i], "t2": grid[i + 1], "t3": grid[i + 2], "gap": gaps[i]}
            for i in np.flatnonzero(bad)
        ]
        violations.extend(
            {"t1": grid[i], "t2": grid[i + 1], "t3": grid[i + 1], "gap": np.nan}
            for i in np.flatnonzero(bad_slope)
        )
        return ConcavityReport(not violations, violations, gaps.size)


@dataclass(frozen=True, eq=False)
class DualFunction:
    """A dual (conjugate) function M* and the maps built from it.

    Attributes
    ----------
    function : callable
        t ↦ M*(t).
    derivative : callable
        t ↦ M*′(t) = (M′)⁻¹(t).
    inverse_function : callable
        v ↦ (M*)⁻¹(v).
    slope_inverse_function : callable
        s ↦ (M*′)⁻¹(s) = M′(s).
    second_derivative : callable, optional
        t ↦ M*″(t) = 1 / M″((M′)⁻¹(t)).
    source : OrliczFunction, optional
        The function this is dual to, when known.
    t_max : float
        Largest argument the dual is valid for.
    kind : str
        "power", "numerical" or "piecewise_affine".
    knots : PiecewiseAffine, optional
        The knots of M* when it is piecewise affine.
    vectorized : bool
        Whether the callables accept numpy arrays.
    """

    function: Callable
    derivative: Callable
    inverse_function: Callable
    slope_inverse_function: Callable
    second_derivative: Optional[Callable] = None
    source: Optional[OrliczFunction] = None
    t_max: float = math.inf
    kind: str = "numerical"
    knots: Optional[PiecewiseAffine] = None
    vectorized: bool = False

    def _check_domain(self, t):
        if np.any(t > self.t_max * (1.0 + 1e-12)):
            raise DomainExceeded(
                f"M* was built for t <= {self.t_max:.6g}, asked for "
                f"t = {float(np.max(t)):.6g}"
            )

    def __call__(self, t):
        t = np.abs(np.asarray(t, dtype=float))
        self._check_domain(t)
        return _map(self.function, t, self.vectorized)

    def slope(self, t):
        """M*′(t) = (M′)⁻¹(t)."""
        t = np.abs(np.asarray(t, dtype=float))
        self._check_domain(t)
        return _map(self.derivative, t, self.vectorized)

    def curvature(self, t):
        """M*″(t)."""
        t = np.abs(np.asarray(t, dtype=float))
        self._check_domain(t)
        if self.second_derivative is not None:
            return _map(self.second_derivative, t, self.vectorized)
        if self.source is None:
            raise ValueError("M*″ needs either a closed form or the source function")
        return 1.0 / np.asarray(self.source.second(self.slope(t)))

    def inverse(self, v):
        """(M*)⁻¹(v)."""
        v = np.abs(np.asarray(v, dtype=float))
        return _map(self.inverse_function, v, self.vectorized)

    def slope_inverse(self, s):
        """(M*′)⁻¹(s) = M′(s)."""
        s = np.abs(np.asarray(s, dtype=float))
        return _map(self.slope_inverse_function, s, self.vectorized)

    def legendre_value(self, s):
        """M*((M*′)⁻¹(s)) = s·M′(s) − M(s), without leaving the domain of M."""
        s = np.abs(np.asarray(s, dtype=float))
        if self.source is not None:
            return s * self.source.first(s) - self.source(s)
        return self(self.slope_inverse(s))

    def as_orlicz(self):
        """This dual viewed as an Orlicz function in its own right."""
        if self.kind == "power":
            return OrliczFunction.power(
                self.source_parameters["q"], self.source_parameters["K"]
            )
        return OrliczFunction(
            self.__call__,
            self.slope,
            self.curvature,
            kind="user_defined",
            parameters={"dual_of": self.source.name if self.source else ""},
            vectorized=True,
            name="M*",
        )

    @property
    def source_parameters(self):
        """q and K of a closed-form power dual K·|t|^q."""
        p = self.source.parameters["p"]
        c = self.source.parameters["coefficient"]
        q = p / (p - 1.0)
        return {"q": q, "K": (c * p) ** (-1.0 / (p - 1.0)) / q}


def _power_dual(M):
    """Closed form dual of M(t) = c|t|^p: K|t|^q with K = (cp)^(-1/(p-1))/q."""
    p = M.parameters["p"]
    c = M.parameters["coefficient"]
    if p <= 1.0:
        raise NotStrictlyConvex(f"|t|^{p:g} has a constant derivative")
    q = p / (p - 1.0)
    K = (c * p) ** (-1.0 / (p - 1.0)) / q

    def function(t):
        return K * np.power(t, q)

    def derivative(t):
        return K * q * np.power(t, q - 1.0)

    def second_derivative(t):
        return K * q * (q - 1.0) * np.power(t, q - 2.0)

    def inverse(v):
        return np.power(v / K, 1.0 / q)

    return DualFunction(
        function,
        derivative,
        inverse,
        M.first,
        second_derivative,
        source=M,
        kind="power",
        vectorized=True,
    )


def _upper_argument(M, target):
    """A u with M′(u) >= target, checking M′ strictly increases on the way."""
    u = 1.0 / 1024.0
    previous = M.first(u)
    for _ in range(MAX_DOUBLINGS):
        if previous >= target:
            return u
        current = M.first(2.0 * u)
        if not current > previous:
            raise NotStrictlyConvex(
                f"M′ does not increase between t = {u:.6g} and t = {2 * u:.6g}"
            )
        u *= 2.0
        previous = current
    raise DomainExceeded(f"M′ stays below {target:.6g}, so M* is infinite there")


def _check_strictly_increasing(fn, grid, margin=1e-12):
    values = np.asarray(fn(grid), dtype=float)
    steps = np.diff(values)
    bad = steps <= margin * np.abs(values[1:])
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NotStrictlyConvex(
            f"M′ is not strictly increasing between t = {grid[i]:.6g} and "
            f"t = {grid[i + 1]:.6g}"
        )


def conjugate_dual(M, t_max=10.0, tol=1e-10, closed_form=True):
    """The dual function M* of a strictly convex Orlicz function.

    Parameters
    ----------
    M : OrliczFunction
        The Orlicz function.
    t_max : float
        The dual is valid on [0, t_max]; larger arguments raise
        DomainExceeded.
    tol : float
        Relative tolerance of the root-finding behind M*, (M′)⁻¹ and (M*)⁻¹.
    closed_form : bool
        Use the closed form for power functions.

    Returns
    -------
    DualFunction

    Raises
    ------
    NotStrictlyConvex
        If M′ fails to increase strictly on the sample grid.
    """
    if closed_form and M.kind == "power":
        return _power_dual(M)

    t_max = float(t_max)
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    rtol = max(min(tol, 1e-10) * 1e-3, KERNEL_RTOL)
    u_max = _upper_argument(M, t_max)
    _check_strictly_increasing(M.first, np.geomspace(u_max * 1e-9, u_max, 257))
    logger.debug(f"conjugate_dual: M′({u_max:.6g}) >= t_max = {t_max:.6g}")

    def slope(t):
        if t <= 0.0:
            return 0.0
        return _brentq(lambda u: M.first(u) - t, 0.0, u_max, rtol)

    def function(t):
        u = slope(t)
        return t * u - M(u)

    phi_max = u_max * M.first(u_max) - M(u_max)

    def inverse(v):
        if v <= 0.0:
            return 0.0
        if v > phi_max:
            raise DomainExceeded(
                f"(M*)⁻¹({v:.6g}) lies beyond the range the dual was built for"
            )
        u = _brentq(lambda u: u * M.first(u) - M(u) - v, 0.0, u_max, rtol)
        t = M.first(u)
        if t > t_max * (1.0 + 1e-12):
            raise DomainExceeded(f"(M*)⁻¹({v:.6g}) = {t:.6g} exceeds t_max")
        return t

    def second_derivative(t):
        return 1.0 / M.second(slope(t))

    return DualFunction(
        function,
        slope,
        inverse,
        M.first,
        second_derivative,
        source=M,
        t_max=t_max,
        kind="numerical",
    )


def dual_by_quadrature(Mstar, t, tol=1e-10):
    """M*(t) as the integral ∫₀ᵗ (M′)⁻¹(s) ds, for cross-checking."""
    value, _ = integrate.quad(
        lambda s: Mstar.slope(s), 0.0, float(t), epsabs=tol, epsrel=tol, limit=200
    )
    return value


def _knapsack_norm(ax, knots):
    """sup Σ|xᵢ|yᵢ subject to Σ M*(yᵢ) <= 1 for convex piecewise-affine M*.

    Every (coordinate, segment) pair buys y at price slope per unit and earns
    |xᵢ| per unit. Filling pairs by decreasing |xᵢ|/slope is optimal because
    the slopes of a convex M* increase along each coordinate.
    """
    if not knots.is_convex():
        raise NotConvex("A piecewise-affine M* must be convex")
    slopes = knots.slopes
    if np.any(slopes <= 0):
        raise NotConvex("A piecewise-affine M* must be strictly increasing")
    slopes = np.append(slopes, slopes[-1])
    lengths = np.append(np.diff(knots.t), np.inf)

    coordinate, segment = np.meshgrid(
        np.arange(ax.size), np.arange(slopes.size), indexing="ij"
    )
    ratio = ax[:, None] / slopes[None, :]
    order = np.lexsort((segment.ravel(), coordinate.ravel(), -ratio.ravel()))

    budget = 1.0
    total = 0.0
    for index in order:
        i = coordinate.flat[index]
        k = segment.flat[index]
        if ax[i] == 0.0:
            break
        cost = slopes[k] * lengths[k]
        if cost < budget:
            total += ax[i] * lengths[k]
            budget -= cost
        else:
            total += ax[i] * budget / slopes[k]
            break
    return total


def orlicz_norm(x, Mstar, tol=1e-10):
    """The Orlicz norm sup{Σ xᵢyᵢ : Σ M*(yᵢ) <= 1} of a finite vector.

    For smooth duals the maximizer is yᵢ = M′(|xᵢ|/λ) with λ fixed by
    Σ M*(yᵢ) = 1, found by monotone root-finding. For piecewise-affine duals
    the problem is a continuous knapsack and is solved exactly.

    Parameters
    ----------
    x : array_like
        The vector.
    Mstar : DualFunction
        The dual function.
    tol : float
        Relative tolerance of the root-finding in λ.

    Returns
    -------
    float

    Raises
    ------
    DomainExceeded
        If the maximizer leaves the range Mstar was built for.
    """
    ax = np.abs(np.asarray(x, dtype=float)).ravel()
    if ax.size == 0:
        raise ValueError("The vector must have at least one entry")
    if not np.any(ax):
        return 0.0
    if Mstar.knots is not None:
        return _knapsack_norm(ax, Mstar.knots)

    def excess(lam):
        return float(np.sum(Mstar.legendre_value(ax / lam))) - 1.0

    lo, hi = _bracket_decreasing(excess, float(np.max(ax)))
    lam = _brentq(excess, lo, hi, rtol=tol)
    y = np.asarray(Mstar.slope_inverse(ax / lam))
    if np.any(y > Mstar.t_max * (1.0 + 1e-12)):
        raise DomainExceeded(
            f"The maximizer has y = {float(np.max(y)):.6g} beyond t_max = "
            f"{Mstar.t_max:.6g}"
        )
    return float(np.dot(ax, y))


def luxemburg_norm(x, M, tol=1e-10, strict=False):
    """The Luxemburg norm: the λ > 0 with Σ M(xᵢ/λ) = 1.

    The zero vector has norm 0, unless ``strict`` is set, in which case
    ZeroVector is raised.
    """
    ax = np.abs(np.asarray(x, dtype=float)).ravel()
    if ax.size == 0:
        raise ValueError("The vector must have at least one entry")
    if not np.any(ax):
        if strict:
            raise ZeroVector("The Luxemburg gauge of the zero vector is 0")
        return 0.0

    def excess(lam):
        return float(np.sum(M(ax / lam))) - 1.0

    lo, hi = _bracket_decreasing(excess, float(np.max(ax)))
    return _brentq(excess, lo, hi, rtol=tol)


def normalize_dual_at_one(M, closed_form=True, tol=1e-8):
    """Rescale M to M̃(t) = M(αt) so that M̃*(1) = 1.

    Since M̃*(s) = M*(s/α), α = 1/(M*)⁻¹(1). The property is verified on the
    result to ``tol``.

    Raises
    ------
    NotStrictlyConvex
        Propagated from the dual computation.
    NotNormalized
        If the post hoc check fails.
    """
    if closed_form and M.kind == "power":
        y1 = float(conjugate_dual(M).inverse(1.0))
    else:
        t_max = 2.0
        for _ in range(60):
            try:
                y1 = float(conjugate_dual(M, t_max, closed_form=False).inverse(1.0))
                break
            except DomainExceeded:
                t_max *= 4.0
        else:
            raise DomainExceeded("Could not locate (M*)⁻¹(1)")

    alpha = 1.0 / y1
    logger.debug(f"normalize_dual_at_one: alpha = {alpha:.12g}")
    result = M if abs(alpha - 1.0) <= 1e-12 else M.scaled(alpha)

    check = float(conjugate_dual(result, 2.0, closed_form=closed_form)(1.0))
    if abs(check - 1.0) > tol:
        raise NotNormalized(f"After scaling, M*(1) = {check:.12g}")
    return result


def two_concavity_check(M, grid, tol=1e-10, margin=0.0):
    """Three-point concavity test of t ↦ M(√t) on consecutive grid triples.

    Parameters
    ----------
    M : OrliczFunction
    grid : array_like
        At least three positive, strictly increasing points.
    tol : float
        Allowed relative deficit for plain concavity.
    margin : float
        Required relative excess over the chord; a positive margin certifies
        strict 2-concavity.

    Returns
    -------
    ConcavityReport
        Truthy iff the test passes.
    """
    grid = _validate_grid(grid)
    values = np.asarray(M(np.sqrt(grid)), dtype=float)
    gaps, scale = _three_point_gaps(grid, values)
    if margin > 0.0:
        bad = gaps <= margin * scale
    else:
        bad = gaps < -tol * scale
    violations = [
        {
            "t1": float(grid[i]),
            "t2": float(grid[i + 1]),
            "t3": float(grid[i + 2]),
            "gap": float(gaps[i] / scale[i]),
        }
        for i in np.flatnonzero(bad)
    ]
    if violations:
        logger.debug(f"two_concavity_check: {len(violations)} violations")
    return ConcavityReport(not violations, violations, int(gaps.size), margin)
