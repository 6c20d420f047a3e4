# -*- coding: utf-8 -*-

"""The two constructive directions between weights and Orlicz functions.

weights → Orlicz function
    ``knots_from_weights`` gives the knots of M*⁻¹ at l/n and
    ``orlicz_from_knots`` turns them into M*.

Orlicz function → weights
    ``weights_from_orlicz`` goes through the profile H = (M*⁻¹)², the
    density f of that profile and its integral F, so that
    a_l = n·(F(l/n) − F((l−1)/n)).

f is unbounded near 0 in general, so F is never obtained by integrating f
across 0. It comes from the identity F(t) = t·f(t) + √(H(t) − tH′(t)).
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import DegenerateProfile, DomainExceeded, LengthMismatch, NotConcave
from .errors import NotDecreasing, NotNormalized, NotStrictlyIncreasing
from .errors import NotTwoConcave
from .orlicz_core import DualFunction, _map, conjugate_dual, two_concavity_check
from .piecewise import PiecewiseAffine

logger = logging.getLogger("OrliczEmbedding")

#: Smallest admissible value of H(s) − sH′(s)
DEGENERACY_THRESHOLD = 1e-12
#: Margin certifying strict 2-concavity of M
STRICT_MARGIN = 1e-10
#: Sample grid for the strict 2-concavity certificate
TWO_CONCAVITY_GRID = np.geomspace(1e-3, 1e1, 41)
#: Lower end of the quadrature in total_mass
MASS_FLOOR = 1e-60
#: Relative step for finite differences of M*⁻¹
FD_STEP = 1e-5


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Positive, nonincreasing weights a₁ ≥ a₂ ≥ … ≥ aₙ > 0."""

    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        if a.ndim != 1 or a.size < 1:
            raise NotDecreasing("Weights must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(a)):
            raise NotDecreasing("Weights must be finite")
        if np.any(a <= 0):
            i = int(np.argmax(a <= 0))
            raise NotDecreasing(f"Weight a[{i + 1}] = {a[i]:.6g} is not positive")
        if np.any(np.diff(a) > 0):
            i = int(np.argmax(np.diff(a) > 0))
            raise NotDecreasing(
                f"Weights must be nonincreasing, but a[{i + 1}] = {a[i]:.6g} < "
                f"a[{i + 2}] = {a[i + 1]:.6g}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @classmethod
    def coerce(cls, a):
        """Return ``a`` if it already is a WeightSequence, else validate it."""
        return a if isinstance(a, cls) else cls(a)

    @property
    def n(self):
        return self.a.size

    def __len__(self):
        return self.a.size

    def __getitem__(self, index):
        return self.a[index]

    def __iter__(self):
        return iter(self.a.tolist())

    @property
    def prefix_sums(self):
        """Σ_{j≤k} a_j for k = 1..n."""
        return np.cumsum(self.a)

    def tolist(self):
        return self.a.tolist()


def knots_from_weights(a):
    """The knots of M*⁻¹ built from nonincreasing weights.

    At t = l/n, l = 1..n, the value is

        √( ((1/n)Σ_{i≤l} aᵢ)² + (l/n)·(1/n)Σ_{i>l} aᵢ² ),

    with the empty tail sum at l = n equal to 0, and the origin is added.

    Raises
    ------
    NotDecreasing
        If the weights are not positive and nonincreasing.
    NotConcave
        If the knots fail the three-point concavity test (tolerance 1e-9).
    """
    a = WeightSequence.coerce(a)
    n = a.n
    squares = a.a**2
    tails = np.append(np.cumsum(squares[::-1])[::-1][1:], 0.0)
    levels = np.arange(1, n + 1) / n
    values = np.sqrt((a.prefix_sums / n) ** 2 + levels * (tails / n))
    knots = PiecewiseAffine(
        np.append(0.0, levels), np.append(0.0, values), concave=True
    )
    if not knots.is_concave(tol=1e-9):
        raise NotConcave(
            f"The knots built from a = {a.tolist()} are not concave, "
            f"gaps {knots.concavity_gaps().tolist()}"
        )
    return knots


def orlicz_from_knots(inv_knots):
    """The dual function M* whose inverse has the given knots.

    Parameters
    ----------
    inv_knots : PiecewiseAffine or iterable of (t, v) pairs
        The knots of M*⁻¹.

    Returns
    -------
    DualFunction
        Piecewise affine, continued past the last knot with its final slope.

    Raises
    ------
    NotStrictlyIncreasing
        If two knot values coincide or decrease.
    """
    if not isinstance(inv_knots, PiecewiseAffine):
        pairs = [(float(t), float(v)) for t, v in inv_knots]
        values = [v for _, v in pairs]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise NotStrictlyIncreasing(f"Knot values {values} are not increasing")
        inv_knots = PiecewiseAffine.from_pairs(pairs, concave=True)

    Mstar = inv_knots.inverse()
    slopes = Mstar.slopes

    def slope_inverse(s):
        # M′(s): the abscissa where the slopes of M* first reach s
        s = np.asarray(s, dtype=float)
        if np.any(s > slopes[-1] * (1.0 + 1e-12)):
            raise DomainExceeded(
                f"M′ is infinite beyond the last slope {slopes[-1]:.6g} of M*"
            )
        index = np.searchsorted(slopes, s, side="left")
        return Mstar.t[index]

    def second_derivative(t):
        return np.zeros_like(np.asarray(t, dtype=float))

    return DualFunction(
        Mstar,
        Mstar.slope_at,
        inv_knots,
        slope_inverse,
        second_derivative,
        kind="piecewise_affine",
        knots=Mstar,
        vectorized=True,
    )


@dataclass(frozen=True, eq=False)
class ConcaveProfile:
    """A concave, increasing H on [0, 1] with H(0) = 0, and H′, H″.

    The callables take scalars t in (0, 1].
    """

    H: Callable
    derivative: Callable
    second_derivative: Callable
    name: str = ""
    parameters: dict = field(default_factory=dict)

    @classmethod
    def power(cls, alpha):
        """H(t) = t^α for 0 < α ≤ 1."""
        alpha = float(alpha)
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"H = t^α needs 0 < α ≤ 1, not α = {alpha}")
        return cls(
            lambda t: t**alpha,
            lambda t: alpha * t ** (alpha - 1.0),
            lambda t: alpha * (alpha - 1.0) * t ** (alpha - 2.0),
            name=f"t^{alpha:g}",
            parameters={"profile": "power", "alpha": alpha},
        )

    @classmethod
    def from_dual(cls, dual):
        """H = (M*⁻¹)², differentiated through the inverse-function rule.

        With g = M*⁻¹, g′ = 1/M*′(g) and g″ = −M*″(g)·g′³, so H′ = 2gg′ and
        H″ = 2g′² + 2gg″. Without any way to get M*″, finite differences of
        g with relative step 1e-5 are used instead.
        """

        def g(v):
            return float(dual.inverse(v))

        def g1(v):
            return 1.0 / float(dual.slope(g(v)))

        closed = dual.second_derivative is not None or dual.source is not None
        if closed:

            def g2(v):
                d = g1(v)
                return -float(dual.curvature(g(v))) * d**3

        else:

            def g2(v):
                h = FD_STEP * v
                return (g1(v + h) - g1(v - h)) / (2.0 * h)

        return cls(
            lambda t: g(t) ** 2,
            lambda t: 2.0 * g(t) * g1(t),
            lambda t: 2.0 * g1(t) ** 2 + 2.0 * g(t) * g2(t),
            name="(M*⁻¹)²",
            parameters={"profile": "orlicz", "dual": dual.kind},
        )

    def __call__(self, t):
        return _map(self.H, t)

    def first(self, t):
        return _map(self.derivative, t)

    def second(self, t):
        return _map(self.second_derivative, t)

    def gap(self, t):
        """H(t) − tH′(t), positive for a nondegenerate profile."""
        t = np.asarray(t, dtype=float)
        return self(t) - t * self.first(t)

    def validate(self, grid=None):
        """Check H is increasing and concave with H − tH′ > 0 on a grid.

        Raises
        ------
        ValueError
            If H is not increasing.
        NotTwoConcave
            If H is not concave.
        DegenerateProfile
            If H − tH′ falls below the degeneracy threshold.
        """
        grid = np.linspace(0.0, 1.0, 65)[1:] if grid is None else np.asarray(grid)
        values = np.append(0.0, self(grid))
        if np.any(np.diff(values) <= 0):
            raise ValueError(f"H = {self.name} is not increasing")
        slopes = np.diff(values) / np.diff(np.append(0.0, grid))
        if np.any(np.diff(slopes) > 1e-12 * np.max(np.abs(slopes))):
            raise NotTwoConcave(f"H = {self.name} is not concave")
        gap = self.gap(grid)
        if np.min(gap) < DEGENERACY_THRESHOLD:
            raise DegenerateProfile(
                f"H(t) − tH′(t) = {np.min(gap):.3g} for H = {self.name}"
            )
        return self


def _check_gap(Hp, t):
    grid = np.geomspace(t, 1.0, 65) if t < 1.0 else np.array([1.0])
    gap = Hp.gap(grid)
    if np.min(gap) < DEGENERACY_THRESHOLD:
        i = int(np.argmin(gap))
        raise DegenerateProfile(
            f"H(s) − sH′(s) = {gap[i]:.3g} at s = {grid[i]:.6g} for H = {Hp.name}"
        )


def f_from_profile(Hp, t, tol=1e-9):
    """The density f of a profile at t.

    f(t) = −½∫ₜ¹ H″(s)/√(H(s) − sH′(s)) ds + √H(1) − √(H(1) − H′(1)).

    The integral is done in log-space, s = eᵘ, by adaptive quadrature to
    absolute tolerance ``tol``. Tiny negative round-off is clamped to 0.

    Raises
    ------
    DegenerateProfile
        If H(s) − sH′(s) falls below 1e-12 on [t, 1].
    """
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise ValueError(f"f is defined on (0, 1], not at t = {t}")
    _check_gap(Hp, t)

    boundary = math.sqrt(Hp.H(1.0)) - math.sqrt(Hp.H(1.0) - Hp.derivative(1.0))
    if t == 1.0:
        return max(boundary, 0.0)

    def integrand(u):
        s = math.exp(u)
        return Hp.second_derivative(s) / math.sqrt(Hp.H(s) - s * Hp.derivative(s)) * s

    integral, error = integrate.quad(
        integrand, math.log(t), 0.0, epsabs=tol, epsrel=1e-12, limit=200
    )
    value = boundary - 0.5 * integral
    if value < 0.0:
        if value < -1e-8:
            raise NotTwoConcave(f"f({t:.6g}) = {value:.3g} < 0, so H is not concave")
        value = 0.0
    return value


def cumulative_f(Hp, t, tol=1e-9):
    """F(t) = ∫₀ᵗ f = t·f(t) + √(H(t) − tH′(t)), with F(0) = 0."""
    t = float(t)
    if t == 0.0:
        return 0.0
    if not 0.0 < t <= 1.0:
        raise ValueError(f"F is defined on [0, 1], not at t = {t}")
    f = f_from_profile(Hp, t, tol)
    return t * f + math.sqrt(Hp.H(t) - t * Hp.derivative(t))


def total_mass(Hp, tol=1e-12):
    """∫₀¹ f without the closed form of F.

    Integrating by parts with f′ = ½H″/√(H − sH′) and s·f(s) → 0,

        ∫₀¹ f = f(1) − ½∫₀¹ s·H″(s)/√(H(s) − sH′(s)) ds,

    done in log-space over s ∈ [MASS_FLOOR, 1]. The part below MASS_FLOOR is
    dropped; it is of order MASS_FLOOR^(α/2) for H = t^α.
    """

    def integrand(u):
        s = math.exp(u)
        gap = Hp.H(s) - s * Hp.derivative(s)
        if gap <= 0.0:
            return 0.0
        return s * s * Hp.second_derivative(s) / math.sqrt(gap)

    integral, error = integrate.quad(
        integrand, math.log(MASS_FLOOR), 0.0, epsabs=tol, epsrel=1e-12, limit=200
    )
    logger.debug(f"total_mass: integral {integral:.15g}, error {error:.3g}")
    return f_from_profile(Hp, 1.0) - 0.5 * integral


@dataclass(frozen=True, eq=False)
class DensityF:
    """The density f of a profile and its integral F."""

    profile: ConcaveProfile
    tol: float = 1e-9

    def f(self, t):
        return _map(lambda s: f_from_profile(self.profile, s, self.tol), t)

    def F(self, t):
        return _map(lambda s: cumulative_f(self.profile, s, self.tol), t)

    __call__ = f


def weights_from_profile(Hp, n, tol=1e-9):
    """a_l = n·(F(l/n) − F((l−1)/n)) for l = 1..n."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    F = np.array([cumulative_f(Hp, l / n, tol) for l in range(n + 1)])
    a = n * np.diff(F)
    # Differences of nearly equal F values can come out a few ulps increasing
    increase = np.diff(a)
    if np.any(increase > 0):
        if np.max(increase) > 1e-12 * np.max(a):
            raise NotDecreasing(f"Weights from H = {Hp.name} increase: {a.tolist()}")
        a = np.minimum.accumulate(a)
    logger.debug(f"weights_from_profile: n = {n}, sum = {a.sum():.15g}")
    return WeightSequence(a)


def weights_from_orlicz(M, n, tol=1e-9):
    """Weights a_l for a strictly 2-concave M with M*(1) = 1.

    Raises
    ------
    NotTwoConcave
        If M(√t) is not strictly concave on the sample grid.
    NotNormalized
        If |M*(1) − 1| > 1e-8; normalize with ``normalize_dual_at_one`` first.
    DegenerateProfile
        If the profile degenerates.
    """
    report = two_concavity_check(M, TWO_CONCAVITY_GRID, margin=STRICT_MARGIN)
    if not report:
        worst = min(report.violations, key=lambda v: v["gap"])
        raise NotTwoConcave(
            f"M = {M.name} is not strictly 2-concave: {len(report.violations)} "
            f"failing triples, e.g. around t = {worst['t2']:.6g}"
        )
    dual = conjugate_dual(M, t_max=2.0)
    value = float(dual(1.0))
    if abs(value - 1.0) > 1e-8:
        raise NotNormalized(f"M*(1) = {value:.12g}, not 1")
    return weights_from_profile(ConcaveProfile.from_dual(dual), n, tol)


def weights_by_quadrature(Hp, n, tol=1e-9):
    """a_l = n∫ f over each cell, integrating f itself by quadrature.

    The first cell holds the singularity of f at 0; its weight is the
    remainder n·√H(1) − Σ_{l≥2} a_l.
    """
    n = int(n)
    a = np.empty(n)
    for l in range(2, n + 1):
        value, _ = integrate.quad(
            lambda s: f_from_profile(Hp, s, tol),
            (l - 1) / n,
            l / n,
            epsabs=tol,
            epsrel=1e-10,
            limit=100,
        )
        a[l - 1] = n * value
    a[0] = n * math.sqrt(Hp.H(1.0)) - math.fsum(a[1:])
    return a


@dataclass(frozen=True, eq=False)
class ReconstructionReport:
    """F(t)² + t∫ₜ¹f² next to H(t) on a grid."""

    grid: np.ndarray
    reconstructed: np.ndarray
    expected: np.ndarray
    tol: float

    @property
    def deviations(self):
        return np.abs(self.reconstructed - self.expected)

    @property
    def max_deviation(self):
        return float(np.max(self.deviations)) if self.deviations.size else 0.0

    @property
    def passed(self):
        return self.max_deviation <= self.tol

    def __bool__(self):
        return self.passed


def reconstruct_H_check(Hp, grid, tol=1e-6, quad_tol=1e-10):
    """Recompute H(t) = F(t)² + t∫ₜ¹ f² on a grid and report the deviation.

    The tail integrals are accumulated over consecutive grid cells, each by
    quadrature in log-space.
    """
    grid = np.asarray(grid, dtype=float).ravel()
    if np.any(grid <= 0) or np.any(grid > 1):
        raise ValueError("The grid must lie in (0, 1]")
    order = np.argsort(grid)
    points = np.append(grid[order], 1.0)

    def square(u):
        s = math.exp(u)
        return f_from_profile(Hp, s, quad_tol) ** 2 * s

    pieces = np.zeros(grid.size)
    for i in range(grid.size):
        lo, hi = points[i], points[i + 1]
        if hi > lo:
            pieces[i], _ = integrate.quad(
                square, math.log(lo), math.log(hi), epsabs=quad_tol, limit=100
            )
    tails = np.cumsum(pieces[::-1])[::-1]

    reconstructed = np.empty(grid.size)
    expected = np.empty(grid.size)
    for i, t in enumerate(points[:-1]):
        F = cumulative_f(Hp, t, quad_tol)
        reconstructed[order[i]] = F * F + t * tails[i]
        expected[order[i]] = Hp.H(t)
    report = ReconstructionReport(grid, reconstructed, expected, tol)
    logger.debug(f"reconstruct_H_check: max deviation {report.max_deviation:.3g}")
    return report


@dataclass(frozen=True)
class LimitTable:
    """The two quantities that vanish at 0, tabulated on t = 2⁻ᵏ."""

    k: np.ndarray
    t: np.ndarray
    tail_term: np.ndarray
    density_term: np.ndarray
    threshold: float

    @property
    def decreasing(self):
        return bool(
            np.all(np.diff(self.tail_term) < 0)
            and np.all(np.diff(self.density_term) < 0)
        )

    @property
    def below_threshold(self):
        return bool(
            self.tail_term[-1] < self.threshold
            and self.density_term[-1] < self.threshold
        )

    @property
    def passed(self):
        return self.decreasing and self.below_threshold


def lemma8_limits(Hp, k_max=20, tol=1e-9):
    """t·√(−(H/t)′) = √(H − tH′) and t·f(t) on t = 2⁻ᵏ, k = 1..k_max.

    Both tend to 0 with t; the threshold is 1e-3·√H(1).
    """
    k = np.arange(1, int(k_max) + 1)
    t = 2.0 ** (-k.astype(float))
    tail = np.sqrt(Hp.gap(t))
    density = np.array([s * f_from_profile(Hp, s, tol) for s in t])
    return LimitTable(k, t, tail, density, 1e-3 * math.sqrt(Hp.H(1.0)))


def sqrt_prefix_b(n):
    """b_k = √(nk) − √(n(k−1)), so that Σ_{j≤k} b_j = √(nk)."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    k = np.arange(1, n + 1, dtype=float)
    return WeightSequence(math.sqrt(n) / (np.sqrt(k) + np.sqrt(k - 1.0)))


def product_knots(a, b):
    """Knots of N*⁻¹ from the n² products aᵢb_k sorted nonincreasing.

    The value at l/n² is (1/n²)Σ_{j≤l} t(j).

    Raises
    ------
    LengthMismatch
        If a and b differ in length.
    """
    a = WeightSequence.coerce(a)
    b = WeightSequence.coerce(b)
    if a.n != b.n:
        raise LengthMismatch(f"a has {a.n} entries but b has {b.n}")
    n2 = a.n * a.n
    products = np.sort(np.outer(a.a, b.a).ravel())[::-1]
    levels = np.arange(1, n2 + 1) / n2
    return PiecewiseAffine(
        np.append(0.0, levels), np.append(0.0, np.cumsum(products) / n2), concave=True
    )


@dataclass(frozen=True)
class CorridorRow:
    """One knot of a two-sided corridor: lower ≤ value ≤ upper."""

    l: int
    value: float
    lower: float
    upper: float

    def holds(self, slack=0.0):
        return self.lower - slack <= self.value <= self.upper + slack


def knot_corridor(a, b=None):
    """(1/√2)·N*⁻¹(l/n) ≤ M*⁻¹(l/n) ≤ √5·N*⁻¹(l/n) at every l.

    M* comes from ``knots_from_weights(a)`` and N* from
    ``product_knots(a, b)`` with b = sqrt_prefix_b(n) by default.
    """
    a = WeightSequence.coerce(a)
    b = sqrt_prefix_b(a.n) if b is None else WeightSequence.coerce(b)
    inverse_M = knots_from_weights(a)
    inverse_N = product_knots(a, b)
    rows = []
    for l in range(1, a.n + 1):
        level = l / a.n
        N = inverse_N(level)
        rows.append(
            CorridorRow(l, inverse_M(level), N / math.sqrt(2.0), math.sqrt(5.0) * N)
        )
    return rows


def theorem2_corridor(a, dual):
    """Bounds on M*⁻¹(l/n) from the weights generated for M.

    Lower: the knot of M*⁻¹ built from a at l/n. Upper: the same expression
    with the tail Σ_{j>l} a_j² replaced by Σ_{j=l}^{n−1} a_j².
    """
    a = WeightSequence.coerce(a)
    n = a.n
    lower = knots_from_weights(a)
    prefix = a.prefix_sums
    rows = []
    for l in range(1, n + 1):
        shifted = math.fsum(a.a[l - 1 : n - 1] ** 2)
        upper = math.sqrt((prefix[l - 1] / n) ** 2 + (l / n) * shifted / n)
        rows.append(CorridorRow(l, float(dual.inverse(l / n)), lower(l / n), upper))
    return rows
