# -*- coding: utf-8 -*-

"""Permutation averages, rearrangements and the b-norm.

Exact averages enumerate permutations in fixed-size batches and reduce with
``math.fsum`` per batch, then over batches, so the result does not depend
on anything but the input. Monte Carlo averages draw permutations in
fixed-size chunks, each from its own ``SeedSequence`` child of the master
seed.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import heapq
import itertools
import logging
import math
from typing import Optional

import numpy as np
from scipy import stats

from .construction import WeightSequence, orlicz_from_knots
from .errors import LengthMismatch, TooLargeForExact
from .orlicz_core import orlicz_norm

try:
    from itertools import batched
except ImportError:
    from itertools import islice

    def batched(iterable, n):
        "Batch data into tuples of length n. The last batch may be shorter."
        if n < 1:
            raise ValueError("n must be at least one")
        it = iter(iterable)
        while batch := tuple(islice(it, n)):
            yield batch


logger = logging.getLogger("OrliczEmbedding")

#: Permutations per batch in exact enumeration
EXACT_BATCH = 5040
#: Permutations per independently seeded Monte Carlo chunk
MC_CHUNK = 4096
#: Largest number of compositions the exhaustive b-norm will enumerate
MAX_COMPOSITIONS = 2_000_000


def c_n(n):
    """cₙ = 1 − 1/2! + 1/3! − … + (−1)ⁿ⁺¹/n!, summed exactly."""
    return float(c_n_exact(n))


def c_n_exact(n):
    """cₙ as a Fraction."""
    n = int(n)
    if n < 1:
        raise ValueError("c_n needs n >= 1")
    total = Fraction(0)
    term = Fraction(1)
    for k in range(1, n + 1):
        term /= k
        total += term if k % 2 == 1 else -term
    return total


@dataclass(frozen=True)
class SamplingMode:
    """How a permutation average is computed.

    ``kind`` is "exact" (full enumeration) or "mc" (Monte Carlo with
    ``samples`` draws from ``seed``).
    """

    kind: str = "exact"
    samples: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("exact", "mc"):
            raise ValueError(f"Unknown sampling mode '{self.kind}'")
        if self.kind == "mc" and self.samples < 2:
            raise ValueError("Monte Carlo needs at least 2 samples")

    @classmethod
    def exact(cls):
        return cls("exact")

    @classmethod
    def mc(cls, samples, seed=None):
        return cls("mc", int(samples), seed)

    @classmethod
    def coerce(cls, mode):
        if mode is None:
            return cls.exact()
        if isinstance(mode, cls):
            return mode
        if isinstance(mode, str):
            return cls(mode)
        return cls(**mode)

    @property
    def is_exact(self):
        return self.kind == "exact"


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo mean with its 99% normal-approximation half-width."""

    mean: float
    half_width_99: float
    samples: int
    seed: int
    std: float = 0.0

    @property
    def interval(self):
        return (self.mean - self.half_width_99, self.mean + self.half_width_99)

    def covers(self, value, slack=0.0):
        return abs(value - self.mean) <= self.half_width_99 + slack

    def __float__(self):
        return self.mean


@dataclass(frozen=True, eq=False)
class RearrangementTable:
    """Values sorted nonincreasing, s(1) ≥ s(2) ≥ …"""

    s: np.ndarray
    source_size: int

    def __len__(self):
        return self.s.size

    def top_mean(self, k, divisor=None):
        """(1/divisor)·Σ_{j≤k} s(j), with divisor = k by default."""
        return math.fsum(self.s[:k]) / (k if divisor is None else divisor)


def rearrange(values):
    """The nonincreasing rearrangement of a finite collection of numbers."""
    flat = np.asarray(values, dtype=float).ravel()
    s = np.sort(flat)[::-1].copy()
    s.setflags(write=False)
    return RearrangementTable(s, flat.size)


@dataclass(frozen=True)
class BracketReport:
    """A computed value and the bracket [lower, upper] it must lie in."""

    value: float
    lower: float
    upper: float
    estimate: Optional[McEstimate] = None
    details: dict = field(default_factory=dict)

    def holds(self, slack=0.0):
        return self.lower - slack <= self.value <= self.upper + slack

    @property
    def passed(self):
        return self.holds()


def _exact_average(n, kernel, batch=EXACT_BATCH):
    """Average of kernel over all permutations of range(n)."""
    partials = []
    for chunk in batched(itertools.permutations(range(n)), batch):
        partials.append(math.fsum(kernel(np.array(chunk, dtype=np.intp))))
    return math.fsum(partials) / math.factorial(n)


def _mc_average(n, kernel, samples, seed, draws=1):
    """Monte Carlo average of kernel over uniform permutations.

    ``kernel`` receives ``draws`` permutation arrays of shape (m, n).
    """
    sequence = np.random.SeedSequence(seed)
    seed = sequence.entropy
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)
    values = []
    for child, size in zip(sequence.spawn(len(sizes)), sizes):
        rng = np.random.default_rng(child)
        tile = np.tile(np.arange(n), (size, 1))
        perms = [rng.permuted(tile, axis=1) for _ in range(draws)]
        values.append(kernel(*perms))
    values = np.concatenate(values)
    mean = math.fsum(values) / samples
    std = float(np.std(values, ddof=1))
    half_width = float(stats.norm.ppf(0.995)) * std / math.sqrt(samples)
    logger.debug(f"Monte Carlo: {samples} samples, mean {mean:.8g} ± {half_width:.3g}")
    return McEstimate(mean, half_width, samples, seed, std)


def _average(n, kernel, mode, n_max):
    mode = SamplingMode.coerce(mode)
    if mode.is_exact:
        if n > n_max:
            raise TooLargeForExact(
                f"Exact enumeration of {n}! permutations exceeds the cutoff "
                f"n <= {n_max}; use Monte Carlo"
            )
        return _exact_average(n, kernel)
    return _mc_average(n, kernel, mode.samples, mode.seed)


def ave_quadratic(x, a, mode=None, n_max=10):
    """Ave_π (Σᵢ |xᵢ a_π(i)|²)^{1/2}.

    Returns a float in exact mode and an McEstimate in Monte Carlo mode.

    Raises
    ------
    LengthMismatch
        If x and a differ in length.
    TooLargeForExact
        If exact mode is requested for n > n_max.
    """
    x = np.abs(np.asarray(x, dtype=float).ravel())
    a = np.abs(np.asarray(a, dtype=float).ravel())
    if x.size != a.size:
        raise LengthMismatch(f"x has {x.size} entries but a has {a.size}")

    def kernel(perms):
        return np.sqrt(np.sum((x[None, :] * a[perms]) ** 2, axis=1))

    return _average(x.size, kernel, mode, n_max)


def _nonnegative_square(A, ndim):
    A = np.asarray(A, dtype=float)
    if A.ndim != ndim or len(set(A.shape)) != 1:
        raise LengthMismatch(f"Expected a cube of dimension {ndim}, got {A.shape}")
    if np.any(A < 0):
        raise ValueError("Entries must be nonnegative")
    return A


def ave_max_matrix(A, mode=None, n_max=10):
    """Ave_π max_i a(i, π(i)) and the bracket [cₙ·m, m].

    m = (1/n)Σ_{k≤n} s(k) over the rearrangement s of all n² entries.

    Returns
    -------
    BracketReport
        ``value`` is the average (the mean in Monte Carlo mode, with the
        McEstimate in ``estimate``).
    """
    A = _nonnegative_square(A, 2)
    n = A.shape[0]
    rows = np.arange(n)

    def kernel(perms):
        return A[rows[None, :], perms].max(axis=1)

    result = _average(n, kernel, mode, n_max)
    upper = rearrange(A).top_mean(n)
    return _bracket(result, c_n(n) * upper, upper)


def ave_max_tensor(T, mode=None, n_max=6):
    """Ave_{π,σ} max_i a(i, π(i), σ(i)) and its bracket.

    m = (1/n²)Σ_{k≤n²} s(k), with s the rearrangement of all n³ entries; the
    bracket is [((n−1)²/(n² + (n−1)²))·m, m]. Exact mode enumerates π and,
    for each, averages over σ the matrix b(i, j) = a(i, π(i), j).
    """
    T = _nonnegative_square(T, 3)
    n = T.shape[0]
    rows = np.arange(n)
    mode = SamplingMode.coerce(mode)

    if mode.is_exact:
        if n > n_max:
            raise TooLargeForExact(
                f"Exact enumeration of ({n}!)² permutation pairs exceeds the "
                f"cutoff n <= {n_max}; use Monte Carlo"
            )
        sigmas = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
        partials = []
        for pi in itertools.permutations(range(n)):
            B = T[rows, list(pi), :]
            partials.append(math.fsum(B[rows[None, :], sigmas].max(axis=1)))
        result = math.fsum(partials) / math.factorial(n) ** 2
    else:

        def kernel(pis, sigmas):
            return T[rows[None, :], pis, sigmas].max(axis=1)

        result = _mc_average(n, kernel, mode.samples, mode.seed, draws=2)

    upper = rearrange(T).top_mean(n * n)
    factor = (n - 1) ** 2 / (n * n + (n - 1) ** 2)
    return _bracket(result, factor * upper, upper)


def _bracket(result, lower, upper):
    if isinstance(result, McEstimate):
        return BracketReport(result.mean, lower, upper, estimate=result)
    return BracketReport(result, lower, upper)


def outer_tensor(x, a, b):
    """The tensor |xᵢ a_j b_k|."""
    x = np.abs(np.asarray(x, dtype=float).ravel())
    a = np.abs(np.asarray(a, dtype=float).ravel())
    b = np.abs(np.asarray(b, dtype=float).ravel())
    if not x.size == a.size == b.size:
        raise LengthMismatch(
            f"x, a and b have lengths {x.size}, {a.size} and {b.size}"
        )
    return np.einsum("i,j,k->ijk", x, a, b)


def _allocation_value(B, ax, k):
    return math.fsum(B[k] * ax)


def _check_b(x, b, s):
    b = WeightSequence.coerce(b)
    s = b.n if s is None else int(s)
    if b.n != s:
        raise LengthMismatch(f"b must have s = {s} entries, not {b.n}")
    ax = np.abs(np.asarray(x, dtype=float).ravel())
    if ax.size > s:
        raise LengthMismatch(f"x has {ax.size} entries, more than s = {s}")
    return ax, b, s


def b_norm(x, b, s=None, method="greedy", min_part=0):
    """max over integer allocations Σkᵢ = s of Σᵢ B(kᵢ)|xᵢ|, B(k) = Σ_{j≤k} b_j.

    Parameters
    ----------
    x : array_like
        The vector, with n <= s entries.
    b : WeightSequence or array_like
        Positive nonincreasing weights of length s.
    s : int, optional
        The number of units; defaults to len(b).
    method : str
        "greedy" hands out units one at a time to the largest marginal gain
        b_{kᵢ+1}|xᵢ|; "exhaustive" enumerates all compositions.
    min_part : int
        Lower bound on each kᵢ, 0 or 1.

    Raises
    ------
    LengthMismatch
        If len(b) != s or len(x) > s.
    """
    ax, b, s = _check_b(x, b, s)
    n = ax.size
    if min_part not in (0, 1):
        raise ValueError("min_part must be 0 or 1")
    spare = s - n * min_part
    if spare < 0:
        raise ValueError(f"Cannot give each of {n} coordinates {min_part} of {s} units")
    B = np.append(0.0, b.prefix_sums)

    if method == "greedy":
        k = np.full(n, min_part, dtype=np.intp)
        heap = [(-b[min_part] * ax[i], i) for i in range(n) if min_part < s]
        heapq.heapify(heap)
        for _ in range(spare):
            _, i = heapq.heappop(heap)
            k[i] += 1
            if k[i] < s:
                heapq.heappush(heap, (-b[k[i]] * ax[i], i))
        return _allocation_value(B, ax, k)

    if method == "exhaustive":
        count = math.comb(spare + n - 1, n - 1)
        if count > MAX_COMPOSITIONS:
            raise TooLargeForExact(f"{count} compositions are too many to enumerate")
        best = -math.inf
        for cuts in itertools.combinations(range(spare + n - 1), n - 1):
            edges = np.array((-1,) + cuts + (spare + n - 1,))
            k = np.diff(edges) - 1 + min_part
            best = max(best, _allocation_value(B, ax, k))
        return best

    raise ValueError(f"Unknown b-norm method '{method}'")


def dual_from_b(b, s=None):
    """The piecewise-affine M* with M*(Σ_{j≤l} b_j) = l/s."""
    b = WeightSequence.coerce(b)
    s = b.n if s is None else int(s)
    if b.n != s:
        raise LengthMismatch(f"b must have s = {s} entries, not {b.n}")
    levels = np.arange(1, s + 1) / s
    return orlicz_from_knots(list(zip(levels, b.prefix_sums)))


def lemma6_bracket(x, b, s=None, M_from_b=None, method="greedy", min_part=0):
    """‖x‖_b ≤ ‖x‖_M ≤ 2‖x‖_b for the M induced by b.

    Returns
    -------
    BracketReport
        ``value`` is ‖x‖_M; ``details`` holds both norms.
    """
    ax, b, s = _check_b(x, b, s)
    dual = dual_from_b(b, s) if M_from_b is None else M_from_b
    norm_b = b_norm(ax, b, s, method=method, min_part=min_part)
    norm_M = orlicz_norm(ax, dual)
    return BracketReport(
        norm_M,
        norm_b,
        2.0 * norm_b,
        details={"b_norm": norm_b, "orlicz_norm": norm_M, "method": method},
    )
