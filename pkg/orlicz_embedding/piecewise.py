# -*- coding: utf-8 -*-

"""Monotone piecewise-affine functions given by their knots."""

from dataclasses import dataclass
import logging

import numpy as np

from .errors import NotStrictlyIncreasing

logger = logging.getLogger("OrliczEmbedding")


@dataclass(frozen=True, eq=False)
class PiecewiseAffine:
    """A nondecreasing function, affine between knots.

    The first knot is the origin. Past the last knot the function continues
    with its final slope, which keeps a convex (or concave) function convex
    (or concave).

    Attributes
    ----------
    t : numpy.ndarray
        Knot abscissae, strictly increasing, ``t[0] == 0``.
    v : numpy.ndarray
        Knot values, nondecreasing, ``v[0] == 0``.
    concave : bool
        Whether the function was constructed as a concave function.
    """

    t: np.ndarray
    v: np.ndarray
    concave: bool = False

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        v = np.array(self.v, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("Knots need matching 1-D arrays with at least two points")
        if t[0] != 0.0 or v[0] != 0.0:
            raise ValueError("The first knot must be the origin (0, 0)")
        if np.any(np.diff(t) <= 0):
            raise ValueError("Knot abscissae must be strictly increasing")
        if np.any(np.diff(v) < 0):
            raise ValueError("Knot values must be nondecreasing")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_pairs(cls, pairs, concave=False):
        """Build from an iterable of (t, v) pairs, adding the origin if absent."""
        pairs = [(float(a), float(b)) for a, b in pairs]
        if not pairs or pairs[0] != (0.0, 0.0):
            pairs.insert(0, (0.0, 0.0))
        t, v = zip(*pairs)
        return cls(np.array(t), np.array(v), concave=concave)

    def __len__(self):
        return self.t.size

    @property
    def knots(self):
        """The knots as a list of (t, v) tuples."""
        return list(zip(self.t.tolist(), self.v.tolist()))

    @property
    def slopes(self):
        """The slope on each segment, ``len(self) - 1`` values."""
        return np.diff(self.v) / np.diff(self.t)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = np.interp(x, self.t, self.v)
        beyond = x > self.t[-1]
        if np.any(beyond):
            slope = self.slopes[-1]
            y = np.where(beyond, self.v[-1] + slope * (x - self.t[-1]), y)
        if y.ndim == 0:
            return float(y)
        return y

    def slope_at(self, x):
        """The right derivative at x (the final slope past the last knot)."""
        x = np.asarray(x, dtype=float)
        index = np.searchsorted(self.t, x, side="right") - 1
        index = np.clip(index, 0, self.t.size - 2)
        result = self.slopes[index]
        if result.ndim == 0:
            return float(result)
        return result

    def inverse(self):
        """The inverse function, obtained by swapping coordinates.

        Raises
        ------
        NotStrictlyIncreasing
            If two knot values coincide.
        """
        if np.any(np.diff(self.v) <= 0):
            raise NotStrictlyIncreasing(
                "The knot values are not strictly increasing, so the function "
                "has no inverse"
            )
        return PiecewiseAffine(self.v.copy(), self.t.copy(), concave=self.is_convex())

    def concavity_gaps(self):
        """Slope decrease at each interior knot; negative entries break concavity."""
        return -np.diff(self.slopes)

    def is_concave(self, tol=1e-9):
        """Three-point concavity at every interior knot, to relative tolerance."""
        slopes = self.slopes
        if slopes.size < 2:
            return True
        scale = max(1.0, float(np.max(np.abs(slopes))))
        return bool(np.all(self.concavity_gaps() >= -tol * scale))

    def is_convex(self, tol=1e-9):
        """Three-point convexity at every interior knot, to relative tolerance."""
        slopes = self.slopes
        if slopes.size < 2:
            return True
        scale = max(1.0, float(np.max(np.abs(slopes))))
        return bool(np.all(self.concavity_gaps() <= tol * scale))
