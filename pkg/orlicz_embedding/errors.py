# -*- coding: utf-8 -*-

"""Exceptions raised by orlicz_embedding.

Each error derives from ``OrliczError`` and from the closest built-in
exception, so callers can catch either ``ValueError`` for bad input or the
specific class.
"""


class OrliczError(Exception):
    """Base class for all errors in this package."""


class NotConvex(OrliczError, ValueError):
    """A function that must be convex is not."""


class NotStrictlyConvex(NotConvex):
    """M′ is not strictly increasing, so it cannot be inverted."""


class DomainExceeded(OrliczError, ValueError):
    """An argument lies outside the range a dual function was built for."""


class ZeroVector(OrliczError, ValueError):
    """A gauge was requested for the zero vector."""


class NotTwoConcave(OrliczError, ValueError):
    """M(√t) is not (strictly) concave."""


class NotNormalized(OrliczError, ValueError):
    """The dual function does not satisfy M*(1) = 1."""


class DegenerateProfile(OrliczError, ValueError):
    """H(t) − tH′(t) vanishes, so the density f is undefined."""


class NotDecreasing(OrliczError, ValueError):
    """A weight sequence is not positive and nonincreasing."""


class NotStrictlyIncreasing(OrliczError, ValueError):
    """Knot values must be strictly increasing to be inverted."""


class NotConcave(OrliczError, RuntimeError):
    """Constructed knots failed the three-point concavity test."""


class LengthMismatch(OrliczError, ValueError):
    """Two sequences that must have compatible lengths do not."""


class TooLargeForExact(OrliczError, ValueError):
    """Exact enumeration was requested beyond the configured cutoff."""


class ConfigError(OrliczError, ValueError):
    """An experiment configuration is malformed.

    Parameters
    ----------
    message : str
        What is wrong.
    field : str, optional
        The JSON path of the offending field, e.g. ``experiments[2].n``.
    line, column : int, optional
        Position in the file, when known (JSON syntax errors).
    """

    def __init__(self, message, field=None, line=None, column=None):
        self.message = message
        self.field = field
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
            if self.column is not None:
                where.append(f"column {self.column}")
        if self.field is not None:
            where.append(f"field '{self.field}'")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message
