#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Fixtures for testing the orlicz_embedding package."""

import math

import numpy as np
import pytest

from orlicz_embedding import ConcaveProfile, OrliczFunction, normalize_dual_at_one


@pytest.fixture()
def rng():
    """A fixed random generator."""
    return np.random.default_rng(20261017)


@pytest.fixture()
def square():
    """M(t) = t²."""
    return OrliczFunction.power(2, coefficient=1.0)


@pytest.fixture(scope="session")
def normalized():
    """|t|^{3/2}/(3/2) rescaled so that M*(1) = 1."""
    return normalize_dual_at_one(OrliczFunction.power(1.5))


@pytest.fixture()
def sqrt_profile():
    """H(t) = √t."""
    return ConcaveProfile.power(0.5)


def sqrt_density(t):
    """f for H(t) = √t in closed form."""
    return math.sqrt(2.0) / 6.0 * (t**-0.75 - 1.0) + 1.0 - math.sqrt(2.0) / 2.0


def sqrt_cumulative(t):
    """F for H(t) = √t in closed form."""
    return t * sqrt_density(t) + t**0.25 / math.sqrt(2.0)
