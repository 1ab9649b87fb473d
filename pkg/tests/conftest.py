"""Shared fixtures and cached constructions for the test suite."""

from functools import lru_cache

import numpy as np
import pytest

import xfekete as xf


@lru_cache(maxsize=None)
def spec_of(family, m, alpha, n, beta=None):
    return xf.FamilySpec(family, m, alpha, n, beta=beta)


@lru_cache(maxsize=None)
def zeros_of(family, m, alpha, n, beta=None):
    """Zero sets are pure functions of the spec; cache across tests."""
    return xf.find_zeros(spec_of(family, m, alpha, n, beta))


@lru_cache(maxsize=None)
def built_of(family, m, alpha, n, beta=None):
    return xf.build_exceptional(spec_of(family, m, alpha, n, beta))


def random_nodes(rng, n, lo=0.1, hi=30.0):
    """Strictly increasing nodes with a guaranteed minimum gap."""
    x = np.sort(rng.uniform(lo, hi, n))
    return x + np.arange(n) * 1e-3


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
