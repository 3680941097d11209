"""Shared fixtures for negshannon tests."""

import numpy as np
import pytest

from negshannon.probtab import JointDistribution, generate, w4, w_type


@pytest.fixture
def fig1():
    """XOR distribution: uniform over 000, 011, 101, 110."""
    return generate("fig1")


@pytest.fixture
def eq14():
    """Eight-point distribution over 4-valued X, Y, Z."""
    return generate("eq14")


@pytest.fixture
def w_symmetric():
    """W-type distribution with equal weights."""
    return w_type(1 / 3, 1 / 3)


@pytest.fixture
def ee0a_uniform():
    """EE0a family with a = b = c = d = 1/4."""
    return w4("EE0a", 0.25, 0.25, 0.25, 0.25)


@pytest.fixture
def ee0d_uniform():
    """EE0d family with a = b = c = d = 1/4."""
    return w4("EE0d", 0.25, 0.25, 0.25, 0.25)


@pytest.fixture
def uniform3():
    """Uniform distribution over three bits."""
    return JointDistribution.from_table("XYZ", np.full((2, 2, 2), 1 / 8))


@pytest.fixture
def rng():
    """Seeded generator for randomized properties."""
    return np.random.default_rng(20240611)
