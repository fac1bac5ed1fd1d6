import logging
import random
from fractions import Fraction

import pytest

from homore.exactnum import CDRing
from homore.homring import cayley_dickson_algebra, truncated_polynomial_algebra, yau_twist
from homore.linalg import diagonal_matrix, identity_matrix, mat_add, mat_scale
from homore.ore import OreContext, identity_map, linear_map, zero_map
from homore.weyl import build_weyl

DOUBLING = diagonal_matrix([1, 2, 4, 8])
HALVING = diagonal_matrix([1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)])


@pytest.fixture(autouse=True)
def propagate_logs():
    """The CLI and the app detach the package logger from root; caplog listens on root."""
    yield
    logging.getLogger("homore").propagate = True


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def octonions():
    return CDRing(3)


@pytest.fixture(scope="session")
def quaternions():
    return CDRing(2)


@pytest.fixture(scope="session")
def octonion_algebra():
    return cayley_dickson_algebra(3)


@pytest.fixture(scope="session")
def truncated():
    return truncated_polynomial_algebra(4)


@pytest.fixture(scope="session")
def quantum(truncated):
    """Yau twist of Q[t]/(t^4) by t -> 2t; hom-associative, not associative, no unit."""
    return yau_twist(truncated, DOUBLING)


@pytest.fixture(scope="session")
def classical_ctx(truncated):
    """Q[t]/(t^4)[X; t -> 2t, sigma - id] with alpha = id: an associative Ore extension."""
    sigma = linear_map(truncated, DOUBLING, "sigma")
    delta_matrix = mat_add(DOUBLING, mat_scale(identity_matrix(4), Fraction(-1)))
    return OreContext(
        ring=truncated,
        sigma=sigma.with_inverse(linear_map(truncated, HALVING, "sigma^-1")),
        delta=linear_map(truncated, delta_matrix, "delta"),
        alpha=identity_map(),
        sigma_inverse=linear_map(truncated, HALVING, "sigma^-1"),
        name="classical",
    )


@pytest.fixture(scope="session")
def quantum_ctx(quantum):
    """quantum4[X; sigma = alpha = t -> 2t, 0]: hom-associative with alpha = sigma != id."""
    inverse = linear_map(quantum, HALVING, "sigma^-1")
    return OreContext(
        ring=quantum,
        sigma=linear_map(quantum, DOUBLING, "sigma").with_inverse(inverse),
        delta=zero_map(quantum),
        alpha=linear_map(quantum, DOUBLING, "alpha"),
        sigma_inverse=inverse,
        name="quantum",
    )


@pytest.fixture(scope="session")
def weyl():
    return build_weyl("zero")


@pytest.fixture(scope="session")
def weyl_identity():
    return build_weyl("identity")
