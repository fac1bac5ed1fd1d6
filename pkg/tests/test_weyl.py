import random

import pytest

from homore.errors import EmptyFamilyError, UsageError, ZeroPolynomialError
from homore.exactnum import OCTONIONS
from homore.ore import constant, ore_mul, x_power
from homore.weyl import (
    OctoPoly,
    OctoPolyRing,
    build_weyl,
    leading_data,
    leading_ideal_probe,
    octo_delta,
    random_weyl,
    reduce,
    render_weyl,
    verify_trace,
    weyl_constant,
    weyl_x,
    weyl_y,
    x_nucleus_check,
)

E = OCTONIONS.basis()


@pytest.fixture(scope="module")
def ideal_generators(weyl):
    """g1 = e1 u and g2 = (e2 u) X with u = Y^3 X + 1."""
    u = ore_mul(weyl_constant(weyl, E[0], 3), weyl_x(weyl)) + weyl_constant(weyl, E[0])
    g1 = ore_mul(weyl_constant(weyl, E[1]), u)
    g2 = ore_mul(ore_mul(weyl_constant(weyl, E[2]), u), weyl_x(weyl))
    return [g1, g2]


def _ideal_member(weyl, generators, rng):
    total = weyl.zero()
    for _ in range(rng.randint(1, 3)):
        g = rng.choice(generators)
        c1, c2 = OCTONIONS.random_nonzero(rng, 2), OCTONIONS.random_nonzero(rng, 2)
        term = ore_mul(ore_mul(g, weyl_constant(weyl, c1)), weyl_constant(weyl, c2))
        total = total + ore_mul(term, x_power(weyl, rng.randint(0, 2)))
    return total


# ----------------------------------------------------------------
# O[Y]
# ----------------------------------------------------------------
def test_delta_is_a_derivation():
    ring = OctoPolyRing()
    rng = random.Random(21)
    for _ in range(100):
        p, q = ring.random_element(rng, height=2), ring.random_element(rng, height=2)
        assert octo_delta(p * q) == octo_delta(p) * q + p * octo_delta(q)


def test_octo_poly_basics():
    ring = OctoPolyRing()
    y = ring.y()
    assert octo_delta(y * y) == y.scale(2)
    assert str(OctoPoly.monomial(E[3], 2) - ring.one()) == "1*e3*Y^2 - 1*e0"
    assert OctoPoly().is_zero() and str(OctoPoly()) == "0"
    with pytest.raises(ZeroPolynomialError):
        OctoPoly().leading_term()


def test_build_weyl_modes(weyl, weyl_identity):
    assert build_weyl("zero") is weyl
    assert weyl.alpha_kind.value == "zero" and weyl_identity.alpha_kind.value == "identity"
    with pytest.raises(UsageError):
        build_weyl("half")


# ----------------------------------------------------------------
# A(O)
# ----------------------------------------------------------------
def test_weyl_relation_and_rendering(weyl):
    x, y = weyl_x(weyl), weyl_y(weyl)
    assert render_weyl(ore_mul(x, y)) == "1*e0*Y*X + 1*e0"
    assert render_weyl(ore_mul(x, y) - ore_mul(y, x)) == "1*e0"
    p = weyl_constant(weyl, E[1], 2) + ore_mul(weyl_constant(weyl, E[4].scale(-3)), x_power(weyl, 2))
    assert render_weyl(p) == "-3*e4*X^2 + 1*e1*Y^2"
    assert render_weyl(weyl.zero()) == "0"


@pytest.mark.parametrize("k", range(5))
def test_x_powers_lie_in_the_nucleus(weyl, k):
    report = x_nucleus_check(weyl, k, samples=50, degree=3, seed=k)
    assert report.passed, report.render()


def test_octonion_constants_are_not_in_the_nucleus(weyl):
    e1, e2, e4 = (weyl_constant(weyl, E[i]) for i in (1, 2, 4))
    assert ore_mul(ore_mul(e1, e2), e4) != ore_mul(e1, ore_mul(e2, e4))


# ----------------------------------------------------------------
# Reduction
# ----------------------------------------------------------------
def test_leading_data(weyl):
    p = ore_mul(weyl_constant(weyl, E[5], 2), x_power(weyl, 3)) + weyl_y(weyl)
    ld = leading_data(p)
    assert ld.xdeg == 3 and ld.lc == OctoPoly.monomial(E[5], 2)
    with pytest.raises(ZeroPolynomialError):
        leading_data(weyl.zero())


def test_reduction_by_x_leaves_degree_zero(weyl):
    rng = random.Random(22)
    gens = [weyl_x(weyl)]
    for _ in range(100):
        p = random_weyl(weyl, rng, degree=2, height=2)
        trace = reduce(p, gens)
        assert trace.complete
        assert trace.remainder.is_zero() or trace.remainder.degree == 0
        assert verify_trace(trace)
        assert len(trace.steps) <= trace.step_bound or p.is_zero()


def test_ideal_members_reduce_to_zero(weyl, ideal_generators):
    rng = random.Random(23)
    for _ in range(100):
        p = _ideal_member(weyl, ideal_generators, rng)
        trace = reduce(p, ideal_generators)
        assert trace.remainder.is_zero()
        assert verify_trace(trace)
        assert len(trace.steps) <= trace.step_bound


def test_commutator_reduces_to_one(weyl):
    x, y = weyl_x(weyl), weyl_y(weyl)
    trace = reduce(ore_mul(x, y) - ore_mul(y, x), [x])
    assert not trace.steps
    assert render_weyl(trace.remainder) == "1*e0"
    assert trace.render().endswith("remainder: 1*e0")


def test_non_monomial_leading_coefficient_is_accepted(weyl):
    lc = OctoPoly.monomial(E[0], 2) + OctoPolyRing().one()
    g = ore_mul(constant(weyl, lc), weyl_x(weyl))
    trace = reduce(g, [g])
    assert trace.complete and trace.remainder.is_zero()
    rng = random.Random(24)
    for _ in range(100):
        p = random_weyl(weyl, rng, degree=2, height=2)
        trace = reduce(p, [g])
        assert verify_trace(trace)
        if trace.complete and not trace.remainder.is_zero():
            assert trace.remainder.degree == 0


def test_incomplete_reduction_is_flagged(weyl):
    p = weyl_constant(weyl, E[1])
    trace = reduce(p, [weyl_y(weyl)])
    assert not trace.complete
    assert trace.remainder == p
    assert "incomplete" in trace.render()


def test_tampered_trace_fails_verification(weyl):
    x = weyl_x(weyl)
    trace = reduce(ore_mul(x, weyl_y(weyl)), [x])
    assert trace.steps
    forged = type(trace)(trace.input, trace.generators, trace.steps, trace.remainder + x, trace.complete)
    assert not verify_trace(forged)


def test_reduce_rejects_bad_generators(weyl):
    with pytest.raises(EmptyFamilyError):
        reduce(weyl_x(weyl), [])
    with pytest.raises(ZeroPolynomialError):
        reduce(weyl_x(weyl), [weyl.zero()])


def test_leading_ideal_probe(weyl):
    x = weyl_x(weyl)
    g1 = ore_mul(constant(weyl, OctoPolyRing().one() + OctoPolyRing().y()), x)
    g2 = weyl_constant(weyl, E[3])
    report = leading_ideal_probe([g1, g2])
    assert report.n == 1
    assert [e.xdeg for e in report.entries] == [1, 0]
    assert [e.invertible_monomial for e in report.entries] == [False, True]
    assert report.entries[1].aligned == "1*e3*X"
    with pytest.raises(EmptyFamilyError):
        leading_ideal_probe([])
