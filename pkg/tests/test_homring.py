import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homore.errors import AlgebraMismatchError, AlgebraSpecError, NotAnEndomorphismError, NotAssociativeError
from homore.homring import (
    NucleusSlot,
    Side,
    associator,
    associator_identity_defect,
    cayley_dickson_algebra,
    hom_associativity_check,
    hom_identity_holds,
    is_algebra_morphism,
    is_associative,
    is_commutative,
    is_hom_ideal,
    make_algebra,
    nucleus_membership,
    nucleus_subspace,
    opposite_algebra,
    truncated_polynomial_algebra,
    with_alpha,
    yau_twist,
)
from homore.linalg import SubspaceBasis, diagonal_matrix, identity_matrix, matrix, zero_matrix

from tests.conftest import DOUBLING


def _constants(dim, products):
    c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), (k, v) in products.items():
        c[i][j][k] = v
    return c


# ----------------------------------------------------------------
# Loading
# ----------------------------------------------------------------
def test_load_rejects_bad_unit():
    constants = _constants(2, {(0, 0): (0, 1), (0, 1): (1, 1), (1, 0): (1, 1)})
    assert make_algebra("dual", ["one", "eps"], constants, unit=0).unit == 0
    with pytest.raises(AlgebraSpecError):
        make_algebra("dual", ["one", "eps"], constants, unit=1)


def test_load_rejects_shapes_and_names():
    with pytest.raises(AlgebraSpecError):
        make_algebra("bad", ["a", "b"], _constants(3, {}))
    with pytest.raises(AlgebraSpecError):
        make_algebra("bad", ["a", "a"], _constants(2, {}))
    with pytest.raises(AlgebraSpecError):
        make_algebra("bad", ["a", "2b"], _constants(2, {}))


def test_unit_required_for_scalars(quantum):
    assert quantum.unit is None
    with pytest.raises(AlgebraSpecError):
        quantum.one()


def test_mixing_algebras_fails(truncated, octonion_algebra):
    with pytest.raises(AlgebraMismatchError):
        truncated.basis_element(1) * octonion_algebra.basis_element(1)


def test_equality_ignores_name(truncated):
    renamed = with_alpha(truncated, truncated.alpha_matrix, suffix="_copy")
    assert renamed == truncated and renamed.name == "truncated4_copy"


# ----------------------------------------------------------------
# Hom-associativity
# ----------------------------------------------------------------
def test_octonions_are_not_associative_but_alpha_zero_is_hom_associative(octonion_algebra):
    assert not is_associative(octonion_algebra)
    assert not hom_associativity_check(octonion_algebra).passed
    twisted = with_alpha(octonion_algebra, zero_matrix(8, 8))
    report = hom_associativity_check(twisted)
    assert report.passed and report.checked == 512


def test_associative_algebras_pass_with_identity(truncated):
    assert is_associative(truncated) and is_commutative(truncated)
    assert hom_associativity_check(truncated).passed
    assert hom_associativity_check(cayley_dickson_algebra(2)).passed


def test_failure_report_names_witnesses(octonion_algebra):
    report = hom_associativity_check(octonion_algebra)
    i, j, k = report.failures[0]
    e = octonion_algebra.basis()
    assert not hom_identity_holds(octonion_algebra, e[i], e[j], e[k])
    assert "FAIL" in report.render()


def test_yau_twist(truncated, quantum):
    assert not quantum.associative
    assert hom_associativity_check(quantum).passed
    assert quantum.alpha_matrix == DOUBLING
    t = quantum.basis_element(1)
    assert (t * t).coords == (0, 0, 4, 0)
    assert yau_twist(truncated, identity_matrix(4)) == truncated


def test_yau_twist_preconditions(truncated, octonion_algebra):
    with pytest.raises(NotAssociativeError):
        yau_twist(octonion_algebra, identity_matrix(8))
    with pytest.raises(NotAnEndomorphismError):
        yau_twist(truncated, diagonal_matrix([1, 2, 3, 4]))
    with pytest.raises(NotAnEndomorphismError):
        yau_twist(truncated, diagonal_matrix([2, 2, 4, 8]))


def test_yau_twist_of_quaternions_by_conjugation_by_unit():
    """Inner automorphisms of H give hom-associative twists."""
    h = cayley_dickson_algebra(2)
    # conjugation by e1: fixes e0 and e1, negates e2 and e3
    twisted = yau_twist(h, diagonal_matrix([1, 1, -1, -1]))
    assert hom_associativity_check(twisted).passed


@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
@settings(max_examples=100, deadline=None)
def test_associator_identity(u, r, s, t):
    alg = cayley_dickson_algebra(3)
    e = alg.basis()
    assert associator_identity_defect(e[u], e[r], e[s], e[t]).is_zero()


def test_associator_identity_random(octonion_algebra):
    rng = random.Random(3)
    for _ in range(30):
        u, r, s, t = (octonion_algebra.random_element(rng) for _ in range(4))
        assert associator_identity_defect(u, r, s, t).is_zero()


# ----------------------------------------------------------------
# Nuclei
# ----------------------------------------------------------------
def test_octonion_nucleus_is_the_scalars(octonion_algebra):
    for slot in NucleusSlot:
        assert nucleus_subspace(octonion_algebra, slot) == SubspaceBasis.span([(1,) + (0,) * 7], 8)
    e = octonion_algebra.basis()
    assert nucleus_membership(octonion_algebra, e[0]).full
    flags = nucleus_membership(octonion_algebra, e[3])
    assert not flags.left and not flags.middle and not flags.right


def test_nucleus_of_associative_algebra_is_everything(truncated):
    assert nucleus_subspace(truncated, "full") == SubspaceBasis.full(4)


def test_quantum_nucleus_members_are_associator_free(quantum):
    left = nucleus_subspace(quantum, NucleusSlot.LEFT)
    basis = quantum.basis()
    for row in left.rows:
        x = quantum.element(row)
        assert all(associator(x, a, b).is_zero() for a, b in itertools.product(basis, repeat=2))


# ----------------------------------------------------------------
# Constructions
# ----------------------------------------------------------------
def test_opposite_algebra(octonion_algebra):
    op = opposite_algebra(octonion_algebra)
    e, f = octonion_algebra.basis(), op.basis()
    assert (f[1] * f[2]).coords == (e[2] * e[1]).coords
    assert op.name == "octonions_op"
    assert opposite_algebra(op) == octonion_algebra and opposite_algebra(op).name == "octonions"


def test_morphisms(truncated, quantum):
    assert is_algebra_morphism(identity_matrix(4), truncated, truncated)
    assert is_algebra_morphism(DOUBLING, truncated, truncated)
    assert not is_algebra_morphism(diagonal_matrix([1, 3, 3, 3]), truncated, truncated)
    # multiplicative but does not intertwine the twisting maps
    assert not is_algebra_morphism(identity_matrix(4), quantum, with_alpha(quantum, identity_matrix(4)))


def test_right_ideals_of_unital_algebra_are_hom_ideals(truncated):
    """alpha(b) = b alpha(1) puts alpha(I) inside any right ideal."""
    # alpha(x) = x(1 + t)
    twisted = with_alpha(truncated, matrix([(1, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]))
    assert hom_associativity_check(twisted).passed
    for k in range(4):
        ideal = SubspaceBasis.span([twisted.basis_element(i).coords for i in range(k, 4)], 4)
        assert is_hom_ideal(twisted, ideal, Side.RIGHT)
        assert is_hom_ideal(twisted, ideal, Side.TWO_SIDED)
    not_ideal = SubspaceBasis.span([(0, 1, 0, 0)], 4)
    assert not is_hom_ideal(twisted, not_ideal, "right")


def test_quantum_ideals_need_alpha_invariance(quantum):
    span = SubspaceBasis.span([(0, 1, 1, 0), (0, 0, 0, 1)], 4)
    assert not is_hom_ideal(quantum, span, "two_sided")
    tail = SubspaceBasis.span([(0, 0, 1, 0), (0, 0, 0, 1)], 4)
    assert is_hom_ideal(quantum, tail, "two_sided")


def test_truncated_builtin():
    alg = truncated_polynomial_algebra(3)
    assert alg.basis_names == ("one", "t", "t2")
    t = alg.basis_element(1)
    assert (t * t * t).is_zero()
    assert str(t * t + t.scale(Fraction(1, 2))) == "1/2*t + t2"
