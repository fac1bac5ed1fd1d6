import functools
import operator
import random
from fractions import Fraction

import pytest

from homore.errors import (
    ChainNotAscendingError,
    EmptyFamilyError,
    LatticeNotEnumerableError,
    NotAMorphismError,
    NotASubmoduleError,
    RingMismatchError,
)
from homore.homring import truncated_polynomial_algebra
from homore.hommodule import (
    ModuleMorphism,
    ModuleSide,
    chain_stabilization,
    direct_sum,
    direct_sum_reassociation,
    enumerate_submodules,
    first_iso_witness,
    generated_submodule,
    identity_morphism,
    image_submodule,
    induced_chain_indices,
    is_bijective,
    is_hom_submodule,
    kernel_of,
    load_module,
    maximal_elements,
    module_axioms_check,
    morphism_check,
    morphism_witness,
    ore_truncation_cover,
    ore_truncation_module,
    preimage_submodule,
    quotient_module,
    regular_module,
    second_iso_witness,
    submodule_intersection,
    submodule_module,
    submodule_sum,
    third_iso_witness,
    trivial_module,
)
from homore.linalg import SubspaceBasis, diagonal_matrix, identity_matrix
from homore.schemas import ModuleSpec

from tests.conftest import DOUBLING


@pytest.fixture(scope="module")
def regular(truncated):
    return regular_module(truncated)


@pytest.fixture(scope="module")
def modules(truncated):
    """Instances with non-trivial lattices: regular, a direct sum and a twisted trivial module."""
    reg = regular_module(truncated)
    return [
        reg,
        direct_sum([reg, trivial_module(truncated, 2, diagonal_matrix([1, 2]))]),
        trivial_module(truncated, 3, diagonal_matrix([1, 2, 3])),
    ]


def _random_vector(rng, dim):
    lead = rng.randint(0, dim - 1)
    return tuple(Fraction(0) if k < lead else Fraction(rng.randint(-2, 2)) for k in range(dim))


def _random_submodule(M, rng, size=None):
    size = rng.randint(1, 2) if size is None else size
    return generated_submodule(M, [_random_vector(rng, M.dim) for _ in range(size)])


def _random_member(N, rng):
    return N.from_coordinates([Fraction(rng.randint(-2, 2)) for _ in range(N.dim)])


# ----------------------------------------------------------------
# Axioms
# ----------------------------------------------------------------
def test_regular_modules_satisfy_axioms(truncated, quantum):
    for alg in (truncated, quantum):
        for side in ModuleSide:
            assert module_axioms_check(regular_module(alg, side)).passed


def test_regular_module_of_octonions_fails(octonion_algebra):
    report = module_axioms_check(regular_module(octonion_algebra))
    assert not report.passed
    assert "FAIL" in report.render()


def test_direct_sum_and_quotient_satisfy_axioms(modules, rng):
    for M in modules:
        assert module_axioms_check(M).passed
        N = _random_submodule(M, rng)
        Q, projection = quotient_module(M, N)
        assert module_axioms_check(Q).passed
        assert morphism_check(projection)
        assert kernel_of(projection) == N


def test_bad_action_is_reported(truncated):
    spec = ModuleSpec(ring="truncated4", dim=2, action={1: [[1, 0], [0, 1]]})
    M = load_module(spec, truncated)
    report = module_axioms_check(M)
    assert not report.passed
    assert report.checked == 2 * 16


def test_ore_truncation_modules(classical_ctx, quantum_ctx):
    for ctx in (classical_ctx, quantum_ctx):
        M = ore_truncation_module(ctx, 2)
        assert M.dim == 12
        assert module_axioms_check(M).passed
        cover = ore_truncation_cover(ctx, 2)
        assert morphism_check(cover)
        assert is_bijective(cover)


# ----------------------------------------------------------------
# Submodules
# ----------------------------------------------------------------
def test_ideals_of_truncated_algebra(regular):
    t = (0, 1, 0, 0)
    assert generated_submodule(regular, [t]) == SubspaceBasis.span([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 4)
    assert not is_hom_submodule(regular, SubspaceBasis.span([t], 4))
    assert is_hom_submodule(regular, SubspaceBasis.zero(4))


def test_sum_and_intersection_require_submodules(regular):
    bad = SubspaceBasis.span([(0, 1, 0, 0)], 4)
    with pytest.raises(NotASubmoduleError):
        submodule_sum(bad, SubspaceBasis.full(4), regular)
    with pytest.raises(NotASubmoduleError):
        quotient_module(regular, bad)


def test_modular_law(modules):
    rng = random.Random(41)
    for n in range(50):
        M = modules[n % len(modules)]
        A = _random_submodule(M, rng)
        C = generated_submodule(M, [_random_member(A, rng)])
        B = _random_submodule(M, rng)
        assert C.is_subspace_of(A)
        left = submodule_intersection(A, submodule_sum(B, C, M), M)
        right = submodule_sum(submodule_intersection(A, B, M), C, M)
        assert left == right


def test_submodule_as_module(modules, rng):
    for M in modules:
        N = _random_submodule(M, rng)
        sub, inclusion = submodule_module(M, N)
        assert module_axioms_check(sub).passed
        assert morphism_check(inclusion)
        assert image_submodule(inclusion) == N


# ----------------------------------------------------------------
# Morphisms and isomorphism theorems
# ----------------------------------------------------------------
def test_morphism_witness(regular, truncated):
    assert morphism_witness(identity_morphism(regular)) is None
    doubling = ModuleMorphism(regular, regular, DOUBLING)
    assert morphism_witness(doubling) is not None
    with pytest.raises(NotAMorphismError):
        first_iso_witness(doubling)
    other = regular_module(truncated_polynomial_algebra(3))
    assert morphism_witness(ModuleMorphism(regular, other, identity_matrix(4))) == "modules over different rings"


def test_multiplication_is_an_endomorphism(regular, truncated):
    rng = random.Random(42)
    for _ in range(10):
        a = truncated.random_element(rng)
        f = ModuleMorphism(regular, regular, regular.operator(a))
        assert morphism_check(f)
        witness = first_iso_witness(f)
        assert morphism_check(witness.iso) and is_bijective(witness.iso)


def test_first_isomorphism_theorem(modules):
    rng = random.Random(43)
    for n in range(25):
        M = modules[n % len(modules)]
        N = _random_submodule(M, rng)
        for f in (quotient_module(M, N)[1], submodule_module(M, N)[1]):
            witness = first_iso_witness(f)
            assert witness.kernel == kernel_of(f)
            assert morphism_check(witness.iso)
            assert is_bijective(witness.iso)


def test_second_isomorphism_theorem(modules):
    rng = random.Random(44)
    for n in range(25):
        M = modules[n % len(modules)]
        N, L = _random_submodule(M, rng), _random_submodule(M, rng)
        iso = second_iso_witness(M, N, L)
        assert morphism_check(iso)
        assert is_bijective(iso)


def test_third_isomorphism_theorem(modules):
    rng = random.Random(45)
    for n in range(25):
        M = modules[n % len(modules)]
        N = _random_submodule(M, rng)
        L = generated_submodule(M, [_random_member(N, rng)])
        iso = third_iso_witness(M, L, N)
        assert morphism_check(iso)
        assert is_bijective(iso)


def test_third_isomorphism_needs_nesting(regular):
    small = generated_submodule(regular, [(0, 0, 0, 1)])
    large = generated_submodule(regular, [(0, 1, 0, 0)])
    with pytest.raises(NotASubmoduleError):
        third_iso_witness(regular, large, small)


def test_direct_sums(truncated, quantum, regular):
    triv = trivial_module(truncated, 2)
    iso = direct_sum_reassociation(regular, triv, regular)
    assert morphism_check(iso) and is_bijective(iso)
    assert direct_sum([regular]) is regular
    with pytest.raises(EmptyFamilyError):
        direct_sum([])
    with pytest.raises(RingMismatchError):
        direct_sum([regular, regular_module(quantum)])


# ----------------------------------------------------------------
# Lattices and chains
# ----------------------------------------------------------------
def _correspondence(M, N):
    lattice = enumerate_submodules(M)
    Q, projection = quotient_module(M, N)
    above = [S for S in lattice if N.is_subspace_of(S)]
    images = []
    for S in above:
        image = image_submodule(projection, S)
        assert is_hom_submodule(Q, image)
        assert preimage_submodule(projection, image) == S
        images.append(image)
    for T in enumerate_submodules(Q):
        pre = preimage_submodule(projection, T)
        assert N.is_subspace_of(pre)
        assert image_submodule(projection, pre) == T
        assert T in images


def test_quotient_submodule_correspondence_exhaustive(truncated):
    small = truncated_polynomial_algebra(3)
    instances = [
        regular_module(small),
        trivial_module(truncated, 3, diagonal_matrix([1, 2, 3])),
        trivial_module(truncated, 3, [(2, 1, 0), (0, 2, 0), (0, 0, 5)]),
    ]
    for M in instances:
        for N in enumerate_submodules(M):
            _correspondence(M, N)


def test_generated_submodule_is_least(truncated, rng):
    """The closure equals the intersection of every hom-submodule containing the generators."""
    instances = [
        regular_module(truncated_polynomial_algebra(3)),
        trivial_module(truncated, 3, diagonal_matrix([1, 2, 3])),
        trivial_module(truncated, 3, [(2, 1, 0), (0, 2, 0), (0, 0, 5)]),
    ]
    for M in instances:
        lattice = enumerate_submodules(M)
        for _ in range(10):
            S = [_random_vector(rng, M.dim) for _ in range(rng.randint(1, 2))]
            containing = [N for N in lattice if all(N.contains(s) for s in S)]
            assert generated_submodule(M, S) == functools.reduce(operator.and_, containing)


def test_enumerated_lattices(truncated):
    small = truncated_polynomial_algebra(3)
    assert len(enumerate_submodules(regular_module(small))) == 4
    trivial = trivial_module(truncated, 3, diagonal_matrix([1, 2, 3]))
    lattice = enumerate_submodules(trivial)
    assert len(lattice) == 8
    assert maximal_elements(lattice) == [SubspaceBasis.full(3)]
    with pytest.raises(LatticeNotEnumerableError):
        enumerate_submodules(trivial_module(truncated, 2))
    with pytest.raises(EmptyFamilyError):
        maximal_elements([])


def test_chain_stabilization_bounded_by_dimension(modules):
    rng = random.Random(46)
    for n in range(30):
        M = modules[n % len(modules)]
        generators, current = [], []
        for _ in range(rng.randint(1, 8)):
            if rng.random() < 0.6:
                current = current + [_random_vector(rng, M.dim)]
            generators.append(list(current) or [tuple([Fraction(0)] * M.dim)])
        assert chain_stabilization(M, generators) <= len(generators) - 1
        # stalled steps collapsed, every step up to the index is strict
        strict = [generators[0]]
        for gens in generators[1:]:
            if generated_submodule(M, gens) != generated_submodule(M, strict[-1]):
                strict.append(gens)
        assert chain_stabilization(M, strict) == len(strict) - 1 <= M.dim


def test_chain_of_ideals(regular):
    chain = [[(0, 0, 0, 1)], [(0, 0, 1, 0)], [(0, 1, 0, 0)], [(0, 1, 0, 0)], [(1, 0, 0, 0)], [(1, 0, 0, 0)]]
    assert chain_stabilization(regular, chain) == 4
    with pytest.raises(ChainNotAscendingError):
        chain_stabilization(regular, [[(1, 0, 0, 0)], [(0, 1, 0, 0)]])
    with pytest.raises(EmptyFamilyError):
        chain_stabilization(regular, [])


def test_induced_chains_control_the_chain(modules):
    """A chain in M stabilizes once its traces in N and M/N do."""
    rng = random.Random(47)
    for n in range(20):
        M = modules[n % len(modules)]
        N = _random_submodule(M, rng)
        chain, current = [], SubspaceBasis.zero(M.dim)
        for _ in range(5):
            if rng.random() < 0.5:
                current = current + generated_submodule(M, [_random_vector(rng, M.dim)])
            chain.append(current)
        in_m, in_n, in_q = induced_chain_indices(M, N, chain)
        assert in_m <= max(in_n, in_q)
