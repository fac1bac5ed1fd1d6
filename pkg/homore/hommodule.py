"""
Finite-dimensional hom-modules over structure-constant algebras.

A HomModule stores one dim x dim matrix per ring basis element: column k of
action[j] is the coordinate vector of b_k . e_j (right modules) or e_j . b_k (left
modules). Hom-submodules are SubspaceBasis values in reduced row-echelon form, so
equality of submodules is equality of bases.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from homore.errors import (
    AlgebraSpecError,
    ChainNotAscendingError,
    EmptyFamilyError,
    LatticeNotEnumerableError,
    NotAMorphismError,
    NotASubmoduleError,
    RingMismatchError,
)
from homore.homring import Algebra, AlgebraElement
from homore.linalg import (
    Matrix,
    SubspaceBasis,
    column_space,
    from_columns,
    generalized_eigenspace,
    identity_matrix,
    is_cyclic_with_rational_spectrum,
    is_invertible,
    kernel,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    matrix,
    rational_eigenvalues,
    unit_vector,
    zero_matrix,
)
from homore.ore import OreContext, constant, from_left_form, monomial, poly_vector, alpha_extend
from homore.schemas import ModuleAxiomsReport, ModuleSpec

logger = logging.getLogger(__name__)


class ModuleSide(str, Enum):
    RIGHT = "right"
    LEFT = "left"


# ----------------------------------------------------------------
# 🔹 Types
# ----------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class HomModule:
    name: str
    ring: Algebra
    dim: int
    action: tuple[Matrix, ...]
    alpha_matrix: Matrix
    side: ModuleSide = ModuleSide.RIGHT

    def act(self, m: Sequence[Fraction], r: AlgebraElement) -> tuple[Fraction, ...]:
        """m . r (right) or r . m (left) for an arbitrary ring element r."""
        return mat_vec(self.operator(r), m)

    def operator(self, r: AlgebraElement) -> Matrix:
        out = zero_matrix(self.dim, self.dim)
        for c, a in zip(r.coords, self.action):
            if c:
                out = mat_add(out, mat_scale(a, c))
        return out

    def alpha(self, m: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return mat_vec(self.alpha_matrix, m)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return unit_vector(self.dim, i)

    def operators(self) -> tuple[Matrix, ...]:
        return (self.alpha_matrix,) + self.action


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    """matrix is target.dim x source.dim."""

    source: HomModule
    target: HomModule
    matrix: Matrix

    def __call__(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return mat_vec(self.matrix, v)


@dataclass(frozen=True)
class FirstIsoWitness:
    kernel: SubspaceBasis
    image: SubspaceBasis
    iso: ModuleMorphism


# ----------------------------------------------------------------
# 🔹 Construction
# ----------------------------------------------------------------
def _square(m: Matrix, n: int) -> bool:
    return len(m) == n and all(len(row) == n for row in m)


def load_module(spec: ModuleSpec, ring: Algebra) -> HomModule:
    d = spec.dim
    for j, m in spec.action.items():
        if not 0 <= j < ring.dim:
            raise AlgebraSpecError(f"{spec.name}: action index {j} outside 0..{ring.dim - 1}")
        if not _square(matrix(m), d):
            raise AlgebraSpecError(f"{spec.name}: action {j} must be {d}x{d}")
    alpha = matrix(spec.alpha_matrix) if spec.alpha_matrix is not None else identity_matrix(d)
    if not _square(alpha, d):
        raise AlgebraSpecError(f"{spec.name}: alphaM must be {d}x{d}")
    action = tuple(matrix(spec.action[j]) if j in spec.action else zero_matrix(d, d) for j in range(ring.dim))
    return HomModule(spec.name, ring, d, action, alpha, ModuleSide(spec.side))


def regular_module(alg: Algebra, side: ModuleSide | str = ModuleSide.RIGHT) -> HomModule:
    """R as a module over itself with alpha_M = alpha_R."""
    side = ModuleSide(side)
    basis = alg.basis()
    action = []
    for e in basis:
        if side is ModuleSide.RIGHT:
            cols = [(b * e).coords for b in basis]
        else:
            cols = [(e * b).coords for b in basis]
        action.append(from_columns(cols, alg.dim))
    return HomModule(f"{alg.name}_{side.value}", alg, alg.dim, tuple(action), alg.alpha_matrix, side)


def trivial_module(alg: Algebra, dim: int, alpha_matrix: Sequence[Sequence] | None = None) -> HomModule:
    """Zero action; every alpha-invariant subspace is a hom-submodule."""
    alpha = matrix(alpha_matrix) if alpha_matrix is not None else identity_matrix(dim)
    return HomModule(f"trivial{dim}", alg, dim, tuple(zero_matrix(dim, dim) for _ in range(alg.dim)), alpha)


# ----------------------------------------------------------------
# 🔹 Axioms and morphisms
# ----------------------------------------------------------------
def module_axioms_check(M: HomModule) -> ModuleAxiomsReport:
    """(M3) on basis triples: alpha_M(m)(r1 r2) = (m r1) alpha_R(r2), mirrored for left modules."""
    ring = M.ring
    basis = ring.basis()
    products = [[M.operator(a * b) for b in basis] for a in basis]
    alpha_ops = [M.operator(ring.alpha(e)) for e in basis]
    failures = []
    for j, k in itertools.product(range(ring.dim), repeat=2):
        if M.side is ModuleSide.RIGHT:
            lhs = mat_mul(products[j][k], M.alpha_matrix)
            rhs = mat_mul(alpha_ops[k], M.action[j])
        else:
            lhs = mat_mul(products[j][k], M.alpha_matrix)
            rhs = mat_mul(alpha_ops[j], M.action[k])
        if lhs != rhs:
            for i in range(M.dim):
                if tuple(row[i] for row in lhs) != tuple(row[i] for row in rhs):
                    failures.append((i, j, k))
    return ModuleAxiomsReport(module=M.name, checked=M.dim * ring.dim**2, failures=failures)


def morphism_witness(f: ModuleMorphism) -> Optional[str]:
    """First violated morphism condition, or None."""
    src, tgt = f.source, f.target
    if src.ring != tgt.ring or src.side is not tgt.side:
        return "modules over different rings"
    if len(f.matrix) != tgt.dim or any(len(row) != src.dim for row in f.matrix):
        return f"matrix shape is not {tgt.dim}x{src.dim}"
    if mat_mul(f.matrix, src.alpha_matrix) != mat_mul(tgt.alpha_matrix, f.matrix):
        return "f alpha_M != alpha_M' f"
    for j in range(src.ring.dim):
        if mat_mul(f.matrix, src.action[j]) != mat_mul(tgt.action[j], f.matrix):
            return f"f(m {src.ring.basis_names[j]}) != f(m) {src.ring.basis_names[j]}"
    return None


def morphism_check(f: ModuleMorphism) -> bool:
    return morphism_witness(f) is None


def identity_morphism(M: HomModule) -> ModuleMorphism:
    return ModuleMorphism(M, M, identity_matrix(M.dim))


def is_bijective(f: ModuleMorphism) -> bool:
    return f.source.dim == f.target.dim and (f.source.dim == 0 or is_invertible(f.matrix))


def kernel_of(f: ModuleMorphism) -> SubspaceBasis:
    return kernel(f.matrix, f.source.dim)


def image_submodule(f: ModuleMorphism, N: SubspaceBasis | None = None) -> SubspaceBasis:
    if N is None:
        return column_space(f.matrix, f.target.dim)
    return N.image(f.matrix, f.target.dim)


def preimage_submodule(f: ModuleMorphism, N: SubspaceBasis) -> SubspaceBasis:
    return N.preimage(f.matrix, f.source.dim)


# ----------------------------------------------------------------
# 🔹 Submodules
# ----------------------------------------------------------------
def is_hom_submodule(M: HomModule, N: SubspaceBasis) -> bool:
    if N.ambient_dim != M.dim:
        return False
    return all(N.contains(mat_vec(op, row)) for row in N.rows for op in M.operators())


def _require_submodule(M: HomModule, N: SubspaceBasis, label: str = "subspace") -> None:
    if not is_hom_submodule(M, N):
        raise NotASubmoduleError(f"{label} is not a hom-submodule of {M.name}")


def generated_submodule(M: HomModule, S: Iterable[Sequence]) -> SubspaceBasis:
    """Least subspace containing S closed under the ring action and alpha_M."""
    current = SubspaceBasis.span(S, M.dim)
    operators = M.operators()
    rounds = 0
    while True:
        rounds += 1
        grown = SubspaceBasis.span(
            current.rows + tuple(mat_vec(op, row) for row in current.rows for op in operators), M.dim
        )
        if grown.dim == current.dim:
            logger.debug("closure in %s stabilized at dim %d after %d rounds", M.name, current.dim, rounds)
            return current
        current = grown


def submodule_sum(A: SubspaceBasis, B: SubspaceBasis, M: HomModule) -> SubspaceBasis:
    _require_submodule(M, A, "left summand")
    _require_submodule(M, B, "right summand")
    return A + B


def submodule_intersection(A: SubspaceBasis, B: SubspaceBasis, M: HomModule) -> SubspaceBasis:
    _require_submodule(M, A)
    _require_submodule(M, B)
    return A & B


def relative_coordinates(N: SubspaceBasis, sub: SubspaceBasis) -> SubspaceBasis:
    """sub (a subspace of N) in the coordinates of N's basis."""
    return SubspaceBasis.span((N.coordinates(row) for row in sub.rows), N.dim)


def submodule_module(M: HomModule, N: SubspaceBasis) -> tuple[HomModule, ModuleMorphism]:
    """N in its own coordinates, with the inclusion N -> M."""
    _require_submodule(M, N)
    n = N.dim

    def restrict(op: Matrix) -> Matrix:
        return from_columns([N.coordinates(mat_vec(op, row)) for row in N.rows], n)

    sub = HomModule(
        f"{M.name}_sub{n}",
        M.ring,
        n,
        tuple(restrict(a) for a in M.action),
        restrict(M.alpha_matrix),
        M.side,
    )
    inclusion = ModuleMorphism(sub, M, from_columns(list(N.rows), M.dim))
    return sub, inclusion


# ----------------------------------------------------------------
# 🔹 Quotients and sums
# ----------------------------------------------------------------
def quotient_module(M: HomModule, N: SubspaceBasis) -> tuple[HomModule, ModuleMorphism]:
    """M/N on the complement spanned by N's free columns, with the natural projection."""
    _require_submodule(M, N)
    q = M.dim - N.dim

    def induced(op: Matrix) -> Matrix:
        return from_columns([N.quotient_coordinates(mat_vec(op, N.lift(unit_vector(q, k)))) for k in range(q)], q)

    Q = HomModule(
        f"{M.name}_quot{q}",
        M.ring,
        q,
        tuple(induced(a) for a in M.action),
        induced(M.alpha_matrix),
        M.side,
    )
    projection = ModuleMorphism(M, Q, from_columns([N.quotient_coordinates(M.basis_vector(i)) for i in range(M.dim)], q))
    return Q, projection


def _block_diagonal(blocks: Sequence[Matrix], sizes: Sequence[int]) -> Matrix:
    n = sum(sizes)
    rows = []
    offset = 0
    for block, size in zip(blocks, sizes):
        for row in block:
            rows.append((Fraction(0),) * offset + tuple(row) + (Fraction(0),) * (n - offset - size))
        offset += size
    return tuple(rows)


def direct_sum(parts: Sequence[HomModule]) -> HomModule:
    if not parts:
        raise EmptyFamilyError("direct sum of no modules")
    if len(parts) == 1:
        return parts[0]
    first = parts[0]
    for p in parts[1:]:
        if p.ring != first.ring or p.side is not first.side:
            raise RingMismatchError(f"{p.name} and {first.name} are not modules over the same ring and side")
    sizes = [p.dim for p in parts]
    action = tuple(_block_diagonal([p.action[j] for p in parts], sizes) for j in range(first.ring.dim))
    alpha = _block_diagonal([p.alpha_matrix for p in parts], sizes)
    name = "(" + " + ".join(p.name for p in parts) + ")"
    return HomModule(name, first.ring, sum(sizes), action, alpha, first.side)


def direct_sum_reassociation(M1: HomModule, M2: HomModule, M3: HomModule) -> ModuleMorphism:
    """(M1 + M2) + M3 -> M1 + (M2 + M3); coordinates line up, so the matrix is the identity."""
    left = direct_sum([direct_sum([M1, M2]), M3])
    right = direct_sum([M1, direct_sum([M2, M3])])
    return ModuleMorphism(left, right, identity_matrix(left.dim))


# ----------------------------------------------------------------
# 🔹 Isomorphism theorems
# ----------------------------------------------------------------
def first_iso_witness(f: ModuleMorphism) -> FirstIsoWitness:
    """M/ker f -> im f."""
    problem = morphism_witness(f)
    if problem is not None:
        raise NotAMorphismError(problem)
    ker = kernel_of(f)
    im = image_submodule(f)
    Q, _ = quotient_module(f.source, ker)
    image_module, _ = submodule_module(f.target, im)
    cols = [im.coordinates(f(ker.lift(unit_vector(Q.dim, k)))) for k in range(Q.dim)]
    iso = ModuleMorphism(Q, image_module, from_columns(cols, im.dim))
    return FirstIsoWitness(kernel=ker, image=im, iso=iso)


def second_iso_witness(M: HomModule, N: SubspaceBasis, L: SubspaceBasis) -> ModuleMorphism:
    """N/(N meet L) -> (N + L)/L."""
    _require_submodule(M, N)
    _require_submodule(M, L)
    total = N + L
    N_mod, _ = submodule_module(M, N)
    S_mod, _ = submodule_module(M, total)
    meet_in_N = relative_coordinates(N, N & L)
    L_in_total = relative_coordinates(total, L)
    left_q, _ = quotient_module(N_mod, meet_in_N)
    right_q, _ = quotient_module(S_mod, L_in_total)
    cols = []
    for k in range(left_q.dim):
        in_N = meet_in_N.lift(unit_vector(left_q.dim, k))
        in_M = N.from_coordinates(in_N)
        cols.append(L_in_total.quotient_coordinates(total.coordinates(in_M)))
    return ModuleMorphism(left_q, right_q, from_columns(cols, right_q.dim))


def third_iso_witness(M: HomModule, L: SubspaceBasis, N: SubspaceBasis) -> ModuleMorphism:
    """(M/L)/(N/L) -> M/N for L <= N <= M."""
    _require_submodule(M, L)
    _require_submodule(M, N)
    if not L.is_subspace_of(N):
        raise NotASubmoduleError("the smaller submodule is not contained in the larger one")
    ML, p_L = quotient_module(M, L)
    N_over_L = image_submodule(p_L, N)
    double, _ = quotient_module(ML, N_over_L)
    MN, p_N = quotient_module(M, N)
    cols = []
    for k in range(double.dim):
        in_ML = N_over_L.lift(unit_vector(double.dim, k))
        cols.append(p_N(L.lift(in_ML)))
    return ModuleMorphism(double, MN, from_columns(cols, MN.dim))


# ----------------------------------------------------------------
# 🔹 Noetherian checks
# ----------------------------------------------------------------
def _stabilization_index(chain: Sequence[SubspaceBasis]) -> int:
    last = len(chain) - 1
    index = last
    while index > 0 and chain[index - 1] == chain[last]:
        index -= 1
    return index


def _require_ascending(chain: Sequence[SubspaceBasis]) -> None:
    for k, (a, b) in enumerate(zip(chain, chain[1:])):
        if not a.is_subspace_of(b):
            raise ChainNotAscendingError(f"chain element {k} is not contained in element {k + 1}")


def chain_stabilization(M: HomModule, generators: Sequence[Iterable[Sequence]]) -> int:
    """Least index after which the chain of generated submodules is constant."""
    if not generators:
        raise EmptyFamilyError("empty chain")
    chain = [generated_submodule(M, S) for S in generators]
    _require_ascending(chain)
    return _stabilization_index(chain)


def induced_chain_indices(M: HomModule, N: SubspaceBasis, chain: Sequence[SubspaceBasis]) -> tuple[int, int, int]:
    """Stabilization indices of the chain, of its meet with N and of its image in M/N."""
    if not chain:
        raise EmptyFamilyError("empty chain")
    _require_ascending(chain)
    _, projection = quotient_module(M, N)
    in_N = [c & N for c in chain]
    in_quotient = [image_submodule(projection, c) for c in chain]
    return _stabilization_index(chain), _stabilization_index(in_N), _stabilization_index(in_quotient)


def maximal_elements(family: Sequence[SubspaceBasis]) -> list[SubspaceBasis]:
    if not family:
        raise EmptyFamilyError("empty family of submodules")
    distinct: list[SubspaceBasis] = []
    for member in family:
        if member not in distinct:
            distinct.append(member)
    return [
        a for a in distinct if not any(a != b and a.is_subspace_of(b) for b in distinct)
    ]


def enumerate_submodules(M: HomModule) -> list[SubspaceBasis]:
    """Every hom-submodule, when some operator of M is cyclic with rational spectrum."""
    for op in M.operators():
        if is_cyclic_with_rational_spectrum(op):
            break
    else:
        raise LatticeNotEnumerableError(f"{M.name}: no cyclic operator with rational eigenvalues")

    spectrum = sorted(rational_eigenvalues(op).items())
    pieces = [
        [generalized_eigenspace(op, ev, power) for power in range(mult + 1)] for ev, mult in spectrum
    ]
    found: list[SubspaceBasis] = []
    for combo in itertools.product(*pieces):
        candidate = SubspaceBasis.zero(M.dim)
        for part in combo:
            candidate = candidate + part
        if is_hom_submodule(M, candidate) and candidate not in found:
            found.append(candidate)
    found.sort(key=lambda s: (s.dim, s.rows))
    logger.debug("%s has %d hom-submodules", M.name, len(found))
    return found


# ----------------------------------------------------------------
# 🔹 Truncations of an Ore extension
# ----------------------------------------------------------------
def ore_truncation_module(ctx: OreContext, m: int) -> HomModule:
    """sum_{i <= m} X^i R as a right R-hom-module, coordinates degree-major."""
    ring: Algebra = ctx.ring
    n = (m + 1) * ring.dim
    basis_polys = [monomial(ctx, e, i) for i in range(m + 1) for e in ring.basis()]
    action = tuple(
        from_columns([poly_vector(p * constant(ctx, e), m) for p in basis_polys], n) for e in ring.basis()
    )
    alpha = from_columns([poly_vector(alpha_extend(p), m) for p in basis_polys], n)
    return HomModule(f"{ctx.name}_trunc{m}", ring, n, action, alpha, ModuleSide.RIGHT)


def ore_truncation_cover(ctx: OreContext, m: int) -> ModuleMorphism:
    """(r_0, ..., r_m) -> sum X^i r_i from a direct sum of regular modules."""
    ring: Algebra = ctx.ring
    source = direct_sum([regular_module(ring)] * (m + 1))
    target = ore_truncation_module(ctx, m)
    cols = [
        poly_vector(from_left_form(ctx, [(i, e)]), m) for i in range(m + 1) for e in ring.basis()
    ]
    return ModuleMorphism(source, target, from_columns(cols, target.dim))
