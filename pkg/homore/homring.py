"""
Finite-dimensional (hom-)algebras over Q given by structure constants.

An Algebra is the product table c[i][j][k] (coefficient of e_k in e_i e_j) plus a
linear twisting map alpha stored as a matrix whose column j is alpha(e_j). Loading
never demands hom-associativity; that is what hom_associativity_check reports on.
"""
from __future__ import annotations

import itertools
import logging
import random
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from homore.errors import (
    AlgebraMismatchError,
    AlgebraSpecError,
    NotAnEndomorphismError,
    NotAssociativeError,
)
from homore.exactnum import (
    cd_structure_constants,
    format_linear_combination,
    LEVEL_NAMES,
    random_rational,
)
from homore.linalg import (
    Matrix,
    SubspaceBasis,
    identity_matrix,
    mat_vec,
    matrix,
    nullspace,
    transpose,
    unit_vector,
    zero_matrix,
)
from homore.schemas import AlgebraSpec, HomAssociativityReport, NucleusFlags

logger = logging.getLogger(__name__)

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"


class NucleusSlot(str, Enum):
    LEFT = "left"
    MIDDLE = "middle"
    RIGHT = "right"
    FULL = "full"


# ----------------------------------------------------------------
# Algebra and its elements
# ----------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Algebra:
    name: str
    basis_names: tuple[str, ...]
    structure_constants: tuple[tuple[tuple[Fraction, ...], ...], ...]
    alpha_matrix: Matrix
    unit: Optional[int] = None
    _products: tuple = field(init=False, repr=False)

    def __post_init__(self):
        sparse = tuple(
            tuple(
                tuple((k, c) for k, c in enumerate(self.structure_constants[i][j]) if c)
                for j in range(self.dim)
            )
            for i in range(self.dim)
        )
        object.__setattr__(self, "_products", sparse)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.basis_names == other.basis_names
            and self.structure_constants == other.structure_constants
            and self.alpha_matrix == other.alpha_matrix
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        return hash((self.basis_names, self.structure_constants))

    # ------------------------------------------------------------
    # element construction
    # ------------------------------------------------------------
    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(Fraction(c) for c in coords))

    def zero(self) -> "AlgebraElement":
        return self.element((0,) * self.dim)

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, unit_vector(self.dim, i))

    def basis(self) -> tuple["AlgebraElement", ...]:
        return tuple(self.basis_element(i) for i in range(self.dim))

    def validation_elements(self) -> tuple["AlgebraElement", ...]:
        return self.basis()

    def unit_element(self) -> Optional["AlgebraElement"]:
        return None if self.unit is None else self.basis_element(self.unit)

    def one(self) -> "AlgebraElement":
        if self.unit is None:
            raise AlgebraSpecError(f"algebra {self.name} declares no unit")
        return self.basis_element(self.unit)

    def scalar(self, q) -> "AlgebraElement":
        return self.one().scale(q)

    def symbols(self) -> dict[str, "AlgebraElement"]:
        return {name: self.basis_element(i) for i, name in enumerate(self.basis_names)}

    def random_element(self, rng: random.Random, height: int = 3, density: float = 0.6) -> "AlgebraElement":
        return self.element(
            random_rational(rng, height) if rng.random() < density else 0 for _ in range(self.dim)
        )

    def alpha(self, x: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(x.algebra, mat_vec(self.alpha_matrix, x.coords))

    def render(self, x: "AlgebraElement") -> str:
        return format_linear_combination(zip(x.coords, self.basis_names))

    @cached_property
    def associative(self) -> bool:
        return is_associative(self)

    def is_associative(self) -> bool:
        return self.associative

    def opposite(self) -> "Algebra":
        return opposite_algebra(self)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: Algebra
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise AlgebraSpecError(
                f"{self.algebra.name} has dim {self.algebra.dim}, got {len(self.coords)} coordinates"
            )

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatchError(f"{self.algebra.name} vs {other.algebra.name}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coords == other.coords and (self.algebra is other.algebra or self.algebra == other.algebra)

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, q) -> "AlgebraElement":
        q = Fraction(q)
        return AlgebraElement(self.algebra, tuple(q * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return self.algebra.render(self)


# ----------------------------------------------------------------
# Loading
# ----------------------------------------------------------------
def load_algebra(spec: AlgebraSpec) -> Algebra:
    d = spec.dim
    if len(spec.basis_names) != d:
        raise AlgebraSpecError(f"{spec.name}: dim {d} but {len(spec.basis_names)} basis names")
    if len(set(spec.basis_names)) != d:
        raise AlgebraSpecError(f"{spec.name}: duplicate basis names")
    for name in spec.basis_names:
        if not _IDENTIFIER.match(name):
            raise AlgebraSpecError(f"{spec.name}: basis name {name!r} is not an identifier")
    sc = spec.structure_constants
    if len(sc) != d or any(len(row) != d or any(len(v) != d for v in row) for row in sc):
        raise AlgebraSpecError(f"{spec.name}: structure constants must be {d}x{d}x{d}")
    if len(spec.alpha_matrix) != d or any(len(row) != d for row in spec.alpha_matrix):
        raise AlgebraSpecError(f"{spec.name}: alpha matrix must be {d}x{d}")
    if spec.unital is not None and not 0 <= spec.unital < d:
        raise AlgebraSpecError(f"{spec.name}: unit index {spec.unital} out of range")

    alg = Algebra(
        name=spec.name,
        basis_names=tuple(spec.basis_names),
        structure_constants=tuple(tuple(tuple(v) for v in row) for row in sc),
        alpha_matrix=matrix(spec.alpha_matrix),
        unit=spec.unital,
    )
    if alg.unit is not None:
        u = alg.basis_element(alg.unit)
        for e in alg.basis():
            if u * e != e or e * u != e:
                raise AlgebraSpecError(
                    f"{spec.name}: declared unit {alg.basis_names[alg.unit]} fails the unit law at {e}"
                )
    logger.debug("loaded algebra %s (dim %d)", alg.name, d)
    return alg


def make_algebra(name, basis_names, structure_constants, alpha_matrix=None, unit=None) -> Algebra:
    d = len(basis_names)
    return load_algebra(
        AlgebraSpec(
            name=name,
            dim=d,
            basis_names=list(basis_names),
            structure_constants=structure_constants,
            alpha_matrix=alpha_matrix if alpha_matrix is not None else identity_matrix(d),
            unital=unit,
        )
    )


# ----------------------------------------------------------------
# Products and associators
# ----------------------------------------------------------------
def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    alg = x.algebra
    out = [Fraction(0)] * alg.dim
    for i, a in enumerate(x.coords):
        if not a:
            continue
        row = alg._products[i]
        for j, b in enumerate(y.coords):
            if not b:
                continue
            ab = a * b
            for k, c in row[j]:
                out[k] += ab * c
    return AlgebraElement(alg, tuple(out))


def associator(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    return (x * y) * z - x * (y * z)


def associator_identity_defect(u, r, s, t) -> AlgebraElement:
    """u(r,s,t) + (u,r,s)t + (u,rs,t) - (ur,s,t) - (u,r,st); zero in every algebra."""
    return (
        u * associator(r, s, t)
        + associator(u, r, s) * t
        + associator(u, r * s, t)
        - associator(u * r, s, t)
        - associator(u, r, s * t)
    )


def is_associative(alg: Algebra) -> bool:
    basis = alg.basis()
    return all(associator(a, b, c).is_zero() for a, b, c in itertools.product(basis, repeat=3))


def is_commutative(alg: Algebra) -> bool:
    basis = alg.basis()
    return all(a * b == b * a for a, b in itertools.product(basis, repeat=2))


def hom_associativity_check(alg: Algebra) -> HomAssociativityReport:
    """alpha(e_i)(e_j e_k) = (e_i e_j) alpha(e_k) over all basis triples."""
    basis = alg.basis()
    alphas = [alg.alpha(e) for e in basis]
    products = [[a * b for b in basis] for a in basis]
    failures = []
    for i, j, k in itertools.product(range(alg.dim), repeat=3):
        if alphas[i] * products[j][k] != products[i][j] * alphas[k]:
            failures.append((i, j, k))
    if failures:
        logger.info("%s is not hom-associative: %d failing triples", alg.name, len(failures))
    return HomAssociativityReport(algebra=alg.name, checked=alg.dim**3, failures=failures)


def hom_identity_holds(alg: Algebra, x, y, z) -> bool:
    return alg.alpha(x) * (y * z) == (x * y) * alg.alpha(z)


# ----------------------------------------------------------------
# Nuclei
# ----------------------------------------------------------------
def nucleus_membership(alg: Algebra, x: AlgebraElement) -> NucleusFlags:
    basis = alg.basis()
    pairs = list(itertools.product(basis, repeat=2))
    return NucleusFlags(
        left=all(associator(x, a, b).is_zero() for a, b in pairs),
        middle=all(associator(a, x, b).is_zero() for a, b in pairs),
        right=all(associator(a, b, x).is_zero() for a, b in pairs),
    )


def nucleus_subspace(alg: Algebra, slot: NucleusSlot | str) -> SubspaceBasis:
    """The nucleus as a subspace: null space of the associator conditions."""
    slot = NucleusSlot(slot)
    if slot is NucleusSlot.FULL:
        return (
            nucleus_subspace(alg, NucleusSlot.LEFT)
            & nucleus_subspace(alg, NucleusSlot.MIDDLE)
            & nucleus_subspace(alg, NucleusSlot.RIGHT)
        )
    basis = alg.basis()
    place = {
        NucleusSlot.LEFT: lambda x, a, b: associator(x, a, b),
        NucleusSlot.MIDDLE: lambda x, a, b: associator(a, x, b),
        NucleusSlot.RIGHT: lambda x, a, b: associator(a, b, x),
    }[slot]
    conditions = []
    for a, b in itertools.product(basis, repeat=2):
        cols = [place(e, a, b).coords for e in basis]
        conditions.extend(transpose(tuple(cols)))
    return SubspaceBasis.span(nullspace(tuple(conditions), alg.dim), alg.dim)


# ----------------------------------------------------------------
# Constructions
# ----------------------------------------------------------------
def _apply_matrix_to_basis(m: Matrix, alg: Algebra) -> list[AlgebraElement]:
    return [alg.element(mat_vec(m, e.coords)) for e in alg.basis()]


def is_algebra_morphism(m: Matrix, source: Algebra, target: Algebra) -> bool:
    """f(xy) = f(x)f(y) and f alpha = alpha' f on basis elements (m is target.dim x source.dim)."""
    images = [target.element(mat_vec(m, e.coords)) for e in source.basis()]

    def f(x: AlgebraElement) -> AlgebraElement:
        return target.element(mat_vec(m, x.coords))

    for i, j in itertools.product(range(source.dim), repeat=2):
        if f(source.basis_element(i) * source.basis_element(j)) != images[i] * images[j]:
            return False
    return all(f(source.alpha(e)) == target.alpha(images[i]) for i, e in enumerate(source.basis()))


def yau_twist(assoc: Algebra, endo_matrix: Sequence[Sequence]) -> Algebra:
    """x * y := alpha(x y) with twisting map alpha, for an associative base and endomorphism alpha."""
    endo = matrix(endo_matrix)
    d = assoc.dim
    if len(endo) != d or any(len(row) != d for row in endo):
        raise AlgebraSpecError(f"endomorphism matrix must be {d}x{d}")
    if not assoc.associative:
        raise NotAssociativeError(f"{assoc.name} is not associative; the Yau twist needs an associative base")
    images = _apply_matrix_to_basis(endo, assoc)
    basis = assoc.basis()
    for i, j in itertools.product(range(d), repeat=2):
        if assoc.element(mat_vec(endo, (basis[i] * basis[j]).coords)) != images[i] * images[j]:
            raise NotAnEndomorphismError(
                f"matrix is not multiplicative at ({assoc.basis_names[i]}, {assoc.basis_names[j]})"
            )
    if assoc.unit is not None and images[assoc.unit] != basis[assoc.unit]:
        raise NotAnEndomorphismError("matrix does not fix the unit")

    is_identity = endo == identity_matrix(d)
    constants = tuple(
        tuple(mat_vec(endo, assoc.structure_constants[i][j]) for j in range(d)) for i in range(d)
    )
    return Algebra(
        name=assoc.name if is_identity else f"{assoc.name}_yau",
        basis_names=assoc.basis_names,
        structure_constants=constants,
        alpha_matrix=endo,
        unit=assoc.unit if is_identity else None,
    )


def opposite_algebra(alg: Algebra) -> Algebra:
    d = alg.dim
    constants = tuple(tuple(alg.structure_constants[j][i] for j in range(d)) for i in range(d))
    name = alg.name[: -len("_op")] if alg.name.endswith("_op") else f"{alg.name}_op"
    return Algebra(
        name=name,
        basis_names=alg.basis_names,
        structure_constants=constants,
        alpha_matrix=alg.alpha_matrix,
        unit=alg.unit,
    )


def with_alpha(alg: Algebra, alpha_matrix: Sequence[Sequence], suffix: str = "") -> Algebra:
    return Algebra(
        name=f"{alg.name}{suffix}",
        basis_names=alg.basis_names,
        structure_constants=alg.structure_constants,
        alpha_matrix=matrix(alpha_matrix),
        unit=alg.unit,
    )


def is_hom_ideal(alg: Algebra, basis: SubspaceBasis, side: Side | str) -> bool:
    side = Side(side)
    ring = alg.basis()
    for row in basis.rows:
        v = alg.element(row)
        if not basis.contains(alg.alpha(v).coords):
            return False
        for e in ring:
            if side in (Side.RIGHT, Side.TWO_SIDED) and not basis.contains((v * e).coords):
                return False
            if side in (Side.LEFT, Side.TWO_SIDED) and not basis.contains((e * v).coords):
                return False
    return True


# ----------------------------------------------------------------
# Shipped instances
# ----------------------------------------------------------------
def cayley_dickson_algebra(level: int, alpha: str = "identity") -> Algebra:
    constants = cd_structure_constants(level)
    d = 1 << level
    alpha_matrix = identity_matrix(d) if alpha == "identity" else zero_matrix(d, d)
    return Algebra(
        name=LEVEL_NAMES[level],
        basis_names=tuple(f"e{i}" for i in range(d)),
        structure_constants=constants,
        alpha_matrix=alpha_matrix,
        unit=0,
    )


def truncated_polynomial_algebra(n: int = 4) -> Algebra:
    """Q[t]/(t^n) with basis one, t, t2, ..., alpha = identity."""
    names = ("one", "t") + tuple(f"t{i}" for i in range(2, n))
    constants = tuple(
        tuple(tuple(Fraction(1) if k == i + j and i + j < n else Fraction(0) for k in range(n)) for j in range(n))
        for i in range(n)
    )
    return Algebra(
        name=f"truncated{n}",
        basis_names=names,
        structure_constants=constants,
        alpha_matrix=identity_matrix(n),
        unit=0,
    )
