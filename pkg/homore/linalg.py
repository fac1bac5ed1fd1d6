"""
Exact linear algebra over Q.

Vectors and matrices are tuples of Fractions (matrices row-major). Row reduction
and null spaces go through sympy; everything handed back is converted to Fractions
again so the rest of the package never sees sympy numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from homore.exactnum import format_rational

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


# ----------------------------------------------------------------
# Conversions
# ----------------------------------------------------------------
def _to_sympy(rows: Sequence[Sequence[Fraction]], cols: int) -> sympy.Matrix:
    return sympy.Matrix(
        len(rows), cols, lambda i, j: sympy.Rational(rows[i][j].numerator, rows[i][j].denominator)
    )


def _from_sympy_entry(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _rows_from_sympy(m: sympy.Matrix) -> Matrix:
    return tuple(tuple(_from_sympy_entry(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def vector(values: Iterable) -> Vector:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vector(r) for r in rows)


# ----------------------------------------------------------------
# Plain matrix arithmetic
# ----------------------------------------------------------------
def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(zero_vector(cols) for _ in range(rows))


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def diagonal_matrix(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, q: Fraction) -> Matrix:
    return tuple(tuple(q * x for x in row) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def columns(m: Matrix) -> tuple[Vector, ...]:
    return transpose(m)


def from_columns(cols: Sequence[Vector], rows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(rows))
    return tuple(tuple(col[i] for col in cols) for i in range(rows))


def vec_add(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_scale(x: Sequence[Fraction], q: Fraction) -> Vector:
    return tuple(q * a for a in x)


def is_zero_vector(x: Sequence[Fraction]) -> bool:
    return not any(x)


def rank(rows: Sequence[Sequence[Fraction]], cols: int) -> int:
    if not rows:
        return 0
    return _to_sympy(rows, cols).rank()


def nullspace(m: Matrix, cols: int) -> tuple[Vector, ...]:
    """Basis of {v : m v = 0}."""
    if not m:
        return identity_matrix(cols)
    return tuple(
        tuple(_from_sympy_entry(x) for x in v) for v in _to_sympy(m, cols).nullspace()
    )


def is_invertible(m: Matrix) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and rank(m, n) == n


# ----------------------------------------------------------------
# SubspaceBasis
# ----------------------------------------------------------------
@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient_dim held as a reduced row-echelon basis."""

    ambient_dim: int
    rows: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "SubspaceBasis":
        rows = [vector(v) for v in vectors]
        rows = [r for r in rows if any(r)]
        if not rows:
            return cls(ambient_dim, ())
        reduced, pivots = _to_sympy(rows, ambient_dim).rref()
        kept = _rows_from_sympy(reduced)[: len(pivots)]
        return cls(ambient_dim, kept)

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, identity_matrix(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    @property
    def free_columns(self) -> tuple[int, ...]:
        """Columns without a pivot; their unit vectors span a complement."""
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in pivots)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """v minus its component along the basis; zero iff v lies in the span."""
        out = list(vector(v))
        for row, p in zip(self.rows, self.pivots):
            c = out[p]
            if c:
                out = [a - c * b for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vector(self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of a member of the span with respect to `rows`."""
        return tuple(Fraction(v[p]) for p in self.pivots)

    def from_coordinates(self, coords: Sequence[Fraction]) -> Vector:
        out = zero_vector(self.ambient_dim)
        for c, row in zip(coords, self.rows):
            if c:
                out = vec_add(out, vec_scale(row, c))
        return out

    def quotient_coordinates(self, v: Sequence[Fraction]) -> Vector:
        r = self.reduce(v)
        return tuple(r[j] for j in self.free_columns)

    def lift(self, q: Sequence[Fraction]) -> Vector:
        """Representative in Q^n of a class given in quotient coordinates."""
        out = [Fraction(0)] * self.ambient_dim
        for j, c in zip(self.free_columns, q):
            out[j] = Fraction(c)
        return tuple(out)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(r) for r in self.rows)

    def annihilator(self) -> "SubspaceBasis":
        """{w : w . v = 0 for all v in self} under the standard pairing."""
        return SubspaceBasis.span(nullspace(self.rows, self.ambient_dim), self.ambient_dim)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis.span(self.rows + other.rows, self.ambient_dim)

    def __and__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, m: Matrix, target_dim: int) -> "SubspaceBasis":
        return SubspaceBasis.span((mat_vec(m, r) for r in self.rows), target_dim)

    def preimage(self, m: Matrix, source_dim: int) -> "SubspaceBasis":
        """{v : m v in self}."""
        ann = self.annihilator().rows
        if not ann:
            return SubspaceBasis.full(source_dim)
        return SubspaceBasis.span(nullspace(mat_mul(ann, m), source_dim), source_dim)

    def __str__(self) -> str:
        if not self.rows:
            return "0"
        return "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows)


def kernel(m: Matrix, source_dim: int) -> SubspaceBasis:
    return SubspaceBasis.span(nullspace(m, source_dim), source_dim)


def column_space(m: Matrix, target_dim: int) -> SubspaceBasis:
    return SubspaceBasis.span(columns(m), target_dim)


# ----------------------------------------------------------------
# Spectral helpers
# ----------------------------------------------------------------
def rational_eigenvalues(m: Matrix) -> dict[Fraction, int] | None:
    """Eigenvalue -> algebraic multiplicity, or None when some eigenvalue is irrational."""
    n = len(m)
    found = _to_sympy(m, n).eigenvals()
    if sum(found.values()) != n or not all(ev.is_rational for ev in found):
        return None
    return {_from_sympy_entry(ev): int(mult) for ev, mult in found.items()}


def generalized_eigenspace(m: Matrix, eigenvalue: Fraction, power: int) -> SubspaceBasis:
    """ker (m - eigenvalue I)^power."""
    n = len(m)
    shifted = tuple(
        tuple(x - eigenvalue if i == j else x for j, x in enumerate(row)) for i, row in enumerate(m)
    )
    acc = identity_matrix(n)
    for _ in range(power):
        acc = mat_mul(shifted, acc)
    return kernel(acc, n)


def is_cyclic_with_rational_spectrum(m: Matrix) -> bool:
    """Every eigenvalue rational with a one-dimensional eigenspace."""
    spectrum = rational_eigenvalues(m)
    if spectrum is None:
        return False
    return all(generalized_eigenspace(m, ev, 1).dim == 1 for ev in spectrum)
