"""
Exact scalars: rationals and the Cayley-Dickson tower Q -> C -> H -> O over Q.

Products at every level come from one table per level, generated once at import
time from the doubling rule

    (a, b)(c, d) = (a c - conj(d) b,  d a + b conj(c))

with e_{2^k + i} = (0, e_i). The tables are read-only afterwards.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from homore.errors import (
    DivisionByZeroError,
    LevelMismatchError,
    ParseError,
    ZeroInverseError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
MAX_LEVEL = 3
LEVEL_NAMES = {0: "rationals", 1: "complex", 2: "quaternions", 3: "octonions"}


# ----------------------------------------------------------------
# Rationals
# ----------------------------------------------------------------
def rational(value) -> Fraction:
    """Coerce an int, Fraction or `p/q` string to a normalized Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    raw = text.strip()
    try:
        num, sep, den = raw.partition("/")
        numerator = int(num)
        denominator = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"not a rational: {text!r}") from None
    if denominator == 0:
        raise DivisionByZeroError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class FieldOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


def rational_field_ops(a: Fraction, b: Fraction, kind: FieldOp | str) -> Fraction:
    kind = FieldOp(kind)
    if kind is FieldOp.ADD:
        return a + b
    if kind is FieldOp.SUB:
        return a - b
    if kind is FieldOp.MUL:
        return a * b
    if b == 0:
        raise DivisionByZeroError(f"division of {format_rational(a)} by zero")
    return a / b


def format_linear_combination(terms: Iterable[tuple[Fraction, str]]) -> str:
    """Render sum(c * name) skipping zeros; unit coefficients are omitted."""
    parts: list[str] = []
    for coeff, name in terms:
        if coeff == 0:
            continue
        magnitude = abs(coeff)
        body = name if magnitude == 1 else f"{format_rational(magnitude)}*{name}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts) if parts else "0"


def random_rational(rng: random.Random, height: int = 3) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, 2))


# ----------------------------------------------------------------
# Doubling rule on plain coordinate tuples (table generation only)
# ----------------------------------------------------------------
def _add(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(a + b for a, b in zip(x, y))


def _sub(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(a - b for a, b in zip(x, y))


def _conj(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return (x[0],) + tuple(-a for a in x[1:])


def _double_mul(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    first = _sub(_double_mul(a, c), _double_mul(_conj(d), b))
    second = _add(_double_mul(d, a), _double_mul(b, _conj(c)))
    return first + second


def _unit_coords(dim: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))


def _build_table(level: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    dim = 1 << level
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            product = _double_mul(_unit_coords(dim, i), _unit_coords(dim, j))
            (k,) = [idx for idx, c in enumerate(product) if c != 0]
            row.append((k, int(product[k])))
        rows.append(tuple(row))
    return tuple(rows)


_TABLES = tuple(_build_table(level) for level in range(MAX_LEVEL + 1))


def cd_table(level: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """table[i][j] = (k, sign) with e_i e_j = sign * e_k."""
    _check_level(level)
    return _TABLES[level]


def cd_structure_constants(level: int) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
    """The cached table as dim x dim x dim rationals c[i][j][k]."""
    table = cd_table(level)
    dim = 1 << level
    return tuple(
        tuple(
            tuple(Fraction(table[i][j][1]) if k == table[i][j][0] else Fraction(0) for k in range(dim))
            for j in range(dim)
        )
        for i in range(dim)
    )


def _check_level(level: int) -> None:
    if not 0 <= level <= MAX_LEVEL:
        raise LevelMismatchError(f"Cayley-Dickson level must be in 0..{MAX_LEVEL}, got {level}")


# ----------------------------------------------------------------
# CDElement
# ----------------------------------------------------------------
@dataclass(frozen=True)
class CDElement:
    level: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        _check_level(self.level)
        coords = tuple(rational(c) for c in self.coords)
        if len(coords) != 1 << self.level:
            raise LevelMismatchError(
                f"level {self.level} needs {1 << self.level} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, level: int = MAX_LEVEL) -> "CDElement":
        return cls(level, (Fraction(0),) * (1 << level))

    @classmethod
    def one(cls, level: int = MAX_LEVEL) -> "CDElement":
        return cls.basis(level, 0)

    @classmethod
    def basis(cls, level: int, i: int) -> "CDElement":
        return cls(level, _unit_coords(1 << level, i))

    @classmethod
    def scalar(cls, level: int, q) -> "CDElement":
        return cls(level, (rational(q),) + (Fraction(0),) * ((1 << level) - 1))

    @property
    def dim(self) -> int:
        return 1 << self.level

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _same_level(self, other: "CDElement") -> None:
        if self.level != other.level:
            raise LevelMismatchError(f"level {self.level} vs level {other.level}")

    def __add__(self, other: "CDElement") -> "CDElement":
        self._same_level(other)
        return CDElement(self.level, _add(self.coords, other.coords))

    def __sub__(self, other: "CDElement") -> "CDElement":
        self._same_level(other)
        return CDElement(self.level, _sub(self.coords, other.coords))

    def __neg__(self) -> "CDElement":
        return CDElement(self.level, tuple(-c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, CDElement):
            return cd_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, q) -> "CDElement":
        q = rational(q)
        return CDElement(self.level, tuple(q * c for c in self.coords))

    def conjugate(self) -> "CDElement":
        return cd_conjugate(self)

    def norm(self) -> Fraction:
        return cd_norm(self)

    def inverse(self) -> "CDElement":
        return cd_inverse(self)

    def __str__(self) -> str:
        return format_linear_combination((c, f"e{i}") for i, c in enumerate(self.coords))


def cd_mul(x: CDElement, y: CDElement) -> CDElement:
    if x.level != y.level:
        raise LevelMismatchError(f"cannot multiply level {x.level} by level {y.level}")
    table = _TABLES[x.level]
    out = [Fraction(0)] * x.dim
    for i, a in enumerate(x.coords):
        if not a:
            continue
        row = table[i]
        for j, b in enumerate(y.coords):
            if not b:
                continue
            k, sign = row[j]
            if sign > 0:
                out[k] += a * b
            else:
                out[k] -= a * b
    return CDElement(x.level, tuple(out))


def cd_conjugate(x: CDElement) -> CDElement:
    return CDElement(x.level, _conj(x.coords))


def cd_norm(x: CDElement) -> Fraction:
    return sum((c * c for c in x.coords), Fraction(0))


def cd_inverse(x: CDElement) -> CDElement:
    n = cd_norm(x)
    if n == 0:
        raise ZeroInverseError("zero has no inverse")
    return cd_conjugate(x).scale(1 / n)


def cd_associator(x: CDElement, y: CDElement, z: CDElement) -> CDElement:
    return cd_mul(cd_mul(x, y), z) - cd_mul(x, cd_mul(y, z))


# ----------------------------------------------------------------
# Coefficient-ring handle
# ----------------------------------------------------------------
@dataclass(frozen=True)
class CDRing:
    """A Cayley-Dickson level seen as a coefficient ring."""

    level: int = MAX_LEVEL

    def __post_init__(self):
        _check_level(self.level)

    @property
    def name(self) -> str:
        return LEVEL_NAMES[self.level]

    @property
    def dim(self) -> int:
        return 1 << self.level

    def zero(self) -> CDElement:
        return CDElement.zero(self.level)

    def one(self) -> CDElement:
        return CDElement.one(self.level)

    def unit_element(self) -> CDElement:
        return self.one()

    def scalar(self, q) -> CDElement:
        return CDElement.scalar(self.level, q)

    def basis(self) -> tuple[CDElement, ...]:
        return tuple(CDElement.basis(self.level, i) for i in range(self.dim))

    def validation_elements(self) -> tuple[CDElement, ...]:
        return self.basis()

    def symbols(self) -> dict[str, CDElement]:
        return {f"e{i}": e for i, e in enumerate(self.basis())}

    def random_element(self, rng: random.Random, height: int = 3, density: float = 0.5) -> CDElement:
        coords = [random_rational(rng, height) if rng.random() < density else Fraction(0) for _ in range(self.dim)]
        return CDElement(self.level, tuple(coords))

    def random_nonzero(self, rng: random.Random, height: int = 3) -> CDElement:
        while True:
            x = self.random_element(rng, height)
            if not x.is_zero():
                return x

    def element(self, coords: Sequence) -> CDElement:
        return CDElement(self.level, tuple(coords))

    def is_associative(self) -> bool:
        return self.level <= 2

    def opposite(self):
        """The reversed-product ring as a structure-constant algebra on e0..e{dim-1}."""
        from homore.homring import cayley_dickson_algebra, opposite_algebra

        return opposite_algebra(cayley_dickson_algebra(self.level))

    def render(self, x: CDElement) -> str:
        return str(x)


OCTONIONS = CDRing(3)
