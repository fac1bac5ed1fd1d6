"""
Ore extensions R[X; sigma, delta] over (hom-)associative or non-associative R.

Products follow the monomial rule

    a X^m . b X^n = sum_i (a . pi_i^m(b)) X^(i+n)

where pi_i^m is the sum of all compositions of i copies of sigma and m-i copies of
delta. The coefficient ring is duck-typed: anything with zero(), unit_element(),
validation_elements(), random_element() and render() whose elements support + - *
is_zero() and hashing (Algebra, CDRing and OctoPolyRing all qualify).
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache, total_ordering
from typing import Any, Callable, Iterable, Optional, Sequence

from homore.config import settings
from homore.errors import (
    CombinatorialGuardError,
    ContextMismatchError,
    ContextValidationError,
    MissingInverseError,
    ZeroPolynomialError,
)
from homore.linalg import Matrix, identity_matrix, mat_vec, matrix, zero_matrix
from homore.schemas import OreHomReport

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------
# 🔹 Degree sentinel
# ----------------------------------------------------------------
@total_ordering
class _NegativeInfinity:
    """Degree of the zero polynomial. Compares below every integer, supports no arithmetic."""

    __slots__ = ()

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("-inf")

    def __repr__(self) -> str:
        return "-inf"


NEG_INF = _NegativeInfinity()


# ----------------------------------------------------------------
# 🔹 RingMap descriptors
# ----------------------------------------------------------------
class MapKind(str, Enum):
    IDENTITY = "identity"
    ZERO = "zero"
    GENERAL = "general"


@dataclass(frozen=True, eq=False)
class RingMap:
    """An additive map on a coefficient ring, optionally carrying a declared inverse."""

    name: str
    fn: Callable[[Any], Any]
    kind: MapKind = MapKind.GENERAL
    declared_inverse: Optional["RingMap"] = field(default=None, repr=False)

    def __call__(self, x):
        if self.kind is MapKind.IDENTITY:
            return x
        return self.fn(x)

    def compose(self, inner: "RingMap") -> "RingMap":
        """self after inner."""
        if self.kind is MapKind.IDENTITY:
            return inner
        if inner.kind is MapKind.IDENTITY:
            return self
        if MapKind.ZERO in (self.kind, inner.kind):
            zero = self if self.kind is MapKind.ZERO else inner
            return RingMap(f"{self.name}∘{inner.name}", zero.fn, MapKind.ZERO)
        inverse = None
        if self.declared_inverse is not None and inner.declared_inverse is not None:
            inverse = inner.declared_inverse.compose(self.declared_inverse)
        outer_fn, inner_fn = self.fn, inner.fn
        return RingMap(f"{self.name}∘{inner.name}", lambda x: outer_fn(inner_fn(x)), MapKind.GENERAL, inverse)

    def __add__(self, other: "RingMap") -> "RingMap":
        if other.kind is MapKind.ZERO:
            return self
        if self.kind is MapKind.ZERO:
            return other
        f, g = self, other
        return RingMap(f"({self.name} + {other.name})", lambda x: f(x) + g(x))

    def __neg__(self) -> "RingMap":
        if self.kind is MapKind.ZERO:
            return self
        f = self
        return RingMap(f"-{self.name}", lambda x: -f(x))

    def __sub__(self, other: "RingMap") -> "RingMap":
        return self + (-other)

    def with_inverse(self, inverse: "RingMap") -> "RingMap":
        return RingMap(self.name, self.fn, self.kind, inverse)

    def inverse(self) -> "RingMap":
        if self.kind is MapKind.IDENTITY:
            return self
        if self.declared_inverse is None:
            raise MissingInverseError(f"no inverse declared for {self.name}")
        return self.declared_inverse.with_inverse(self)

    def power(self, k: int) -> "RingMap":
        out = identity_map()
        for _ in range(k):
            out = self.compose(out)
        return out


def identity_map() -> RingMap:
    return RingMap("id", lambda x: x, MapKind.IDENTITY)


def zero_map(ring) -> RingMap:
    zero = ring.zero()
    return RingMap("0", lambda x: zero, MapKind.ZERO)


def linear_map(ring, m: Sequence[Sequence], name: str = "f") -> RingMap:
    """Matrix map on a finite-dimensional ring; column j is the image of basis element j."""
    mat: Matrix = matrix(m)
    if mat == identity_matrix(ring.dim):
        return identity_map()
    if mat == zero_matrix(ring.dim, ring.dim):
        return zero_map(ring)
    return RingMap(name, lambda x: ring.element(mat_vec(mat, x.coords)))


# ----------------------------------------------------------------
# 🔹 Context
# ----------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class OreContext:
    ring: Any
    sigma: RingMap
    delta: RingMap
    alpha: RingMap
    sigma_inverse: Optional[RingMap] = None
    name: str = "ore"
    renderer: Optional[Callable[["OrePoly"], str]] = field(default=None, repr=False)
    validate: bool = True
    _pi_row: Callable = field(init=False, repr=False)

    def __post_init__(self):
        if self.validate:
            validate_context(self)
        object.__setattr__(self, "_pi_row", lru_cache(maxsize=settings.pi_cache_size)(self._compute_pi_row))

    def _compute_pi_row(self, m: int, b) -> tuple:
        """(pi_0^m(b), ..., pi_m^m(b)) via pi_l^(m+1) = sigma pi_(l-1)^m + delta pi_l^m."""
        if m == 0:
            return (b,)
        prev = self._pi_row(m - 1, b)
        zero = self.ring.zero()
        row = []
        for l in range(m + 1):
            term = self.sigma(prev[l - 1]) if l >= 1 else zero
            if l < m:
                term = term + self.delta(prev[l])
            row.append(term)
        return tuple(row)

    def pi_row(self, m: int, b) -> tuple:
        return self._pi_row(m, b)

    @property
    def alpha_kind(self) -> MapKind:
        return self.alpha.kind

    def zero(self) -> "OrePoly":
        return OrePoly(self, ())

    def __repr__(self) -> str:
        return f"OreContext({self.name})"


def validate_context(ctx: OreContext) -> None:
    """sigma unital endomorphism, delta a sigma-derivation with delta(1) = 0, alpha commuting."""
    ring = ctx.ring
    elements = tuple(ring.validation_elements())
    unit = ring.unit_element()
    sigma, delta, alpha = ctx.sigma, ctx.delta, ctx.alpha

    if unit is not None:
        if sigma(unit) != unit:
            raise ContextValidationError(f"{ctx.name}: sigma(1) != 1")
        if not delta(unit).is_zero():
            raise ContextValidationError(f"{ctx.name}: delta(1) != 0")

    for a, b in itertools.product(elements, repeat=2):
        ab = a * b
        if sigma.kind is not MapKind.IDENTITY and sigma(ab) != sigma(a) * sigma(b):
            raise ContextValidationError(f"{ctx.name}: sigma not multiplicative at ({ring.render(a)}, {ring.render(b)})")
        if delta.kind is not MapKind.ZERO and delta(ab) != sigma(a) * delta(b) + delta(a) * b:
            raise ContextValidationError(
                f"{ctx.name}: delta is not a sigma-derivation at ({ring.render(a)}, {ring.render(b)})"
            )

    if alpha.kind is MapKind.GENERAL:
        for a in elements:
            if alpha(sigma(a)) != sigma(alpha(a)):
                raise ContextValidationError(f"{ctx.name}: alpha does not commute with sigma at {ring.render(a)}")
            if alpha(delta(a)) != delta(alpha(a)):
                raise ContextValidationError(f"{ctx.name}: alpha does not commute with delta at {ring.render(a)}")

    if ctx.sigma_inverse is not None:
        inv = ctx.sigma_inverse
        for a in elements:
            if sigma(inv(a)) != a or inv(sigma(a)) != a:
                raise ContextValidationError(f"{ctx.name}: declared sigma inverse fails at {ring.render(a)}")

    logger.debug("context %s validated on %d elements", ctx.name, len(elements))


# ----------------------------------------------------------------
# 🔹 Polynomials
# ----------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class OrePoly:
    context: OreContext
    terms: tuple[tuple[int, Any], ...]

    @classmethod
    def from_terms(cls, ctx: OreContext, terms: Iterable[tuple[int, Any]]) -> "OrePoly":
        acc: dict[int, Any] = {}
        for k, c in terms:
            acc[k] = acc[k] + c if k in acc else c
        return cls(ctx, tuple(sorted((k, c) for k, c in acc.items() if not c.is_zero())))

    @property
    def degree(self):
        return self.terms[-1][0] if self.terms else NEG_INF

    def is_zero(self) -> bool:
        return not self.terms

    def leading_coefficient(self):
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.terms[-1][1]

    def coefficient(self, k: int):
        for d, c in self.terms:
            if d == k:
                return c
        return self.context.ring.zero()

    def as_dict(self) -> dict[int, Any]:
        return dict(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.context is other.context and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "OrePoly") -> "OrePoly":
        return ore_add(self, other)

    def __neg__(self) -> "OrePoly":
        return OrePoly(self.context, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return ore_add(self, -other)

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        if isinstance(other, OrePoly):
            return ore_mul(self, other)
        return NotImplemented

    def scale(self, q) -> "OrePoly":
        return OrePoly.from_terms(self.context, ((k, c.scale(q)) for k, c in self.terms))

    def __str__(self) -> str:
        return render_poly(self)


def render_poly(p: OrePoly) -> str:
    ctx = p.context
    if ctx.renderer is not None:
        return ctx.renderer(p)
    if p.is_zero():
        return "0"
    parts = []
    for k, c in reversed(p.terms):
        coef = f"({ctx.ring.render(c)})"
        if k == 0:
            parts.append(coef)
        elif k == 1:
            parts.append(f"{coef}*X")
        else:
            parts.append(f"{coef}*X^{k}")
    return " + ".join(parts)


def _same_context(p: OrePoly, q: OrePoly) -> None:
    if p.context is not q.context:
        raise ContextMismatchError(f"{p.context.name} vs {q.context.name}")


def ore_add(p: OrePoly, q: OrePoly) -> OrePoly:
    _same_context(p, q)
    return OrePoly.from_terms(p.context, itertools.chain(p.terms, q.terms))


def ore_mul(p: OrePoly, q: OrePoly) -> OrePoly:
    _same_context(p, q)
    ctx = p.context
    acc: dict[int, Any] = {}
    for m, a in p.terms:
        for n, b in q.terms:
            row = ctx.pi_row(m, b)
            for i, pib in enumerate(row):
                if pib.is_zero():
                    continue
                c = a * pib
                if c.is_zero():
                    continue
                acc[i + n] = acc[i + n] + c if i + n in acc else c
    return OrePoly(ctx, tuple(sorted((k, c) for k, c in acc.items() if not c.is_zero())))


def alpha_extend(p: OrePoly) -> OrePoly:
    ctx = p.context
    if ctx.alpha.kind is MapKind.IDENTITY:
        return p
    if ctx.alpha.kind is MapKind.ZERO:
        return ctx.zero()
    return OrePoly.from_terms(ctx, ((k, ctx.alpha(c)) for k, c in p.terms))


def constant(ctx: OreContext, a) -> OrePoly:
    return OrePoly.from_terms(ctx, [(0, a)])


def monomial(ctx: OreContext, a, k: int) -> OrePoly:
    return OrePoly.from_terms(ctx, [(k, a)])


def x_power(ctx: OreContext, k: int) -> OrePoly:
    return monomial(ctx, ctx.ring.one(), k)


def random_poly(
    ctx: OreContext,
    rng: random.Random,
    degree: int | None = None,
    height: int = 3,
    density: float = 0.7,
) -> OrePoly:
    degree = settings.degree_bound if degree is None else degree
    terms = [(k, ctx.ring.random_element(rng, height)) for k in range(degree + 1) if rng.random() < density]
    return OrePoly.from_terms(ctx, terms)


def poly_vector(p: OrePoly, max_degree: int) -> tuple:
    """Flat coordinates (degree-major) of p over a finite-dimensional ring."""
    out = []
    for k in range(max_degree + 1):
        out.extend(p.coefficient(k).coords)
    return tuple(out)


# ----------------------------------------------------------------
# 🔹 pi functions
# ----------------------------------------------------------------
def pi(ctx: OreContext, i: int, m: int, a):
    if m < 0 or i < 0 or i > m:
        return ctx.ring.zero()
    return ctx.pi_row(m, a)[i]


def pi_recursion_sides(ctx: OreContext, l: int, m: int, a) -> tuple[Any, Any]:
    """pi_l^(m+1)(a) both ways: (pi_(l-1)^m sigma + pi_l^m delta, sigma pi_(l-1)^m + delta pi_l^m)."""
    inner = pi(ctx, l - 1, m, ctx.sigma(a)) + pi(ctx, l, m, ctx.delta(a))
    outer = ctx.sigma(pi(ctx, l - 1, m, a)) + ctx.delta(pi(ctx, l, m, a))
    return inner, outer


def _guard(m: int) -> None:
    if m > settings.pi_bruteforce_limit:
        raise CombinatorialGuardError(
            f"refusing to enumerate words of length {m} (limit {settings.pi_bruteforce_limit})"
        )


def pi_words(i: int, m: int) -> list[tuple[str, ...]]:
    """All words with i sigmas and m-i deltas, leftmost letter applied last."""
    _guard(m)
    if m < 0 or i < 0 or i > m:
        return []
    words = []
    for positions in itertools.combinations(range(m), i):
        chosen = set(positions)
        words.append(tuple("sigma" if k in chosen else "delta" for k in range(m)))
    return words


def pi_show(i: int, m: int) -> str:
    if m == 0 and i == 0:
        return "id"
    words = pi_words(i, m)
    if not words:
        return "0"
    return " + ".join("∘".join(w) for w in words)


def pi_bruteforce(ctx: OreContext, i: int, m: int, a):
    total = ctx.ring.zero()
    for word in pi_words(i, m):
        value = a
        for letter in reversed(word):
            value = ctx.sigma(value) if letter == "sigma" else ctx.delta(value)
        total = total + value
    return total


# ----------------------------------------------------------------
# 🔹 Left and right forms
# ----------------------------------------------------------------
class Direction(str, Enum):
    LEFT_TO_RIGHT = "left_to_right"
    RIGHT_TO_LEFT = "right_to_left"


def _left_to_right(ctx: OreContext, terms: Iterable[tuple[int, Any]]) -> OrePoly:
    """sum X^i a_i rewritten as sum b_j X^j using X^i a = sum_j pi_j^i(a) X^j."""
    out = []
    for i, a in terms:
        out.extend((j, c) for j, c in enumerate(ctx.pi_row(i, a)))
    return OrePoly.from_terms(ctx, out)


def convert_form(p: OrePoly, direction: Direction | str) -> tuple[tuple[int, Any], ...]:
    direction = Direction(direction)
    ctx = p.context
    if direction is Direction.LEFT_TO_RIGHT:
        return _left_to_right(ctx, p.terms).terms

    if ctx.sigma_inverse is None:
        raise MissingInverseError(f"{ctx.name}: right-to-left conversion needs sigma inverse")
    inverse = ctx.sigma_inverse
    left: dict[int, Any] = {}
    rest = p
    while not rest.is_zero():
        m, a = rest.degree, rest.leading_coefficient()
        c = a
        for _ in range(m):
            c = inverse(c)
        left[m] = c
        rest = rest - _left_to_right(ctx, [(m, c)])
    return tuple(sorted(left.items()))


def from_left_form(ctx: OreContext, terms: Iterable[tuple[int, Any]]) -> OrePoly:
    return _left_to_right(ctx, terms)


# ----------------------------------------------------------------
# 🔹 Opposite extension
# ----------------------------------------------------------------
def opposite_context(ctx: OreContext) -> OreContext:
    """R^op[X; sigma^-1, -delta sigma^-1], validated on construction."""
    if ctx.sigma_inverse is None:
        raise MissingInverseError(f"{ctx.name}: the opposite extension needs sigma inverse")
    ring = ctx.ring
    if not hasattr(ring, "opposite"):
        raise ContextMismatchError(f"{ring.name} has no opposite ring")
    op_ring = ring.opposite()

    def lift(f: RingMap, name: str) -> RingMap:
        if f.kind is MapKind.IDENTITY:
            return identity_map()
        if f.kind is MapKind.ZERO:
            return zero_map(op_ring)
        return RingMap(name, lambda x: op_ring.element(f(ring.element(x.coords)).coords))

    sigma_inv = ctx.sigma_inverse
    new_sigma = lift(sigma_inv, "sigma^-1")
    new_inverse = lift(ctx.sigma, "sigma")
    new_delta = lift(-(ctx.delta.compose(sigma_inv)), "-delta∘sigma^-1")
    return OreContext(
        ring=op_ring,
        sigma=new_sigma.with_inverse(new_inverse),
        delta=new_delta,
        alpha=lift(ctx.alpha, "alpha"),
        sigma_inverse=new_inverse,
        name=f"{ctx.name}_op",
    )


def opposite_iso(p: OrePoly, target: OreContext) -> OrePoly:
    """f(sum r_i X^i) = sum X^i r_i, read in target and brought to right form."""
    if target.sigma_inverse is None:
        raise MissingInverseError(f"{target.name}: the opposite isomorphism needs sigma inverse")
    source_ring = p.context.ring
    if not hasattr(target.ring, "opposite") or source_ring != target.ring.opposite():
        raise ContextMismatchError(f"{p.context.name} is not the opposite extension of {target.name}")
    ring = target.ring
    return _left_to_right(target, ((i, ring.element(r.coords)) for i, r in p.terms))


# ----------------------------------------------------------------
# 🔹 Hom-associativity
# ----------------------------------------------------------------
def check_ore_hom_associativity(
    ctx: OreContext,
    samples: int | None = None,
    degree: int | None = None,
    seed: int | None = None,
    height: int = 3,
) -> OreHomReport:
    """alpha(p)(qr) = (pq)alpha(r) on random triples."""
    samples = settings.samples if samples is None else samples
    degree = settings.degree_bound if degree is None else degree
    rng = random.Random(settings.seed if seed is None else seed)
    failures = []
    for _ in range(samples):
        p, q, r = (random_poly(ctx, rng, degree, height) for _ in range(3))
        if alpha_extend(p) * (q * r) != (p * q) * alpha_extend(r):
            failures.append(f"p={p}; q={q}; r={r}")
    if failures:
        logger.info("%s: %d of %d triples break hom-associativity", ctx.name, len(failures), samples)
    return OreHomReport(context=ctx.name, samples=samples, failures=failures)
