"""
The octonionic Weyl algebra A(O) = O[Y][X; id, d/dY] and one-sided reduction in it.

O[Y] is commutative in Y with octonion coefficients, so (aY^i)(bY^j) = (ab)Y^(i+j).
Reduction cancels leading terms with right cofactors c = lc(g)^-1 lc(r) Y^k; the
octonion step a(a^-1 b) = b relies on alternativity only.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from homore.config import settings
from homore.errors import EmptyFamilyError, UsageError, ZeroPolynomialError
from homore.exactnum import OCTONIONS, CDElement, format_rational
from homore.ore import (
    NEG_INF,
    OreContext,
    OrePoly,
    RingMap,
    constant,
    identity_map,
    ore_mul,
    random_poly,
    x_power,
    zero_map,
)
from homore.schemas import LeadingEntry, LeadingIdealReport, XNucleusReport

logger = logging.getLogger(__name__)


class AlphaMode(str, Enum):
    ZERO = "zero"
    IDENTITY = "identity"


# ----------------------------------------------------------------
# 🔹 O[Y]
# ----------------------------------------------------------------
def _render_monomials(entries: Iterable[tuple[Fraction, int, int, int]]) -> str:
    """entries are (coefficient, basis index, Y-degree, X-degree), already ordered."""
    parts = []
    for c, i, y, x in entries:
        body = f"{format_rational(abs(c))}*e{i}"
        if y:
            body += "*Y" if y == 1 else f"*Y^{y}"
        if x:
            body += "*X" if x == 1 else f"*X^{x}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class OctoPoly:
    """sum a_k Y^k with octonion a_k; terms ascending in k, no zero coefficients."""

    terms: tuple[tuple[int, CDElement], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, CDElement]]) -> "OctoPoly":
        acc: dict[int, CDElement] = {}
        for k, c in terms:
            acc[k] = acc[k] + c if k in acc else c
        return cls(tuple(sorted((k, c) for k, c in acc.items() if not c.is_zero())))

    @classmethod
    def constant(cls, a: CDElement) -> "OctoPoly":
        return cls.from_terms([(0, a)])

    @classmethod
    def monomial(cls, a: CDElement, k: int) -> "OctoPoly":
        return cls.from_terms([(k, a)])

    @property
    def degree(self):
        return self.terms[-1][0] if self.terms else NEG_INF

    def is_zero(self) -> bool:
        return not self.terms

    def leading_term(self) -> tuple[int, CDElement]:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        return self.terms[-1]

    def max_degree(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other: "OctoPoly") -> "OctoPoly":
        return OctoPoly.from_terms(self.terms + other.terms)

    def __neg__(self) -> "OctoPoly":
        return OctoPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "OctoPoly") -> "OctoPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OctoPoly):
            return OctoPoly.from_terms(
                (i + j, a * b) for i, a in self.terms for j, b in other.terms
            )
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, q) -> "OctoPoly":
        return OctoPoly.from_terms((k, c.scale(q)) for k, c in self.terms)

    def __str__(self) -> str:
        return _render_monomials(
            (c, i, k, 0) for k, a in reversed(self.terms) for i, c in enumerate(a.coords) if c
        )


def octo_delta(p: OctoPoly) -> OctoPoly:
    """d/dY termwise."""
    return OctoPoly.from_terms((k - 1, c.scale(k)) for k, c in p.terms if k > 0)


@dataclass(frozen=True)
class OctoPolyRing:
    """Coefficient-ring handle for O[Y]."""

    validation_degree: int = 8
    name: str = "octonions[Y]"

    def zero(self) -> OctoPoly:
        return OctoPoly()

    def one(self) -> OctoPoly:
        return OctoPoly.constant(OCTONIONS.one())

    def unit_element(self) -> OctoPoly:
        return self.one()

    def scalar(self, q) -> OctoPoly:
        return OctoPoly.constant(OCTONIONS.scalar(q))

    def y(self) -> OctoPoly:
        return OctoPoly.monomial(OCTONIONS.one(), 1)

    def constant(self, a: CDElement) -> OctoPoly:
        return OctoPoly.constant(a)

    def validation_elements(self) -> tuple[OctoPoly, ...]:
        return tuple(
            OctoPoly.monomial(e, k) for k in range(self.validation_degree + 1) for e in OCTONIONS.basis()
        )

    def random_element(
        self, rng: random.Random, height: int = 3, density: float = 0.6, degree: int = 2
    ) -> OctoPoly:
        terms = []
        for k in range(degree + 1):
            if rng.random() < density:
                terms.append((k, OCTONIONS.random_element(rng, height, density=0.35)))
        return OctoPoly.from_terms(terms)

    def symbols(self) -> dict[str, OctoPoly]:
        out = {f"e{i}": OctoPoly.constant(e) for i, e in enumerate(OCTONIONS.basis())}
        out["Y"] = self.y()
        return out

    def is_associative(self) -> bool:
        return False

    def render(self, x: OctoPoly) -> str:
        return str(x)


# ----------------------------------------------------------------
# 🔹 A(O)
# ----------------------------------------------------------------
def render_weyl(p: OrePoly) -> str:
    """Flat monomials: descending X, then descending Y, then basis order."""
    entries = []
    for x, coef in reversed(p.terms):
        for y, a in reversed(coef.terms):
            entries.extend((c, i, y, x) for i, c in enumerate(a.coords) if c)
    return _render_monomials(entries)


@lru_cache(maxsize=None)
def _weyl_context(alpha_mode: AlphaMode, validation_degree: int) -> OreContext:
    ring = OctoPolyRing(validation_degree)
    sigma = identity_map()
    alpha = zero_map(ring) if alpha_mode == AlphaMode.ZERO else identity_map()
    ctx = OreContext(
        ring=ring,
        sigma=sigma,
        delta=RingMap("d/dY", octo_delta),
        alpha=alpha,
        sigma_inverse=sigma,
        name=f"A(O) alpha={alpha_mode.value}",
        renderer=render_weyl,
    )
    logger.debug("built %s", ctx.name)
    return ctx


def build_weyl(alpha_mode: str = AlphaMode.ZERO, validation_degree: int | None = None) -> OreContext:
    try:
        mode = AlphaMode(alpha_mode)
    except ValueError:
        raise UsageError(f"alpha mode must be zero or identity, got {alpha_mode!r}") from None
    degree = settings.weyl_validation_degree if validation_degree is None else validation_degree
    return _weyl_context(mode, degree)


def weyl_x(ctx: OreContext) -> OrePoly:
    return x_power(ctx, 1)


def weyl_y(ctx: OreContext) -> OrePoly:
    return constant(ctx, ctx.ring.y())


def weyl_constant(ctx: OreContext, a: CDElement, ydeg: int = 0) -> OrePoly:
    return constant(ctx, OctoPoly.monomial(a, ydeg))


def random_weyl(ctx: OreContext, rng: random.Random, degree: int = 3, height: int = 2) -> OrePoly:
    return random_poly(ctx, rng, degree, height, density=0.6)


# ----------------------------------------------------------------
# 🔹 X^k in the nucleus
# ----------------------------------------------------------------
def _associator(p: OrePoly, q: OrePoly, r: OrePoly) -> OrePoly:
    return ore_mul(ore_mul(p, q), r) - ore_mul(p, ore_mul(q, r))


def x_nucleus_check(
    ctx: OreContext,
    k: int,
    samples: int | None = None,
    degree: int | None = None,
    seed: int | None = None,
) -> XNucleusReport:
    """(X^k, p, q), (p, X^k, q) and (p, q, X^k) on random pairs."""
    samples = settings.samples if samples is None else samples
    degree = min(settings.degree_bound, 4) if degree is None else degree
    rng = random.Random(settings.seed if seed is None else seed)
    xk = x_power(ctx, k)
    failures = []
    for _ in range(samples):
        p = random_weyl(ctx, rng, degree)
        q = random_weyl(ctx, rng, degree)
        for label, triple in (("left", (xk, p, q)), ("middle", (p, xk, q)), ("right", (p, q, xk))):
            if not _associator(*triple).is_zero():
                failures.append(f"{label}: p={p}; q={q}")
    return XNucleusReport(k=k, samples=samples, failures=failures)


# ----------------------------------------------------------------
# 🔹 Leading data and reduction
# ----------------------------------------------------------------
@dataclass(frozen=True)
class LeadingData:
    xdeg: int
    lc: OctoPoly


def leading_data(p: OrePoly) -> LeadingData:
    if p.is_zero():
        raise ZeroPolynomialError("the zero element has no leading data")
    return LeadingData(p.degree, p.leading_coefficient())


@dataclass(frozen=True)
class ReductionStep:
    generator: int
    cofactors: tuple[OctoPoly, ...]
    shift: int
    subtracted: OrePoly


@dataclass(frozen=True)
class ReductionTrace:
    input: OrePoly
    generators: tuple[OrePoly, ...]
    steps: tuple[ReductionStep, ...]
    remainder: OrePoly
    complete: bool

    @property
    def step_bound(self) -> int:
        """(X-degree + 1)(max Y-degree + 1)(#generators) of the input.

        A heuristic cap used by the tests, not a proven bound on the number of steps.
        """
        if self.input.is_zero():
            return 0
        max_y = max(c.max_degree() for _, c in self.input.terms)
        return (self.input.degree + 1) * (max_y + 1) * len(self.generators)

    def render(self) -> str:
        lines = []
        for n, step in enumerate(self.steps):
            chain = ", ".join(str(c) for c in step.cofactors)
            lines.append(f"step {n}: g{step.generator} * ({chain}) * X^{step.shift} -> {step.subtracted}")
        lines.append(f"remainder: {self.remainder}")
        if not self.complete:
            lines.append("incomplete: no generator reduces the leading coefficient")
        return "\n".join(lines)


def _chain_product(g: OrePoly, cofactors: Sequence[OctoPoly], shift: int) -> OrePoly:
    """((g c1) c2 ...) X^shift, left-nested."""
    ctx = g.context
    out = g
    for c in cofactors:
        out = ore_mul(out, constant(ctx, c))
    return ore_mul(out, x_power(ctx, shift))


def reduce(p: OrePoly, generators: Sequence[OrePoly]) -> ReductionTrace:
    """Right-ideal division of p by generators, recording every subtraction.

    Generators whose leading coefficient is not a monomial are accepted; only the
    leading term of that coefficient is matched, so a step may leave lower Y-terms
    behind. Each step is still an exact subtraction of g * c * X^k, which
    `verify_trace` replays. Stops with `complete=False` when no generator can
    cancel the leading term.
    """
    if not generators:
        raise EmptyFamilyError("reduction needs at least one generator")
    for g in generators:
        if g.is_zero():
            raise ZeroPolynomialError("generators must be nonzero")
    leading = [leading_data(g) for g in generators]
    steps: list[ReductionStep] = []
    r = p
    complete = True
    while not r.is_zero():
        d = r.degree
        s, b = r.leading_coefficient().leading_term()
        eligible = [i for i, ld in enumerate(leading) if ld.xdeg <= d]
        if not eligible:
            break
        chosen: Optional[int] = None
        for i in eligible:
            if leading[i].lc.leading_term()[0] <= s:
                chosen = i
                break
        if chosen is None:
            complete = False
            break
        t, a = leading[chosen].lc.leading_term()
        cofactor = OctoPoly.monomial(a.inverse() * b, s - t)
        shift = d - leading[chosen].xdeg
        q = _chain_product(generators[chosen], (cofactor,), shift)
        steps.append(ReductionStep(chosen, (cofactor,), shift, q))
        r = r - q
    logger.debug("reduction took %d steps (complete=%s)", len(steps), complete)
    return ReductionTrace(p, tuple(generators), tuple(steps), r, complete)


def verify_trace(trace: ReductionTrace) -> bool:
    """Replay every step through ore_mul; the input must equal sum q + remainder."""
    total = trace.remainder
    for step in trace.steps:
        q = _chain_product(trace.generators[step.generator], step.cofactors, step.shift)
        if q != step.subtracted:
            return False
        total = total + q
    return total == trace.input


def leading_ideal_probe(generators: Sequence[OrePoly]) -> LeadingIdealReport:
    """Align every generator to the common degree n = max deg and classify its leading coefficient."""
    if not generators:
        raise EmptyFamilyError("probe needs at least one generator")
    data = [leading_data(g) for g in generators]
    n = max(ld.xdeg for ld in data)
    entries = []
    for g, ld in zip(generators, data):
        aligned = ore_mul(g, x_power(g.context, n - ld.xdeg))
        lc = aligned.leading_coefficient()
        entries.append(
            LeadingEntry(xdeg=ld.xdeg, lc=str(lc), aligned=str(aligned), invertible_monomial=lc.is_monomial())
        )
    return LeadingIdealReport(n=n, entries=entries)
