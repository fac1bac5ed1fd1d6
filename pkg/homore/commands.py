"""
Verb dispatcher shared by the click CLI and the HTTP router.

run() never raises for HomoreError: the error becomes an exit code plus a message
on stderr, exactly as the command line reports it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional

from homore.errors import (
    PROPERTY_FAILED_EXIT,
    ArityError,
    HomoreError,
    UsageError,
)
from homore.exactnum import OCTONIONS
from homore.formats import (
    apply_alpha,
    parse_matrix,
    parse_vectors,
    render_module,
    resolve_algebra,
    resolve_module_file,
)
from homore.grammar import parse_expression
from homore.homring import (
    Algebra,
    hom_associativity_check,
    nucleus_membership,
    nucleus_subspace,
    yau_twist,
)
from homore.hommodule import (
    HomModule,
    chain_stabilization,
    generated_submodule,
    load_module,
    module_axioms_check,
    quotient_module,
)
from homore.linalg import SubspaceBasis
from homore.ore import (
    Direction,
    MapKind,
    OreContext,
    OrePoly,
    check_ore_hom_associativity,
    convert_form,
    identity_map,
    linear_map,
    opposite_context,
    opposite_iso,
    pi,
    pi_bruteforce,
    pi_show,
    zero_map,
)
from homore.weyl import build_weyl, reduce

logger = logging.getLogger(__name__)


class Verb(str, Enum):
    MUL = "mul"
    ADD = "add"
    ASSOC = "assoc"
    HOMCHECK = "homcheck"
    NUCLEUS = "nucleus"
    PI = "pi"
    CONVERT = "convert"
    OPISO = "opiso"
    REDUCE = "reduce"
    MODCHECK = "modcheck"
    QUOTIENT = "quotient"
    CLOSURE = "closure"
    CHAIN = "chain"


@dataclass
class Command:
    verb: Verb
    args: tuple[str, ...] = ()
    options: dict[str, Any] = field(default_factory=dict)
    context_file: Optional[str] = None

    def option(self, name: str, default=None):
        value = self.options.get(name)
        return default if value is None else value


@dataclass
class CommandResult:
    exit_code: int
    stdout: str = ""
    stderr: str = ""
    error: Optional[HomoreError] = None


# ----------------------------------------------------------------
# 🔹 Resolving rings and contexts from options
# ----------------------------------------------------------------
def _algebra(cmd: Command) -> Algebra:
    ref = cmd.option("algebra", cmd.context_file)
    if ref is None:
        raise UsageError("this verb needs --algebra")
    alg = apply_alpha(resolve_algebra(ref), cmd.option("alpha"))
    if cmd.option("yau") is not None:
        alg = yau_twist(alg, parse_matrix(cmd.option("yau")))
    return alg


def _wants_context(cmd: Command) -> bool:
    return bool(cmd.option("weyl")) or any(
        cmd.option(k) is not None for k in ("sigma", "sigma_inverse", "delta", "alpha_matrix")
    )


def _context(cmd: Command) -> OreContext:
    if cmd.option("weyl"):
        return build_weyl(cmd.option("alpha", "zero"))
    ring = _algebra(cmd)
    sigma = linear_map(ring, parse_matrix(cmd.option("sigma")), "sigma") if cmd.option("sigma") else identity_map()
    sigma_inverse = None
    if cmd.option("sigma_inverse"):
        sigma_inverse = linear_map(ring, parse_matrix(cmd.option("sigma_inverse")), "sigma^-1")
        sigma = sigma.with_inverse(sigma_inverse)
    elif sigma.kind is MapKind.IDENTITY:
        sigma_inverse = sigma
    delta = linear_map(ring, parse_matrix(cmd.option("delta")), "delta") if cmd.option("delta") else zero_map(ring)
    alpha_rows = parse_matrix(cmd.option("alpha_matrix")) if cmd.option("alpha_matrix") else ring.alpha_matrix
    return OreContext(
        ring=ring,
        sigma=sigma,
        delta=delta,
        alpha=linear_map(ring, alpha_rows, "alpha"),
        sigma_inverse=sigma_inverse,
        name=f"{ring.name}[X]",
    )


def _target(cmd: Command):
    if _wants_context(cmd):
        return _context(cmd)
    if cmd.option("octonions"):
        return OCTONIONS
    return _algebra(cmd)


def _module(cmd: Command) -> HomModule:
    path = cmd.option("module")
    if path is None:
        raise UsageError("this verb needs --module")
    spec, base = resolve_module_file(path)
    ref = cmd.option("algebra", spec.ring)
    ring = apply_alpha(resolve_algebra(ref, base), cmd.option("alpha"))
    return load_module(spec, ring)


def _enum(kind, value, flag: str):
    try:
        return kind(value)
    except ValueError:
        allowed = ", ".join(k.value for k in kind)
        raise UsageError(f"{flag} must be one of {allowed}, got {value!r}") from None


def _int_option(cmd: Command, name: str) -> int:
    value = cmd.option(name)
    if value is None:
        raise UsageError(f"{cmd.verb.value} needs --{name}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"--{name} must be an integer, got {value!r}") from None


def _arity(cmd: Command, n: int, at_least: bool = False) -> None:
    if (len(cmd.args) < n) if at_least else (len(cmd.args) != n):
        need = f"at least {n}" if at_least else str(n)
        raise ArityError(f"{cmd.verb.value} takes {need} argument(s), got {len(cmd.args)}")


# ----------------------------------------------------------------
# 🔹 Verbs
# ----------------------------------------------------------------
def _binary(cmd: Command, op: Callable[[Any, Any], Any]) -> tuple[str, int]:
    _arity(cmd, 2)
    target = _target(cmd)
    x, y = (parse_expression(a, target) for a in cmd.args)
    return str(op(x, y)), 0


def _mul(cmd: Command):
    return _binary(cmd, lambda x, y: x * y)


def _add(cmd: Command):
    return _binary(cmd, lambda x, y: x + y)


def _assoc(cmd: Command):
    _arity(cmd, 3)
    target = _target(cmd)
    x, y, z = (parse_expression(a, target) for a in cmd.args)
    return str((x * y) * z - x * (y * z)), 0


def _homcheck(cmd: Command):
    if _wants_context(cmd):
        report = check_ore_hom_associativity(
            _context(cmd), cmd.option("samples"), cmd.option("degree"), cmd.option("seed")
        )
    else:
        report = hom_associativity_check(_algebra(cmd))
    return report.render(), 0 if report.passed else PROPERTY_FAILED_EXIT


def _nucleus(cmd: Command):
    alg = _algebra(cmd)
    if not cmd.args:
        lines = [f"{slot}: {nucleus_subspace(alg, slot)}" for slot in ("left", "middle", "right", "full")]
        return "\n".join(lines), 0
    _arity(cmd, 1)
    flags = nucleus_membership(alg, parse_expression(cmd.args[0], alg))
    return flags.render(), 0 if flags.full else PROPERTY_FAILED_EXIT


def _pi(cmd: Command):
    i, m = _int_option(cmd, "i"), _int_option(cmd, "m")
    if cmd.option("show") or not cmd.args:
        return pi_show(i, m), 0
    _arity(cmd, 1)
    ctx = _context(cmd)
    p = parse_expression(cmd.args[0], ctx)
    if not p.is_zero() and p.degree > 0:
        raise UsageError("pi takes a coefficient (an expression without X)")
    a = p.coefficient(0)
    value = pi_bruteforce(ctx, i, m, a) if cmd.option("bruteforce") else pi(ctx, i, m, a)
    return ctx.ring.render(value), 0


def _render_left_form(ctx: OreContext, terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, c in reversed(terms):
        coef = f"({ctx.ring.render(c)})"
        parts.append(coef if k == 0 else (f"X*{coef}" if k == 1 else f"X^{k}*{coef}"))
    return " + ".join(parts)


def _convert(cmd: Command):
    _arity(cmd, 1)
    ctx = _context(cmd)
    p = parse_expression(cmd.args[0], ctx)
    direction = _enum(Direction, cmd.option("direction", "right_to_left"), "--direction")
    terms = convert_form(p, direction)
    if direction is Direction.LEFT_TO_RIGHT:
        return str(OrePoly(ctx, terms)), 0
    return _render_left_form(ctx, terms), 0


def _opiso(cmd: Command):
    _arity(cmd, 1)
    ctx = _context(cmd)
    op = opposite_context(ctx)
    return str(opposite_iso(parse_expression(cmd.args[0], op), ctx)), 0


def _reduce(cmd: Command):
    _arity(cmd, 1)
    gens = cmd.option("gen") or ()
    if not gens:
        raise UsageError("reduce needs at least one --gen")
    ctx = _context(cmd) if _wants_context(cmd) else build_weyl(cmd.option("alpha", "zero"))
    generators = [parse_expression(g, ctx) for g in gens]
    trace = reduce(parse_expression(cmd.args[0], ctx), generators)
    if not trace.complete:
        logger.warning("reduction stopped early: no generator reduces the leading coefficient")
    out = trace.render() if cmd.option("trace") else str(trace.remainder)
    return out, 0


def _modcheck(cmd: Command):
    report = module_axioms_check(_module(cmd))
    return report.render(), 0 if report.passed else PROPERTY_FAILED_EXIT


def _vectors(cmd: Command, M: HomModule):
    vectors = [v for a in cmd.args for v in parse_vectors(a)]
    for v in vectors:
        if len(v) != M.dim:
            raise UsageError(f"vector of length {len(v)} in a module of dim {M.dim}")
    return vectors


def _quotient(cmd: Command):
    M = _module(cmd)
    N = SubspaceBasis.span(_vectors(cmd, M), M.dim)
    Q, _ = quotient_module(M, N)
    return render_module(Q, cmd.option("algebra", M.ring.name)).rstrip("\n"), 0


def _closure(cmd: Command):
    M = _module(cmd)
    return str(generated_submodule(M, _vectors(cmd, M))), 0


def _chain(cmd: Command):
    _arity(cmd, 1, at_least=True)
    M = _module(cmd)
    sets = []
    for a in cmd.args:
        vectors = parse_vectors(a)
        if any(len(v) != M.dim for v in vectors):
            raise UsageError(f"chain generators must have length {M.dim}")
        sets.append(vectors)
    return str(chain_stabilization(M, sets)), 0


HANDLERS: dict[Verb, Callable[[Command], tuple[str, int]]] = {
    Verb.MUL: _mul,
    Verb.ADD: _add,
    Verb.ASSOC: _assoc,
    Verb.HOMCHECK: _homcheck,
    Verb.NUCLEUS: _nucleus,
    Verb.PI: _pi,
    Verb.CONVERT: _convert,
    Verb.OPISO: _opiso,
    Verb.REDUCE: _reduce,
    Verb.MODCHECK: _modcheck,
    Verb.QUOTIENT: _quotient,
    Verb.CLOSURE: _closure,
    Verb.CHAIN: _chain,
}


def run(cmd: Command) -> CommandResult:
    try:
        stdout, code = HANDLERS[cmd.verb](cmd)
    except HomoreError as exc:
        logger.debug("%s failed: %s", cmd.verb.value, exc.message)
        return CommandResult(exc.exit_code, "", f"error: {exc.message}", exc)
    return CommandResult(code, stdout + "\n" if stdout else "", "")


def make_command(verb: str, args=(), options: dict | None = None) -> Command:
    try:
        v = Verb(verb)
    except ValueError:
        raise UsageError(f"unknown verb {verb!r}") from None
    return Command(v, tuple(args), dict(options or {}))
