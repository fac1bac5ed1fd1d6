"""
Expression grammar shared by the CLI and the HTTP surface.

    expr := expr + expr | expr - expr | expr * expr | expr ^ N | -expr | (expr) | NUMBER | NAME

`*` is left-associative and parentheses are kept in the tree: in a non-associative
ring a*b*c means (a*b)*c and nothing is reassociated. Parsing is done with PLY; the
tables are built in memory, once per thread.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Union

import ply.lex as lex
import ply.yacc as yacc

from homore.errors import ParseError, UnknownSymbolError
from homore.exactnum import CDRing, parse_rational
from homore.homring import Algebra
from homore.ore import OreContext, constant, x_power

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------
# 🔹 Syntax tree
# ----------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Name:
    id: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Group:
    inner: "Node"


Node = Union[Num, Name, Neg, BinOp, Pow, Group]


# ----------------------------------------------------------------
# 🔹 PLY lexer and parser
# ----------------------------------------------------------------
class _ExpressionGrammar:
    tokens = ("NUMBER", "NAME", "PLUS", "MINUS", "TIMES", "CARET", "LPAREN", "RPAREN")

    t_PLUS = r"\+"
    t_MINUS = r"-"
    t_TIMES = r"\*"
    t_CARET = r"\^"
    t_LPAREN = r"\("
    t_RPAREN = r"\)"
    t_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
    t_ignore = " \t\r\n"

    precedence = (
        ("left", "PLUS", "MINUS"),
        ("left", "TIMES"),
        ("right", "UMINUS"),
        ("left", "CARET"),
    )

    def t_NUMBER(self, t):
        r"\d+(?:/\d+)?"
        return t

    def t_error(self, t):
        raise ParseError(f"illegal character {t.value[0]!r}", t.lexpos)

    def p_expression_binop(self, p):
        """expression : expression PLUS expression
        | expression MINUS expression
        | expression TIMES expression"""
        p[0] = BinOp(p[2], p[1], p[3])

    def p_expression_power(self, p):
        "expression : expression CARET NUMBER"
        if "/" in p[3]:
            raise ParseError(f"exponent must be a nonnegative integer, got {p[3]}", p.lexpos(3))
        p[0] = Pow(p[1], int(p[3]))

    def p_expression_uminus(self, p):
        "expression : MINUS expression %prec UMINUS"
        p[0] = Neg(p[2])

    def p_expression_group(self, p):
        "expression : LPAREN expression RPAREN"
        p[0] = Group(p[2])

    def p_expression_number(self, p):
        "expression : NUMBER"
        p[0] = Num(parse_rational(p[1]), p.lexpos(1))

    def p_expression_name(self, p):
        "expression : NAME"
        p[0] = Name(p[1], p.lexpos(1))

    def p_error(self, t):
        if t is None:
            raise ParseError("unexpected end of input")
        raise ParseError(f"unexpected {t.value!r}", t.lexpos)

    def build(self):
        self.lexer = lex.lex(module=self)
        self.parser = yacc.yacc(module=self, write_tables=False, debug=False, errorlog=yacc.NullLogger())
        return self


_local = threading.local()


def _grammar() -> _ExpressionGrammar:
    grammar = getattr(_local, "grammar", None)
    if grammar is None:
        grammar = _local.grammar = _ExpressionGrammar().build()
    return grammar


def parse_tree(text: str) -> Node:
    grammar = _grammar()
    try:
        return grammar.parser.parse(text, lexer=grammar.lexer.clone())
    except ParseError as exc:
        if exc.position is None:
            raise ParseError(exc.message, len(text)) from None
        raise


# ----------------------------------------------------------------
# 🔹 Evaluation
# ----------------------------------------------------------------
@dataclass(frozen=True)
class Namespace:
    """What names mean and how numbers enter a ring."""

    symbols: Mapping[str, Any]
    scalar: Callable[[Fraction], Any]
    one: Callable[[], Any]
    associative: bool = True
    nucleus: frozenset[str] = field(default_factory=frozenset)
    render: Callable[[Any], str] = str


def namespace_for(target) -> Namespace:
    if isinstance(target, Namespace):
        return target
    if isinstance(target, Algebra):
        unit = () if target.unit is None else (target.basis_names[target.unit],)
        return Namespace(
            symbols=target.symbols(),
            scalar=target.scalar,
            one=target.one,
            associative=target.associative,
            nucleus=frozenset(unit),
        )
    if isinstance(target, CDRing):
        return Namespace(
            symbols=target.symbols(),
            scalar=target.scalar,
            one=target.one,
            associative=target.is_associative(),
            nucleus=frozenset({"e0"}),
        )
    if isinstance(target, OreContext):
        ring = target.ring
        symbols = {name: constant(target, v) for name, v in ring.symbols().items()}
        nucleus = {"Y", "e0"}
        unit = ring.unit_element()
        if unit is not None:
            symbols["X"] = x_power(target, 1)
            nucleus.add("X")
        if isinstance(ring, Algebra) and ring.unit is not None:
            nucleus.add(ring.basis_names[ring.unit])
        return Namespace(
            symbols=symbols,
            scalar=lambda q: constant(target, ring.scalar(q)),
            one=lambda: x_power(target, 0),
            associative=ring.is_associative(),
            nucleus=frozenset(nucleus),
        )
    raise TypeError(f"cannot evaluate expressions in {type(target).__name__}")


def _chain(node: Node) -> list[Node]:
    """Factors of an unparenthesized product."""
    if isinstance(node, BinOp) and node.op == "*":
        return _chain(node.left) + _chain(node.right)
    return [node]


def _warn_chains(node: Node, ns: Namespace, text: str) -> None:
    if isinstance(node, BinOp) and node.op == "*":
        factors = _chain(node)
        relevant = [
            f for f in factors if not isinstance(f, Num) and not (isinstance(f, Name) and f.id in ns.nucleus)
        ]
        if len(relevant) >= 3:
            logger.warning("unparenthesized product of %d factors read left-nested in %r", len(relevant), text)
        for f in factors:
            _warn_chains(f, ns, text)
        return
    for child in _children(node):
        _warn_chains(child, ns, text)


def _children(node: Node) -> tuple[Node, ...]:
    if isinstance(node, BinOp):
        return node.left, node.right
    if isinstance(node, (Neg,)):
        return (node.operand,)
    if isinstance(node, Pow):
        return (node.base,)
    if isinstance(node, Group):
        return (node.inner,)
    return ()


def _lift(value, ns: Namespace):
    return ns.scalar(value) if isinstance(value, Fraction) else value


def evaluate(node: Node, ns: Namespace):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        try:
            return ns.symbols[node.id]
        except KeyError:
            raise UnknownSymbolError(f"unknown symbol {node.id!r}", node.pos) from None
    if isinstance(node, Group):
        return evaluate(node.inner, ns)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ns)
    if isinstance(node, Pow):
        base = evaluate(node.base, ns)
        if isinstance(base, Fraction):
            return base**node.exponent
        if node.exponent == 0:
            return ns.one()
        out = base
        for _ in range(node.exponent - 1):
            out = out * base
        return out

    left = evaluate(node.left, ns)
    right = evaluate(node.right, ns)
    if node.op == "*":
        if isinstance(left, Fraction) and isinstance(right, Fraction):
            return left * right
        if isinstance(left, Fraction):
            return right.scale(left)
        if isinstance(right, Fraction):
            return left.scale(right)
        return left * right
    if isinstance(left, Fraction) and isinstance(right, Fraction):
        return left + right if node.op == "+" else left - right
    left, right = _lift(left, ns), _lift(right, ns)
    return left + right if node.op == "+" else left - right


def parse_expression(text: str, target) -> Any:
    """Parse and evaluate text in an Algebra, a CDRing or an OreContext."""
    ns = namespace_for(target)
    tree = parse_tree(text)
    if not ns.associative:
        _warn_chains(tree, ns, text)
    return _lift(evaluate(tree, ns), ns)
