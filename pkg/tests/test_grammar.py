import logging
import random
from fractions import Fraction

import pytest

from homore.errors import ParseError, UnknownSymbolError
from homore.exactnum import OCTONIONS, CDElement
from homore.grammar import BinOp, Group, Name, parse_expression, parse_tree
from homore.ore import random_poly, x_power
from homore.weyl import random_weyl, render_weyl

E = OCTONIONS.basis()


def test_products_nest_to_the_left():
    tree = parse_tree("a*b*c")
    assert isinstance(tree, BinOp) and isinstance(tree.left, BinOp)
    assert tree.right == Name("c", 4)
    grouped = parse_tree("a*(b*c)")
    assert isinstance(grouped.right, Group)


def test_octonion_associator():
    value = parse_expression("(e1*e2)*e4 - e1*(e2*e4)", OCTONIONS)
    assert value == (E[1] * E[2]) * E[4] - E[1] * (E[2] * E[4])
    assert not value.is_zero()


def test_scalars_and_powers():
    value = parse_expression("1/2*e1 + 3", OCTONIONS)
    assert value == CDElement(3, (3, Fraction(1, 2), 0, 0, 0, 0, 0, 0))
    assert parse_expression("2^3", OCTONIONS) == OCTONIONS.scalar(8)
    assert parse_expression("e1^2", OCTONIONS) == OCTONIONS.scalar(-1)
    assert parse_expression("-e2 - -e2", OCTONIONS).is_zero()


def test_weyl_expressions(weyl):
    assert render_weyl(parse_expression("X*Y - Y*X", weyl)) == "1*e0"
    assert parse_expression("X^0", weyl) == x_power(weyl, 0)
    assert parse_expression("X^2", weyl) == x_power(weyl, 2)


def test_algebra_expressions(truncated):
    t = truncated.basis_element(1)
    assert parse_expression("t*t - t2", truncated).is_zero()
    assert parse_expression("2*t + 1", truncated) == t.scale(2) + truncated.one()


def test_unparenthesized_chain_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="homore.grammar"):
        value = parse_expression("e1*e2*e4", OCTONIONS)
    assert value == (E[1] * E[2]) * E[4]
    assert "left-nested" in caplog.text


def test_nucleus_factors_do_not_warn(caplog):
    with caplog.at_level(logging.WARNING, logger="homore.grammar"):
        parse_expression("2*e0*e1*e2", OCTONIONS)
        parse_expression("(e1*e2)*e4", OCTONIONS)
    assert not caplog.records


@pytest.mark.parametrize(
    "text, position",
    [("e1 + * e2", 5), ("e1 +", 4), ("e1 $ e2", 3), ("(e1", 3)],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_expression(text, OCTONIONS)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_fractional_exponent_rejected():
    with pytest.raises(ParseError):
        parse_expression("e1^1/2", OCTONIONS)


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError) as info:
        parse_expression("e1 + e9", OCTONIONS)
    assert info.value.position == 5


def test_rendered_values_parse_back(truncated, weyl):
    rng = random.Random(31)
    for _ in range(200):
        x = OCTONIONS.random_element(rng)
        assert parse_expression(str(x), OCTONIONS) == x
        a = truncated.random_element(rng)
        assert parse_expression(str(a), truncated) == a
        p = random_weyl(weyl, rng, degree=2, height=2)
        assert parse_expression(render_weyl(p), weyl) == p


def test_rendered_ore_polynomials_parse_back(classical_ctx):
    rng = random.Random(32)
    for _ in range(200):
        p = random_poly(classical_ctx, rng, degree=3, height=2)
        assert parse_expression(str(p), classical_ctx) == p
