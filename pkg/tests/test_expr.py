from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jgpi import expr as E
from jgpi.expr import (Associator, LongAssociator, ParseError, Product, Sum, Unit, Var,
                       format_expression, normalize, parse_expression)
from jgpi.free import JordanPoly, associator, from_ast


def test_parse_associator():
    assert parse_expression("(y1,y2,z1)") == Associator(Var("y1"), Var("y2"), Var("z1"))


def test_parse_identity_five():
    ast = parse_expression("(y1,y2,z1,x1,y3) - (y1,y3,z1,x1,y2)")
    assert isinstance(ast, Sum)
    (c1, a1), (c2, a2) = ast.terms
    assert (c1, c2) == (1, -1)
    assert isinstance(a1, LongAssociator) and isinstance(a2, LongAssociator)
    assert [v.name for v in a2.args] == ["y1", "y3", "z1", "x1", "y2"]


def test_parse_nested_product():
    assert parse_expression("z1*(z2*z3)") == Product(Var("z1"), Product(Var("z2"), Var("z3")))


def test_chained_products_are_left_normed():
    assert parse_expression("z1*z2*z3") == Product(Product(Var("z1"), Var("z2")), Var("z3"))


def test_whitespace_insensitive():
    assert parse_expression(" ( y1 , y2 ,z1 ) ") == parse_expression("(y1,y2,z1)")


def test_format_examples():
    assert format_expression(Associator(Var("y1"), Var("y2"), Var("z1"))) == "(y1,y2,z1)"
    long_ = LongAssociator(tuple(Var(v) for v in ("z1", "y1", "y2", "z2", "y3")))
    assert format_expression(long_) == "(z1,y1,y2,z2,y3)"
    half = Sum(((Fraction(1, 2), Product(Var("z1"), Var("z2"))),))
    assert format_expression(half) == "1/2*(z1*z2)"


@pytest.mark.parametrize("text", ["", "y0", "(y1,y2)", "z1 +", "2*3*z1", "w1", "(y1,y2,z1", "y1)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_expression("z1 + + z2")
    assert info.value.position == 5


def test_variable_kinds():
    assert E.is_even("y3") and E.is_odd("z1") and E.is_placeholder("x2")
    assert E.var_key("x9") < E.var_key("y1") < E.var_key("y2") < E.var_key("z1")
    with pytest.raises(ValueError):
        E.make_var("y", 0)


def test_long_associator_is_left_normed():
    a, b, c, d, e = (JordanPoly.var(v) for v in ("z1", "y1", "y2", "z2", "y3"))
    p = from_ast(parse_expression("(z1,y1,y2,z2,y3)"))
    assert p == associator(associator(a, b, c), d, e)


def test_three_associator_expansion():
    p = from_ast(parse_expression("(z1,y1,z2)"))
    a, b, c = (JordanPoly.var(v) for v in ("z1", "y1", "z2"))
    assert p == (a * b) * c - a * (b * c)


# -- round trip ----------------------------------------------------------------

names = st.sampled_from(["x1", "x2", "y1", "y2", "y10", "z1", "z3"])
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)


def _ast():
    leaf = st.one_of(names.map(Var), st.just(Unit()))

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda t: Product(*t)),
            st.tuples(children, children, children).map(lambda t: Associator(*t)),
            st.lists(children, min_size=5, max_size=5).map(lambda xs: LongAssociator(tuple(xs))),
            st.lists(st.tuples(coeffs, children), min_size=1, max_size=3).map(lambda ts: Sum(tuple(ts))),
        )
    return st.recursive(leaf, extend, max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(_ast())
def test_round_trip(ast):
    norm = normalize(ast)
    text = format_expression(norm)
    assert normalize(parse_expression(text)) == norm


@settings(max_examples=200, deadline=None)
@given(_ast())
def test_round_trip_preserves_value(ast):
    text = format_expression(normalize(ast))
    assert from_ast(parse_expression(text)) == from_ast(ast)
