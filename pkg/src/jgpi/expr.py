"""Text syntax for graded Jordan polynomials.

Grammar (whitespace is ignored)::

    expr     := ['-'] term (('+'|'-') term)*
    term     := [rational '*'] factor ('*' factor)*
    factor   := var | '1' | '(' expr (',' expr)+ ')' | '(' expr ')'
    var      := ('y'|'z'|'x') digits
    rational := int ['/' int]

``y<i>`` are even variables, ``z<i>`` odd ones and ``x<i>`` placeholders whose
parity is fixed later.  A parenthesized list of an odd number ``>= 3`` of
comma separated expressions is a left-normed associator.  Chained products
``a*b*c`` associate to the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import as_fraction, fraction_str

KIND_ORDER = {"x": 0, "y": 1, "z": 2}
_VAR_RE = re.compile(r"^([xyz])([0-9]+)$")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple[int, int]:
    m = _VAR_RE.match(name)
    if not m or int(m.group(2)) < 1:
        raise ValueError(f"not a variable name: {name!r}")
    return KIND_ORDER[m.group(1)], int(m.group(2))


def var_kind(name: str) -> str:
    return name[0]


def var_index(name: str) -> int:
    return var_key(name)[1]


def is_even(name: str) -> bool:
    return name[0] == "y"


def is_odd(name: str) -> bool:
    return name[0] == "z"


def is_placeholder(name: str) -> bool:
    return name[0] == "x"


def make_var(kind: str, index: int) -> str:
    if kind not in KIND_ORDER:
        raise ValueError(f"unknown variable kind {kind!r}")
    if index < 1:
        raise ValueError("variable indices start at 1")
    return f"{kind}{index}"


# -- AST -------------------------------------------------------------------

class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Unit(Expr):
    pass


@dataclass(frozen=True)
class Product(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple  # of (Fraction, Expr)


@dataclass(frozen=True)
class Associator(Expr):
    a: Expr
    b: Expr
    c: Expr


@dataclass(frozen=True)
class LongAssociator(Expr):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 5 or len(self.args) % 2 == 0:
            raise ValueError("long associators take an odd number >= 5 of arguments")


def assoc_node(args) -> Expr:
    args = tuple(args)
    if len(args) == 3:
        return Associator(*args)
    return LongAssociator(args)


def normalize(ast: Expr) -> Expr:
    """Collapse trivial sums so structurally equal values compare equal."""
    if isinstance(ast, Sum):
        terms = []
        for c, t in ast.terms:
            t = normalize(t)
            if isinstance(t, Sum):
                terms.extend((c * cc, tt) for cc, tt in t.terms)
            else:
                terms.append((as_fraction(c), t))
        terms = [(c, t) for c, t in terms if c]
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))
    if isinstance(ast, Product):
        return Product(normalize(ast.left), normalize(ast.right))
    if isinstance(ast, Associator):
        return Associator(normalize(ast.a), normalize(ast.b), normalize(ast.c))
    if isinstance(ast, LongAssociator):
        return LongAssociator(tuple(normalize(a) for a in ast.args))
    return ast


# -- parser ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>[0-9]+)|(?P<var>[xyz][0-9]+)|(?P<op>[-+*/(),]))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val or 'end of input'!r}", pos)

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        ast = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return ast

    def expr(self) -> Expr:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        terms = []
        c, t = self.term()
        terms.append((sign * c, t))
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            c, t = self.term()
            terms.append((sign * c, t))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def rational(self) -> Fraction:
        kind, val, pos = self.take()
        num = int(val)
        if self.peek()[1] == "/":
            self.take()
            kind, val, pos2 = self.take()
            if kind != "num":
                raise ParseError("expected denominator", pos2)
            if int(val) == 0:
                raise ParseError("zero denominator", pos2)
            return Fraction(num, int(val))
        return Fraction(num)

    def term(self):
        coeff = Fraction(1)
        kind, val, pos = self.peek()
        if kind == "num" and not (val == "1" and self.peek(1)[1] not in ("*", "/")):
            coeff = self.rational()
            if self.peek()[1] != "*":
                # bare scalar: a multiple of the unit
                return coeff, Unit()
            self.take()
        node = self.factor()
        while self.peek()[1] == "*":
            self.take()
            node = Product(node, self.factor())
        return coeff, node

    def factor(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "var":
            try:
                var_key(val)
            except ValueError:
                raise ParseError(f"variable index must be >= 1 in {val!r}", pos) from None
            return Var(val)
        if kind == "num":
            if val != "1":
                raise ParseError(f"unexpected number {val!r}", pos)
            return Unit()
        if val == "(":
            args = [self.expr()]
            while self.peek()[1] == ",":
                self.take()
                args.append(self.expr())
            kind2, val2, pos2 = self.peek()
            if val2 != ")":
                raise ParseError(f"expected ')' or ',', got {val2 or 'end of input'!r}", pos2)
            self.take()
            if len(args) == 1:
                return args[0]
            if len(args) % 2 == 0:
                raise ParseError(f"associator needs an odd number of arguments, got {len(args)}", pos)
            return assoc_node(args)
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()


# -- printer ---------------------------------------------------------------

def _fmt_factor(ast: Expr) -> str:
    s = format_expression(ast)
    if isinstance(ast, (Product, Sum)):
        return f"({s})"
    return s


def format_expression(ast: Expr) -> str:
    if isinstance(ast, Var):
        return ast.name
    if isinstance(ast, Unit):
        return "1"
    if isinstance(ast, Product):
        # a leading bare 1 would be read back as a coefficient
        left = "(1)" if isinstance(ast.left, Unit) else _fmt_factor(ast.left)
        return f"{left}*{_fmt_factor(ast.right)}"
    if isinstance(ast, Associator):
        return "(" + ",".join(format_expression(a) for a in (ast.a, ast.b, ast.c)) + ")"
    if isinstance(ast, LongAssociator):
        return "(" + ",".join(format_expression(a) for a in ast.args) + ")"
    if isinstance(ast, Sum):
        if not ast.terms:
            return "0"
        parts = []
        for i, (c, t) in enumerate(ast.terms):
            c = as_fraction(c)
            neg = c < 0
            mag = -c if neg else c
            if isinstance(t, Unit) and mag != 1:
                body = fraction_str(mag)
            elif mag == 1:
                body = format_expression(t) if not isinstance(t, Sum) else f"({format_expression(t)})"
            else:
                body = f"{fraction_str(mag)}*{_fmt_factor(t)}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)
    raise TypeError(f"not an expression node: {ast!r}")


def variables(ast: Expr) -> set[str]:
    if isinstance(ast, Var):
        return {ast.name}
    if isinstance(ast, Unit):
        return set()
    if isinstance(ast, Product):
        return variables(ast.left) | variables(ast.right)
    if isinstance(ast, Sum):
        return set().union(*(variables(t) for _, t in ast.terms)) if ast.terms else set()
    if isinstance(ast, Associator):
        return variables(ast.a) | variables(ast.b) | variables(ast.c)
    return set().union(*(variables(a) for a in ast.args))
