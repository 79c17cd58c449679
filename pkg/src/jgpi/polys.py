"""Sparse commutative polynomials with rational coefficients.

A monomial is a sorted tuple of indeterminate names with repetition, so
``("a", "a", "b")`` is ``a^2 b``; the empty tuple is the constant monomial.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Mapping

from .linalg import as_fraction


class CommPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {m: as_fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "CommPoly":
        return cls({(): c}) if c else cls()

    @classmethod
    def gen(cls, name: str) -> "CommPoly":
        return cls({(name,): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CommPoly.const(other)
        return isinstance(other, CommPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, CommPoly):
            other = CommPoly.const(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        out = CommPoly.__new__(CommPoly)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CommPoly.__new__(CommPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, CommPoly):
            other = CommPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return CommPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, CommPoly):
            c = as_fraction(other)
            out = CommPoly.__new__(CommPoly)
            out.terms = {m: c * x for m, x in self.terms.items()} if c else {}
            return out
        t: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = tuple(sorted(a + b)) if a and b else (a or b)
                s = t.get(m, 0) + ca * cb
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        out = CommPoly.__new__(CommPoly)
        out.terms = t
        return out

    __rmul__ = __mul__

    def indeterminates(self) -> set[str]:
        return {x for m in self.terms for x in m}

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x in m:
                v *= point[x]
            total += v
        return total

    def specialize(self, point: Mapping[str, Fraction]) -> "CommPoly":
        """Substitute values for some indeterminates, keeping the others."""
        t: dict = {}
        for m, c in self.terms.items():
            rest = []
            for x in m:
                if x in point:
                    c = c * point[x]
                else:
                    rest.append(x)
            if c:
                k = tuple(rest)
                t[k] = t.get(k, 0) + c
        return CommPoly(t)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(x if k == 1 else f"{x}^{k}" for x, k in sorted(Counter(m).items()))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CommPoly({str(self)!r})"


ZERO = CommPoly()
ONE = CommPoly.const(1)
