"""The free unital commutative nonassociative algebra over the rationals.

Monomials are canonical binary trees: a leaf is a variable name such as
``"y1"``, an internal node is a pair ``(a, b)`` with ``mono_key(a) <=
mono_key(b)``, and the unit is the string ``"1"``.  Because the children of
every node are sorted, commutativity of the product is built into the
representation.
"""
from __future__ import annotations

import itertools
import os
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import expr as E
from .linalg import Echelon, as_fraction, fraction_str

UNIT = "1"
DEFAULT_MAX_DEGREE = 7


class DegreeBoundError(ValueError):
    pass


def max_degree_cap() -> int:
    """Hard cap on total degree; ``JGPI_MAX_DEG`` overrides the default of 7."""
    return int(os.environ.get("JGPI_MAX_DEG", DEFAULT_MAX_DEGREE))


def check_degree(total: int, bound: int | None = None) -> None:
    cap = max_degree_cap()
    bound = cap if bound is None else min(bound, cap)
    if total > bound:
        raise DegreeBoundError(f"total degree {total} exceeds bound {bound}")


# -- monomials ----------------------------------------------------------------

@lru_cache(maxsize=None)
def mono_key(m) -> tuple:
    """Total order on canonical trees: degree first, then children recursively."""
    if m == UNIT:
        return (0,)
    if isinstance(m, str):
        return (1, E.var_key(m))
    a, b = m
    ka, kb = mono_key(a), mono_key(b)
    return (ka[0] + kb[0], ka, kb)


def mono_degree(m) -> int:
    return mono_key(m)[0]


def mul_mono(a, b):
    if a == UNIT:
        return b
    if b == UNIT:
        return a
    return (a, b) if mono_key(a) <= mono_key(b) else (b, a)


def canonicalize(tree):
    """Canonical form of a raw product tree (nested 2-tuples of leaves)."""
    if isinstance(tree, str):
        if tree != UNIT:
            E.var_key(tree)
        return tree
    a, b = tree
    return mul_mono(canonicalize(a), canonicalize(b))


@lru_cache(maxsize=None)
def leaves(m) -> tuple:
    if m == UNIT:
        return ()
    if isinstance(m, str):
        return (m,)
    return leaves(m[0]) + leaves(m[1])


def mono_str(m) -> str:
    if isinstance(m, str):
        return m
    a, b = m
    sa = mono_str(a) if isinstance(a, str) else f"({mono_str(a)})"
    sb = mono_str(b) if isinstance(b, str) else f"({mono_str(b)})"
    return f"{sa}*{sb}"


def mono_ast(m) -> E.Expr:
    if m == UNIT:
        return E.Unit()
    if isinstance(m, str):
        return E.Var(m)
    return E.Product(mono_ast(m[0]), mono_ast(m[1]))


# -- multidegrees -------------------------------------------------------------

class MultiDegree(tuple):
    """Sorted tuple of ``(variable, exponent)`` pairs with positive exponents."""

    def __new__(cls, data: Mapping[str, int] | Iterable = ()):
        if isinstance(data, Mapping):
            items = data.items()
        else:
            items = Counter(dict(data)) if data and not isinstance(next(iter(data)), str) else Counter(data)
            items = items.items()
        pairs = sorted(((v, int(k)) for v, k in items if k), key=lambda p: E.var_key(p[0]))
        for v, k in pairs:
            if k < 0:
                raise ValueError("negative exponent")
        return super().__new__(cls, pairs)

    @classmethod
    def of(cls, *names: str) -> "MultiDegree":
        return cls(Counter(names))

    @property
    def total(self) -> int:
        return sum(k for _, k in self)

    @property
    def parity(self) -> int:
        if any(E.is_placeholder(v) for v, _ in self):
            raise ValueError(f"parity undefined for placeholder variables in {self}")
        return sum(k for v, k in self if E.is_odd(v)) % 2

    def as_dict(self) -> dict[str, int]:
        return dict(self)

    def variables(self) -> list[str]:
        return [v for v, _ in self]

    def __add__(self, other):
        c = Counter(dict(self))
        c.update(dict(other))
        return MultiDegree(c)

    def __sub__(self, other):
        c = dict(self)
        for v, k in other:
            c[v] = c.get(v, 0) - k
            if c[v] < 0:
                raise ValueError(f"{other} is not below {self}")
        return MultiDegree(c)

    def sub_degrees(self):
        """All multidegrees ``e <= self`` (including zero and ``self``)."""
        names = [v for v, _ in self]
        for exps in itertools.product(*(range(k + 1) for _, k in self)):
            yield MultiDegree(dict(zip(names, exps)))

    def even_part(self) -> "MultiDegree":
        return MultiDegree({v: k for v, k in self if E.is_even(v)})

    def odd_part(self) -> "MultiDegree":
        return MultiDegree({v: k for v, k in self if E.is_odd(v)})

    def is_multilinear(self) -> bool:
        return all(k == 1 for _, k in self)

    def key(self):
        return tuple((E.var_key(v), k) for v, k in self)

    def __str__(self):
        if not self:
            return "1"
        return "*".join(v if k == 1 else f"{v}^{k}" for v, k in self)

    def __repr__(self):
        return f"MultiDegree({dict(self)!r})"


def multidegree(m) -> MultiDegree:
    return MultiDegree(Counter(leaves(m)))


@lru_cache(maxsize=None)
def monomials(d: MultiDegree) -> tuple:
    """All canonical monomials of multidegree ``d`` sorted by :func:`mono_key`."""
    d = MultiDegree(d)
    if d.total == 0:
        return (UNIT,)
    if d.total == 1:
        return (d[0][0],)
    out = set()
    for e in d.sub_degrees():
        if e.total == 0 or e.total * 2 > d.total:
            continue
        f = d - e
        for a in monomials(e):
            for b in monomials(f):
                out.add(mul_mono(a, b))
    return tuple(sorted(out, key=mono_key))


def ordered_splits(d: MultiDegree, k: int):
    """Ordered k-tuples of nonzero multidegrees summing to ``d``."""
    if k == 1:
        if d.total:
            yield (d,)
        return
    for e in d.sub_degrees():
        if e.total == 0 or d.total - e.total < k - 1:
            continue
        for rest in ordered_splits(d - e, k - 1):
            yield (e,) + rest


# -- polynomials --------------------------------------------------------------

class JordanPoly:
    """Finite rational combination of canonical monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "JordanPoly":
        E.var_key(name)
        return cls({name: 1})

    @classmethod
    def one(cls) -> "JordanPoly":
        return cls({UNIT: 1})

    @classmethod
    def zero(cls) -> "JordanPoly":
        return cls()

    @classmethod
    def monomial(cls, m, coeff=1) -> "JordanPoly":
        return cls({m: coeff})

    @classmethod
    def parse(cls, text: str) -> "JordanPoly":
        return from_ast(E.parse_expression(text))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = JordanPoly({UNIT: other}) if other else JordanPoly()
        return isinstance(other, JordanPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return JordanPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return JordanPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return JordanPoly({m: c * other for m, c in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return multiply(_coerce(other), self)

    def items(self):
        """Terms sorted by monomial order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v in leaves(m)}

    def multidegrees(self) -> set[MultiDegree]:
        return {multidegree(m) for m in self.terms}

    def multidegree(self) -> MultiDegree:
        ds = self.multidegrees()
        if len(ds) != 1:
            raise ValueError(f"polynomial is not multihomogeneous: {self}")
        return next(iter(ds))

    def is_multihomogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def to_ast(self) -> E.Expr:
        items = self.items()
        if len(items) == 1 and items[0][1] == 1:
            return mono_ast(items[0][0])
        return E.Sum(tuple((c, mono_ast(m)) for m, c in items))

    def __str__(self):
        return E.format_expression(self.to_ast())

    def __repr__(self):
        return f"JordanPoly({str(self)!r})"


def _coerce(x) -> JordanPoly:
    if isinstance(x, JordanPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return JordanPoly({UNIT: x})
    if isinstance(x, str):
        return JordanPoly.parse(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Jordan polynomial")


def multiply(p: JordanPoly, q: JordanPoly) -> JordanPoly:
    out: dict = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            m = mul_mono(a, b)
            out[m] = out.get(m, 0) + ca * cb
    return JordanPoly(out)


def associator(p, q, r) -> JordanPoly:
    p, q, r = _coerce(p), _coerce(q), _coerce(r)
    return (p * q) * r - p * (q * r)


def long_associator(*args) -> JordanPoly:
    """Left-normed associator ``((a1,a2,a3),a4,a5),...``."""
    if len(args) < 3 or len(args) % 2 == 0:
        raise ValueError("associators take an odd number >= 3 of arguments")
    acc = associator(args[0], args[1], args[2])
    for i in range(3, len(args), 2):
        acc = associator(acc, args[i], args[i + 1])
    return acc


def product(factors) -> JordanPoly:
    """Left-normed product of the given factors; the empty product is 1."""
    acc = JordanPoly.one()
    for f in factors:
        acc = acc * _coerce(f)
    return acc


def from_ast(ast: E.Expr) -> JordanPoly:
    if isinstance(ast, E.Var):
        return JordanPoly.var(ast.name)
    if isinstance(ast, E.Unit):
        return JordanPoly.one()
    if isinstance(ast, E.Product):
        return from_ast(ast.left) * from_ast(ast.right)
    if isinstance(ast, E.Sum):
        out = JordanPoly()
        for c, t in ast.terms:
            out = out + from_ast(t) * as_fraction(c)
        return out
    if isinstance(ast, E.Associator):
        return associator(from_ast(ast.a), from_ast(ast.b), from_ast(ast.c))
    if isinstance(ast, E.LongAssociator):
        return long_associator(*(from_ast(a) for a in ast.args))
    raise TypeError(f"not an expression node: {ast!r}")


def multihomogeneous_components(p: JordanPoly) -> dict[MultiDegree, JordanPoly]:
    parts: dict = {}
    for m, c in p.terms.items():
        parts.setdefault(multidegree(m), {})[m] = c
    return {d: JordanPoly(t) for d, t in sorted(parts.items(), key=lambda kv: kv[0].key())}


def substitute(p: JordanPoly, mapping: Mapping[str, JordanPoly]) -> JordanPoly:
    """Replace variables by polynomials (unmapped variables stay)."""
    mapping = {v: _coerce(q) for v, q in mapping.items()}
    cache: dict = {}

    def ev(m):
        if m in cache:
            return cache[m]
        if isinstance(m, str):
            r = mapping.get(m) if m != UNIT else None
            r = r if r is not None else JordanPoly({m: 1})
        else:
            r = ev(m[0]) * ev(m[1])
        cache[m] = r
        return r

    out = JordanPoly()
    for m, c in p.terms.items():
        out = out + ev(m) * c
    return out


def shift_substitute(p: JordanPoly, v: str) -> JordanPoly:
    """``p`` with the even variable ``v`` replaced by ``v + 1``."""
    if not E.is_even(v):
        raise ValueError(f"only even variables can be shifted by the unit, got {v!r}")
    return substitute(p, {v: JordanPoly.var(v) + 1})


def rename(p: JordanPoly, mapping: Mapping[str, str]) -> JordanPoly:
    return substitute(p, {a: JordanPoly.var(b) for a, b in mapping.items()})


def fresh_vars(kind: str, count: int, avoid: Iterable[str]) -> list[str]:
    used = {E.var_index(v) for v in avoid if v[0] == kind}
    out, i = [], 1
    while len(out) < count:
        if i not in used:
            out.append(E.make_var(kind, i))
        i += 1
    return out


def fully_linearize(p: JordanPoly) -> JordanPoly:
    """Full linearization of a multihomogeneous polynomial.

    Each variable of degree ``k > 1`` is replaced by a sum of ``k`` fresh
    variables of the same kind and only the part multilinear in the copies
    is kept.  Multilinear inputs are returned unchanged.
    """
    d = p.multidegree()
    out = p
    used = set(p.variables())
    for v, k in d:
        if k == 1:
            continue
        copies = fresh_vars(v[0], k, used)
        used.update(copies)
        expanded = substitute(out, {v: sum((JordanPoly.var(c) for c in copies), JordanPoly())})
        keep = {}
        for m, c in expanded.terms.items():
            cnt = Counter(leaves(m))
            if all(cnt[c2] == 1 for c2 in copies):
                keep[m] = c
        out = JordanPoly(keep)
    return out


def jordan_identity() -> JordanPoly:
    """``(x1^2 x2) x1 - x1^2 (x2 x1)`` in ungraded variables."""
    x1, x2 = JordanPoly.var("x1"), JordanPoly.var("x2")
    sq = x1 * x1
    return (sq * x2) * x1 - sq * (x2 * x1)


@lru_cache(maxsize=None)
def linearized_jordan_identity() -> JordanPoly:
    return fully_linearize(jordan_identity())


# -- relations and the brute-force closure -------------------------------------

def accepts(var: str, e: MultiDegree) -> bool:
    """Can variable ``var`` of a relation be substituted by an element of degree ``e``?"""
    if e.total == 0:
        return not E.is_odd(var)
    if E.is_placeholder(var):
        return True
    if any(E.is_placeholder(v) for v, _ in e):
        return False
    return e.parity == (1 if E.is_odd(var) else 0)


def unit_reductions(rel: JordanPoly) -> list[JordanPoly]:
    """``rel`` together with every nonzero result of setting some unit-capable
    variables to 1; each result is multilinear in its remaining variables."""
    vs = sorted(rel.variables(), key=E.var_key)
    capable = [v for v in vs if not E.is_odd(v)]
    out = []
    seen = set()
    for r in range(len(capable) + 1):
        for subset in itertools.combinations(capable, r):
            q = substitute(rel, {v: JordanPoly.one() for v in subset}) if subset else rel
            if q and q.variables() and q not in seen:
                seen.add(q)
                out.append(q)
            elif q and not q.variables():
                raise ValueError(f"relation {rel} forces a nonzero scalar to vanish")
    return out


def substitution_instances(rel: JordanPoly, d: MultiDegree):
    """Yield ``(variables, parts)``: each parity-legal way to spread ``d`` over
    the variables of the multilinear relation ``rel``, every part nonzero."""
    vs = sorted(rel.variables(), key=E.var_key)
    for parts in ordered_splits(d, len(vs)):
        if all(accepts(v, e) for v, e in zip(vs, parts)):
            yield vs, parts


def closure_span(relations: Iterable[JordanPoly], d: MultiDegree, _cache=None) -> Echelon:
    """Span of all ideal-closed substitution instances of ``relations`` at ``d``.

    Works directly in monomial coordinates (column ``i`` is ``monomials(d)[i]``),
    enumerating monomial substitutions and one-hole contexts.  This is the
    slow reference route; :mod:`jgpi.tideal` computes the same spaces through
    the relatively free algebra.
    """
    d = MultiDegree(d)
    rels = []
    for r in relations:
        for q in unit_reductions(fully_linearize(r) if not r.multidegree().is_multilinear() else r):
            rels.append(q)
    cache = {} if _cache is None else _cache
    return _closure(tuple(rels), d, cache)


def _closure(rels, d, cache) -> Echelon:
    if d in cache:
        return cache[d]
    mons = monomials(d)
    index = {m: i for i, m in enumerate(mons)}
    ech = Echelon()
    for rel in rels:
        for vs, parts in substitution_instances(rel, d):
            for choice in itertools.product(*(monomials(e) for e in parts)):
                img = substitute(rel, {v: JordanPoly.monomial(m) for v, m in zip(vs, choice)})
                ech.add({index[m]: c for m, c in img.terms.items()})
    for e in d.sub_degrees():
        if e.total == 0 or e == d:
            continue
        sub = _closure(rels, e, cache)
        if not sub.rank:
            continue
        emons = monomials(e)
        others = monomials(d - e)
        for row in list(sub.rows.values()):
            for b in others:
                v: dict = {}
                for i, c in row.items():
                    k = index[mul_mono(emons[i], b)]
                    v[k] = v.get(k, 0) + c
                ech.add({k: c for k, c in v.items() if c})
    cache[d] = ech
    return ech


def poly_to_vector(p: JordanPoly, d: MultiDegree) -> dict:
    index = {m: i for i, m in enumerate(monomials(d))}
    try:
        return {index[m]: c for m, c in p.terms.items()}
    except KeyError:
        raise ValueError(f"polynomial {p} has terms outside multidegree {d}") from None


def vector_to_poly(v: Mapping, d: MultiDegree) -> JordanPoly:
    mons = monomials(d)
    return JordanPoly({mons[i]: c for i, c in v.items()})


class ComponentBasis:
    """A multidegree component as a quotient of the free nonassociative one.

    ``monomials`` are the coordinates; ``relations`` span the part that is
    factored out (empty for the free nonassociative algebra); ``rows`` span
    the represented subspace modulo the relations.
    """

    def __init__(self, degree, monomials, relations: Echelon, rows, modulus: str):
        self.degree = degree
        self.monomials = tuple(monomials)
        self.relations = relations
        self.modulus = modulus
        ech = Echelon()
        for r in relations.rows.values():
            ech.add(r)
        kept = []
        for r in rows:
            if ech.add(r):
                kept.append(dict(r))
        self.rows = kept
        self._echelon = ech

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Mapping) -> bool:
        return self._echelon.contains(v)

    def contains_poly(self, p: JordanPoly) -> bool:
        return self.contains(poly_to_vector(p, self.degree))

    def row_polys(self) -> list[JordanPoly]:
        return [vector_to_poly(r, self.degree) for r in self.rows]

    def to_json(self) -> dict:
        cols = sorted({k for r in self.rows for k in r})
        return {
            "degree": str(self.degree),
            "modulus": self.modulus,
            "monomials": [mono_str(m) for m in self.monomials],
            "rows": [[fraction_str(r.get(i, 0)) for i in range(len(self.monomials))] for r in self.rows],
            "dim": self.dim,
            "support": cols,
        }


MODULI = ("free-nonassoc", "free-jordan", "relatively-free-L")


def component_basis(d, modulus: str = "free-nonassoc", gens=None, bound: int | None = None) -> ComponentBasis:
    """Monomial basis of a component, optionally modulo Jordan relations or a T-ideal.

    For ``relatively-free-L`` a generator set (see :mod:`jgpi.tideal`) is required.
    """
    d = MultiDegree(d)
    check_degree(d.total, bound)
    mons = monomials(d)
    if modulus == "free-nonassoc":
        rel = Echelon()
    elif modulus == "free-jordan":
        rel = closure_span([jordan_identity()], d)
    elif modulus == "relatively-free-L":
        if gens is None:
            raise ValueError("relatively-free-L needs a generator set")
        from .tideal import ideal_component
        ic = ideal_component(gens, d)
        rel = Echelon()
        for r in ic.subspace.relations.rows.values():
            rel.add(r)
        for r in ic.subspace.rows:
            rel.add(r)
    else:
        raise ValueError(f"unknown modulus {modulus!r}; expected one of {MODULI}")
    rows = [{i: Fraction(1)} for i in range(len(mons)) if i not in rel.rows]
    return ComponentBasis(d, mons, rel, rows, modulus)


def degree_window(max_total: int, min_total: int = 1, max_odd_vars: int | None = None,
                  even: bool = True, odd: bool = True):
    """Canonical multidegrees (exponents weakly decreasing in each kind) up to ``max_total``.

    Any multidegree is a parity-preserving renaming of exactly one of these.
    """
    def partitions(n, largest=None):
        if n == 0:
            yield ()
            return
        largest = n if largest is None else largest
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    out = []
    for total in range(min_total, max_total + 1):
        for a in range(total + 1):
            b = total - a
            if (a and not even) or (b and not odd):
                continue
            for py in partitions(a):
                for pz in partitions(b):
                    if max_odd_vars is not None and len(pz) > max_odd_vars:
                        continue
                    data = {f"y{i + 1}": k for i, k in enumerate(py)}
                    data.update({f"z{i + 1}": k for i, k in enumerate(pz)})
                    out.append(MultiDegree(data))
    return out
