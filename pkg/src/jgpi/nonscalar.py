"""Associators and the spanning set A for the nonscalar grading of J2.

Everything is decided in the relatively free algebra ``L`` of the nonscalar
generators (see :mod:`jgpi.tideal`): an element "vanishes" when its image
in ``L`` is zero, and two elements are "equal" when their images agree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import expr as E
from .free import (JordanPoly, MultiDegree, check_degree, long_associator, multihomogeneous_components,
                   product)
from .linalg import Echelon, as_fraction, dependencies, fraction_str, solve
from .models import J2Element, J2Nonscalar
from .polys import ONE, ZERO
from .tideal import engine, evaluator, nonscalar_j2


class VerificationError(RuntimeError):
    """A statement that must hold in ``L`` failed at the tested multidegree."""


def _gens():
    return nonscalar_j2()


def _L():
    return engine(_gens())


def _reduce(p: JordanPoly, d: MultiDegree) -> dict:
    return _L().reduce(p).get(d, {})


def _multiset(d: MultiDegree) -> list[str]:
    return [v for v, k in d for _ in range(k)]


# -- proper associators ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class ProperAssociator:
    """Left normed associator ``(x1, x2, ..., x_{2k+1})`` of variables."""

    args: tuple

    def __post_init__(self):
        if len(self.args) < 3 or len(self.args) % 2 == 0:
            raise ValueError("a proper associator has an odd number >= 3 of arguments")

    @property
    def degree(self) -> MultiDegree:
        return MultiDegree.of(*self.args)

    @property
    def parity(self) -> int:
        return sum(E.is_odd(v) for v in self.args) % 2

    def poly(self) -> JordanPoly:
        return long_associator(*(JordanPoly.var(v) for v in self.args))

    def sort_key(self):
        return tuple(E.var_key(v) for v in self.args)

    def __str__(self):
        return "(" + ",".join(self.args) + ")"


def enumerate_proper_associators(d) -> list[ProperAssociator]:
    """All orderings of the variables of ``d`` as left normed associators."""
    d = MultiDegree(d)
    if d.total < 3 or d.total % 2 == 0:
        raise ValueError(f"no proper associators of even or too small degree ({d})")
    check_degree(d.total)
    items = sorted(_multiset(d), key=E.var_key)
    seen = set()
    out = []
    for perm in itertools.permutations(items):
        if perm not in seen:
            seen.add(perm)
            out.append(ProperAssociator(perm))
    return sorted(out, key=ProperAssociator.sort_key)


ZERO_BOTH = "0both"
INDEPENDENT = "independent"
ONE_ZERO = "one-zero"


def associator_relation(u1: ProperAssociator, u2: ProperAssociator):
    """``+1``/``-1`` when ``u1 = +-u2`` in L, ``"0both"`` when both vanish.

    ``"one-zero"`` reports that exactly one of them vanishes and
    ``"independent"`` that both are nonzero and not proportional by +-1.
    """
    d = u1.degree
    if u2.degree != d:
        raise ValueError(f"multidegree mismatch: {u1} vs {u2}")
    r1, r2 = _assoc_image(u1), _assoc_image(u2)
    if not r1 and not r2:
        return ZERO_BOTH
    if not r1 or not r2:
        return ONE_ZERO
    if r1 == r2:
        return 1
    if r1 == {k: -c for k, c in r2.items()}:
        return -1
    return INDEPENDENT


@lru_cache(maxsize=None)
def _assoc_image(u: ProperAssociator) -> dict:
    return _reduce(u.poly(), u.degree)


def is_zero_in_L(u: ProperAssociator) -> bool:
    return not _assoc_image(u)


@lru_cache(maxsize=None)
def choose_omega0(d) -> ProperAssociator | None:
    """Lexicographically least proper associator of multidegree ``d`` that is nonzero in L."""
    d = MultiDegree(d)
    if d.total < 3 or d.total % 2 == 0:
        return None
    for u in enumerate_proper_associators(d):
        if not is_zero_in_L(u):
            return u
    return None


def j2_sign_value(u: ProperAssociator) -> J2Element:
    """Evaluate ``u`` in J2 with ``a`` for every even and ``b`` for every odd argument."""
    a = J2Element(ZERO, ONE, ZERO)
    b = J2Element(ZERO, ZERO, ONE)
    assign = {v: (b if E.is_odd(v) else a) for v in u.args}
    return J2Nonscalar().evaluate(u.poly(), assign)


def j2_sign(u: ProperAssociator) -> int:
    """``+-1`` with value ``+-a`` (even u) or ``+-b`` (odd u); 0 if the value is zero.

    Raises :class:`VerificationError` when the value has any other shape.
    """
    x = j2_sign_value(u)
    coords = [c.constant() if c.is_constant() else None for c in x.coords()]
    want = 2 if u.parity else 1
    if not x:
        return 0
    if None in coords or any(coords[i] for i in range(3) if i != want) or coords[want] not in (1, -1):
        raise VerificationError(f"J2 value of {u} is {x}")
    return int(coords[want])


# -- the set A ------------------------------------------------------------------

@dataclass(frozen=True)
class AElement:
    kind: str  # "i", "ii", "iii", "iv"
    even_prefix: tuple = ()
    odd_factors: tuple = ()
    assoc: ProperAssociator | None = None
    lead_odd: str | None = None

    @property
    def prefix_degree(self) -> MultiDegree:
        return MultiDegree.of(*self.even_prefix)

    @property
    def degree(self) -> MultiDegree:
        names = list(self.even_prefix) + list(self.odd_factors)
        if self.assoc is not None:
            names += list(self.assoc.args)
        if self.lead_odd is not None:
            names.append(self.lead_odd)
        return MultiDegree.of(*names)

    def core(self) -> JordanPoly | None:
        if self.kind == "i":
            return product(JordanPoly.var(z) for z in self.odd_factors) if self.odd_factors else None
        u = self.assoc.poly()
        if self.kind == "iii":
            return JordanPoly.var(self.lead_odd) * u
        return u

    def poly(self) -> JordanPoly:
        pre = product(JordanPoly.var(y) for y in self.even_prefix) if self.even_prefix else None
        core = self.core()
        if pre is None:
            return core
        if core is None:
            return pre
        return pre * core

    def __str__(self):
        pre = "*".join(self.even_prefix)
        if self.kind == "i":
            core = "*".join(self.odd_factors)
        elif self.kind == "iii":
            core = f"{self.lead_odd}*{self.assoc}"
        else:
            core = str(self.assoc)
        if pre and core:
            pre = f"({pre})" if len(self.even_prefix) > 1 else pre
            core = f"({core})" if self.kind == "i" and len(self.odd_factors) > 1 or self.kind == "iii" else core
            return f"{pre}*{core}"
        return pre or core


def enumerate_A_literal(d) -> list[AElement]:
    """All elements of types (i)-(iv) of multidegree ``d`` (Omega0 representatives)."""
    d = MultiDegree(d)
    check_degree(d.total)
    ev, od = d.even_part(), d.odd_part()
    out = []
    out.append(AElement("i", tuple(_multiset(ev)), tuple(_multiset(od))))
    for pre in ev.sub_degrees():
        rest = d - pre
        prefix = tuple(_multiset(pre))
        if rest.total >= 3 and rest.total % 2:
            u = choose_omega0(rest)
            if u is not None:
                out.append(AElement("ii" if rest.parity else "iv", prefix, (), u))
        for z, _ in od:
            inner = rest - MultiDegree.of(z)
            if inner.total >= 3 and inner.total % 2 and inner.parity == 1:
                u = choose_omega0(inner)
                if u is not None:
                    out.append(AElement("iii", prefix, (), u, z))
    order = {"i": 0, "ii": 1, "iii": 2, "iv": 3}
    out.sort(key=lambda a: (order[a.kind], tuple(E.var_key(v) for v in a.even_prefix),
                            a.lead_odd and E.var_key(a.lead_odd) or (), a.assoc and a.assoc.sort_key() or ()))
    return out


@dataclass
class ASet:
    """The set A at one multidegree.

    ``elements`` is the literal enumeration; ``kept`` indexes the elements
    retained after dropping those that are zero in L or equal (up to sign)
    in L to an earlier element.  ``duplicates`` maps a dropped index to
    ``(kept index, sign)``.
    """

    degree: MultiDegree
    elements: list
    kept: list
    duplicates: dict = field(default_factory=dict)
    vanishing: list = field(default_factory=list)

    @property
    def basis(self) -> list[AElement]:
        return [self.elements[i] for i in self.kept]


@lru_cache(maxsize=None)
def enumerate_A(d) -> ASet:
    d = MultiDegree(d)
    elems = enumerate_A_literal(d)
    kept, dup, zero = [], {}, []
    reds = []
    for i, a in enumerate(elems):
        r = _reduce(a.poly(), d)
        if not r:
            zero.append(i)
            continue
        neg = {k: -c for k, c in r.items()}
        for j, rj in zip(kept, reds):
            if r == rj:
                dup[i] = (j, 1)
                break
            if neg == rj:
                dup[i] = (j, -1)
                break
        else:
            kept.append(i)
            reds.append(r)
    return ASet(d, elems, kept, dup, zero)


@dataclass
class ASpanReport:
    degree: MultiDegree
    size: int
    kept: int
    dim_L: int
    rank_mod_I: int
    rank_mod_T: int

    @property
    def spans(self) -> bool:
        return self.rank_mod_I == self.dim_L

    @property
    def independent_mod_T(self) -> bool:
        return self.rank_mod_T == self.kept

    def to_json(self):
        return {"degree": str(self.degree), "size": self.size, "kept": self.kept, "dim_L": self.dim_L,
                "rank_mod_I": self.rank_mod_I, "rank_mod_T": self.rank_mod_T,
                "spans": self.spans, "independent_mod_T": self.independent_mod_T}


def check_A(d) -> ASpanReport:
    """Spanning of L by A and independence of A modulo the identities of J2."""
    d = MultiDegree(d)
    aset = enumerate_A(d)
    q = _L()
    ech = Echelon()
    for a in aset.elements:
        ech.add(_reduce(a.poly(), d))
    ev = evaluator(J2Nonscalar(), d)
    vecs = []
    for a in aset.basis:
        v: dict = {}
        for m, c in a.poly().terms.items():
            for k, x in ev.vector(m).items():
                s = v.get(k, 0) + c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        vecs.append(v)
    rank_t = len(vecs) - len(dependencies(vecs))
    return ASpanReport(d, len(aset.elements), len(aset.kept), q.dim(d), ech.rank, rank_t)


@dataclass
class NormalForm:
    degree: MultiDegree
    terms: list  # of (Fraction, AElement)

    def poly(self) -> JordanPoly:
        total = JordanPoly()
        for c, a in self.terms:
            total = total + a.poly() * c
        return total

    def to_json(self) -> list:
        return [{"element": str(a), "coeff": fraction_str(c)} for c, a in self.terms]


def normal_form(p: JordanPoly) -> dict[MultiDegree, NormalForm]:
    """Coordinates of each multihomogeneous component of ``p`` over A, modulo I."""
    if isinstance(p, str):
        p = JordanPoly.parse(p)
    out = {}
    for d, part in multihomogeneous_components(p).items():
        check_degree(d.total)
        aset = enumerate_A(d)
        basis = aset.basis
        vecs = [_reduce(a.poly(), d) for a in basis]
        coeffs = solve(vecs, _reduce(part, d))
        if coeffs is None:
            raise VerificationError(f"{part} is not in the span of A at {d}")
        out[d] = NormalForm(d, [(as_fraction(coeffs[i]), basis[i]) for i in sorted(coeffs)])
    return out


def normal_form_json(forms: dict) -> list:
    return [{"degree": str(d), "terms": nf.to_json()} for d, nf in sorted(forms.items(), key=lambda t: t[0].key())]


# -- similarity -----------------------------------------------------------------

@dataclass
class SimilarityClass:
    prefix: MultiDegree
    members: list


def similarity_classes(elems) -> list[SimilarityClass]:
    """Group A-elements by the even variables outside their associators."""
    groups: dict = {}
    for a in elems:
        groups.setdefault(a.prefix_degree, []).append(a)
    return [SimilarityClass(k, v) for k, v in sorted(groups.items(), key=lambda t: t[0].key())]
