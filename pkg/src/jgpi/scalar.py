"""Reduction of scalar-graded identities to weak identities.

Modulo ``(y, x1, x2)`` every even variable is central and associates with
everything, so it can be pulled out of any monomial.  What is left is a
polynomial in odd variables, and modulo the same ideal products of two odd
variables are central as well, so each odd monomial becomes either a
product of pairs ``(z_i z_j)`` or one odd variable times such a product.
Those shapes are exactly the pair products handled by :mod:`jgpi.tableaux`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import expr as E
from .free import UNIT, JordanPoly, MultiDegree, mul_mono, product
from .models import BnElement, is_graded_identity_bn_scalar, is_weak_identity_bn
from .polys import CommPoly
from .tableaux import PairProduct, phi_product
from .tideal import is_member, scalar_b


class ReductionError(RuntimeError):
    pass


@dataclass
class ScalarFactoredForm:
    even_exponents: dict
    odd_part: JordanPoly

    def even_monomial(self) -> JordanPoly:
        names = [v for v, k in sorted(self.even_exponents.items(), key=lambda t: E.var_key(t[0]))
                 for _ in range(k)]
        return product(JordanPoly.var(v) for v in names)

    def reassemble(self) -> JordanPoly:
        return self.even_monomial() * self.odd_part

    def __str__(self):
        pre = str(MultiDegree(self.even_exponents))
        return f"{pre} * [{self.odd_part}]"


def _strip(m):
    """``(even leaves, remaining monomial)`` of a monomial."""
    if m == UNIT:
        return [], UNIT
    if isinstance(m, str):
        return ([m], UNIT) if E.is_even(m) else ([], m)
    ea, ra = _strip(m[0])
    eb, rb = _strip(m[1])
    return ea + eb, mul_mono(ra, rb)


def _homogeneous(p: JordanPoly) -> MultiDegree:
    if not p:
        return MultiDegree()
    try:
        return p.multidegree()
    except ValueError:
        raise ValueError("factor_scalar needs a multihomogeneous polynomial") from None


def factor_scalar(p: JordanPoly, verify: bool = True) -> ScalarFactoredForm:
    """Write ``p`` as ``y^n * g(z)`` modulo the ideal of ``(y, x1, x2)``."""
    if isinstance(p, str):
        p = JordanPoly.parse(p)
    d = _homogeneous(p)
    for v, _ in d:
        if E.is_placeholder(v):
            raise ValueError("instantiate placeholders first")
    odd: dict = {}
    for m, c in p.terms.items():
        _, rest = _strip(m)
        odd[rest] = odd.get(rest, 0) + c
    form = ScalarFactoredForm(dict(d.even_part()), JordanPoly(odd))
    if verify and p and not is_member(p - form.reassemble(), scalar_b()):
        raise ReductionError(f"factored form of {p} is not congruent to it")
    return form


def graded_identity_to_weak(p: JordanPoly) -> JordanPoly:
    return factor_scalar(p).odd_part


# -- pair products ---------------------------------------------------------------

def _decompose(m):
    """``(bare odd variable or None, list of pairs)`` for an odd monomial."""
    if isinstance(m, str):
        if not E.is_odd(m):
            raise ValueError(f"m_graded_decompose expects odd variables only, got {m}")
        return m, []
    ba, pa = _decompose(m[0])
    bb, pb = _decompose(m[1])
    if ba is not None and bb is not None:
        return None, pa + pb + [(ba, bb)]
    return (ba if ba is not None else bb), pa + pb


def pair_product_poly(bare, pairs) -> JordanPoly:
    """``z_bare * (z_i z_j) * ...`` left normed (variables given by name)."""
    factors = [JordanPoly.var(bare)] if bare is not None else []
    factors += [JordanPoly.var(a) * JordanPoly.var(b) for a, b in sorted(pairs, key=lambda t: (E.var_key(t[0]), E.var_key(t[1])))]
    return product(factors)


@dataclass
class MDecomposition:
    even: dict  # (None, pairs) -> coeff
    odd: dict   # (bare, pairs) -> coeff

    def terms(self):
        for key, c in list(self.even.items()) + list(self.odd.items()):
            yield c, key

    def poly(self) -> JordanPoly:
        total = JordanPoly()
        for c, (bare, pairs) in self.terms():
            total = total + pair_product_poly(bare, pairs) * c
        return total

    def pair_products(self) -> list[tuple[Fraction, PairProduct]]:
        """The terms as tableau-side pair products (``z_i`` becomes index ``i``)."""
        out = []
        for c, (bare, pairs) in self.terms():
            out.append((c, PairProduct(tuple((E.var_index(a), E.var_index(b)) for a, b in pairs),
                                       None if bare is None else E.var_index(bare))))
        return out


def m_graded_decompose(p: JordanPoly, verify: bool = True) -> MDecomposition:
    """Rewrite an odd-variable polynomial as pair products modulo ``(y, x1, x2)``."""
    if isinstance(p, str):
        p = JordanPoly.parse(p)
    even: dict = {}
    odd: dict = {}
    for m, c in p.terms.items():
        if m == UNIT:
            raise ValueError("m_graded_decompose expects odd variables only")
        bare, pairs = _decompose(m)
        pairs = tuple(sorted((tuple(sorted(pr, key=E.var_key)) for pr in pairs),
                             key=lambda t: (E.var_key(t[0]), E.var_key(t[1]))))
        target = even if bare is None else odd
        key = (bare, pairs)
        s = target.get(key, 0) + c
        if s:
            target[key] = s
        else:
            target.pop(key, None)
    dec = MDecomposition(even, odd)
    if verify and p and not is_member(p - dec.poly(), scalar_b()):
        raise ReductionError(f"pair-product form of {p} is not congruent to it")
    return dec


def tableau_value(dec: MDecomposition, n: int) -> BnElement:
    """Value of the decomposition in B_n computed on the tableau side.

    The tableau indeterminate ``t_i_j`` is renamed to the generic coordinate
    ``t_z<i>_<j>`` used by :class:`~jgpi.models.BnScalar`.
    """
    def rename(poly: CommPoly) -> CommPoly:
        out: dict = {}
        for mono, c in poly.terms.items():
            key = tuple(sorted(f"t_z{x.split('_')[1]}_{x.split('_')[2]}" for x in mono))
            out[key] = out.get(key, 0) + c
        return CommPoly(out)

    scalar = CommPoly()
    vector = [CommPoly() for _ in range(n)]
    for c, pp in dec.pair_products():
        val = phi_product(pp, n)
        if val.is_vector:
            for j in range(n):
                vector[j] = vector[j] + rename(val.vector[j]) * c
        else:
            scalar = scalar + rename(val.scalar) * c
    return BnElement(scalar, vector)


def reduction_agrees(p: JordanPoly, n: int | None, gram="identity") -> bool:
    """Is the graded verdict on ``p`` the weak verdict on its odd part?"""
    g = graded_identity_to_weak(p)
    return is_graded_identity_bn_scalar(p, n, gram) == is_weak_identity_bn(g, n, gram)
