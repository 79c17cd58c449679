"""Exact sparse linear algebra over the rationals.

Vectors are plain ``dict`` objects mapping a column key to a nonzero
rational (``Fraction`` or gmpy2 ``mpq``; the two compare and hash alike).
Internally everything is computed with ``mpq``, which is several times
faster than ``Fraction``.  Column keys may be any hashable, mutually
comparable values (ints, tuples of strings, ...); the smallest key present in
a row is its pivot.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq

ONE = mpq(1)

Vector = dict


def as_fraction(c) -> Fraction:
    """Exact ``Fraction`` with plain int parts (``Fraction(mpq)`` keeps mpz parts)."""
    if type(c) is Fraction or type(c) is int:
        return Fraction(c)
    num = getattr(c, "numerator", None)
    if num is None:
        return Fraction(c)
    return Fraction(int(num), int(c.denominator))


def vec(items: Mapping | Iterable) -> dict:
    """Normalize a mapping or (key, value) pairs into a sparse vector."""
    if isinstance(items, Mapping):
        items = items.items()
    out: dict = {}
    for k, c in items:
        c = as_fraction(c)
        if c:
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def axpy(target: dict, coeff, source: Mapping) -> None:
    """``target += coeff * source`` in place, dropping zeros."""
    if not coeff:
        return
    for k, c in source.items():
        s = target.get(k, 0) + coeff * c
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def scale(v: Mapping, c) -> dict:
    c = as_fraction(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class Echelon:
    """Incremental row echelon form with optional combination tracking.

    Every stored row is normalized so that its pivot (smallest key) has
    coefficient 1, and no two rows share a pivot.  Reducing a vector removes
    every pivot column from it, so the remainder lives on free columns only.

    With ``track=True`` each row remembers which inserted vectors (by tag)
    it is a combination of; :meth:`reduce` then also returns the combination
    that was subtracted.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v: Mapping, combo: Mapping | None = None):
        """Return ``(remainder, combo)``; ``combo`` is ``None`` unless tracking.

        The invariant is ``remainder = sum(combo[t] * inserted[t])`` where the
        passed-in ``combo`` stands for ``v`` itself (e.g. ``{tag_of_v: 1}``).
        Starting from an empty combo gives ``remainder = v + sum(...)``.
        """
        v = {k: mpq(c) for k, c in v.items()}
        cmb = dict(combo) if (self.track and combo is not None) else ({} if self.track else None)
        rows = self.rows
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            row = rows[k]
            for kk, x in row.items():
                s = v.get(kk, 0) - c * x
                if s:
                    if kk not in v and kk in rows:
                        heapq.heappush(heap, kk)
                    v[kk] = s
                else:
                    v.pop(kk, None)
            if cmb is not None:
                axpy(cmb, -c, self.combos[k])
        return v, cmb

    def add(self, v: Mapping, tag: Hashable = None) -> bool:
        """Insert ``v``; return True if it was independent of the stored rows."""
        start = {tag: ONE} if self.track else None
        rem, cmb = self.reduce(v, start)
        if not rem:
            return False
        p = min(rem)
        inv = 1 / rem[p]
        self.rows[p] = {k: c * inv for k, c in rem.items()}
        if self.track:
            self.combos[p] = {k: c * inv for k, c in cmb.items()}
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)[0]

    def extend(self, vectors: Iterable[Mapping]) -> int:
        n = 0
        for v in vectors:
            n += self.add(v)
        return n


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    e.extend(vectors)
    return e.rank


def dependencies(vectors: Sequence[Mapping]) -> list[dict]:
    """Basis of ``{c : sum c[i] * vectors[i] = 0}`` as sparse dicts over indices."""
    e = Echelon(track=True)
    out = []
    for i, v in enumerate(vectors):
        rem, cmb = e.reduce(v, {i: ONE})
        if rem:
            e.add(v, i)
        else:
            out.append(cmb)
    return out


def solve(vectors: Sequence[Mapping], target: Mapping) -> dict | None:
    """Coefficients ``c`` (over indices) with ``sum c[i] vectors[i] == target``.

    Returns ``None`` when ``target`` is outside the span.
    """
    e = Echelon(track=True)
    for i, v in enumerate(vectors):
        e.add(v, i)
    rem, cmb = e.reduce(target, {})
    if rem:
        return None
    return {i: -c for i, c in cmb.items() if c}


def combine(vectors: Sequence[Mapping], coeffs: Mapping) -> dict:
    out: dict = {}
    for i, c in coeffs.items():
        axpy(out, c, vectors[i])
    return out


def fraction_str(c: Fraction) -> str:
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
