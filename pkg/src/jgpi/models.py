"""Graded models and generic evaluation.

Two models are provided:

* ``J2Nonscalar`` -- symmetric 2x2 matrices in the basis ``I, a, b`` with
  ``a^2 = b^2 = I`` and ``a*b = 0``; even part ``span(I, a)``, odd part
  ``span(b)``.
* ``BnScalar`` -- scalar plus vector in ``K + V_n`` with the product
  ``(x+u)(y+v) = (xy + <u,v>) + (xv + yu)``; even part the scalars, odd part
  ``V_n``.

A polynomial is an identity iff its value on *generic* elements (coordinates
are fresh indeterminates) vanishes, which is exact over an infinite field.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Sequence

from . import expr as E
from .free import UNIT, JordanPoly, leaves
from .linalg import as_fraction, fraction_str
from .polys import ONE, ZERO, CommPoly


class ParityError(ValueError):
    pass


def _cp(x) -> CommPoly:
    return x if isinstance(x, CommPoly) else CommPoly.const(as_fraction(x))


# -- elements -----------------------------------------------------------------

class J2Element:
    """``cI * I + cA * a + cB * b`` with polynomial coordinates."""

    __slots__ = ("cI", "cA", "cB")

    def __init__(self, cI=ZERO, cA=ZERO, cB=ZERO):
        self.cI, self.cA, self.cB = _cp(cI), _cp(cA), _cp(cB)

    def coords(self):
        return (self.cI, self.cA, self.cB)

    def __mul__(self, o):
        if not isinstance(o, J2Element):
            return J2Element(self.cI * o, self.cA * o, self.cB * o)
        a1, b1, g1 = self.coords()
        a2, b2, g2 = o.coords()
        return J2Element(a1 * a2 + b1 * b2 + g1 * g2, a1 * b2 + a2 * b1, a1 * g2 + a2 * g1)

    def __rmul__(self, c):
        return J2Element(self.cI * c, self.cA * c, self.cB * c)

    def __add__(self, o):
        return J2Element(self.cI + o.cI, self.cA + o.cA, self.cB + o.cB)

    def __sub__(self, o):
        return J2Element(self.cI - o.cI, self.cA - o.cA, self.cB - o.cB)

    def __neg__(self):
        return J2Element(-self.cI, -self.cA, -self.cB)

    def __eq__(self, o):
        return isinstance(o, J2Element) and self.coords() == o.coords()

    def __bool__(self):
        return any(self.coords())

    def map(self, f):
        return J2Element(*(f(c) for c in self.coords()))

    def __repr__(self):
        return f"J2Element({self.cI}, {self.cA}, {self.cB})"


class BnElement:
    """``scalar + sum vector[j] e_j``; the bilinear form lives in the model."""

    __slots__ = ("scalar", "vector")

    def __init__(self, scalar=ZERO, vector: Sequence = ()):
        self.scalar = _cp(scalar)
        self.vector = tuple(_cp(v) for v in vector)

    def coords(self):
        return (self.scalar,) + self.vector

    def __add__(self, o):
        return BnElement(self.scalar + o.scalar, [a + b for a, b in zip(self.vector, o.vector)])

    def __sub__(self, o):
        return BnElement(self.scalar - o.scalar, [a - b for a, b in zip(self.vector, o.vector)])

    def __neg__(self):
        return BnElement(-self.scalar, [-a for a in self.vector])

    def __mul__(self, c):
        # scalar multiplication only; the algebra product needs the form
        return BnElement(self.scalar * c, [a * c for a in self.vector])

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, BnElement) and self.coords() == o.coords()

    def __bool__(self):
        return any(self.coords())

    def map(self, f):
        return BnElement(f(self.scalar), [f(v) for v in self.vector])

    def __repr__(self):
        return f"BnElement({self.scalar}, [{', '.join(map(str, self.vector))}])"


def element_vector(x) -> dict:
    """Sparse vector of an element: keys ``(coordinate, monomial)``."""
    out = {}
    for i, c in enumerate(x.coords()):
        for m, v in c.terms.items():
            out[(i, m)] = v
    return out


# -- models -------------------------------------------------------------------

class Model:
    name = "model"

    def one(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def generic(self, var: str):
        raise NotImplementedError

    def check(self, var: str, x) -> None:
        """Raise :class:`ParityError` unless ``x`` lies in the part matching ``var``."""
        raise NotImplementedError

    def describe(self, x) -> dict:
        raise NotImplementedError

    def evaluate(self, p: JordanPoly, assign: Mapping | None = None, cache: dict | None = None):
        """Image of ``p``; unassigned variables get generic values when ``assign`` is None."""
        for v in p.variables():
            if E.is_placeholder(v):
                raise ParityError(f"placeholder {v} must be instantiated before evaluation")
        if assign is not None:
            missing = p.variables() - set(assign)
            if missing:
                raise KeyError(f"unassigned variables: {sorted(missing, key=E.var_key)}")
            for v in p.variables():
                self.check(v, assign[v])
        cache = {} if cache is None else cache

        def ev(m):
            r = cache.get(m)
            if r is not None:
                return r
            if m == UNIT:
                r = self.one()
            elif isinstance(m, str):
                r = assign[m] if assign is not None else self.generic(m)
            else:
                r = self.mul(ev(m[0]), ev(m[1]))
            cache[m] = r
            return r

        total = self.zero()
        for m, c in p.terms.items():
            total = total + ev(m) * c
        return total

    def zero(self):
        return self.one() * 0

    def is_identity(self, p: JordanPoly) -> bool:
        return not self.evaluate(p)


class J2Nonscalar(Model):
    name = "j2-nonscalar"

    def one(self):
        return J2Element(ONE, ZERO, ZERO)

    def mul(self, x, y):
        return x * y

    def generic(self, var):
        if E.is_even(var):
            return J2Element(CommPoly.gen(f"a_{var}"), CommPoly.gen(f"b_{var}"), ZERO)
        if E.is_odd(var):
            return J2Element(ZERO, ZERO, CommPoly.gen(f"c_{var}"))
        raise ParityError(f"no parity for {var}")

    def check(self, var, x):
        if not isinstance(x, J2Element):
            raise TypeError("J2 assignments must be J2Element values")
        if E.is_even(var) and x.cB:
            raise ParityError(f"{var} is even but was given a b-component")
        if E.is_odd(var) and (x.cI or x.cA):
            raise ParityError(f"{var} is odd but was given an I or a component")

    def describe(self, x):
        return {"I": str(x.cI), "a": str(x.cA), "b": str(x.cB)}


def parse_gram(spec, n: int | None = None):
    """``"identity"``, ``"symbolic"`` or a square symmetric rational matrix."""
    if spec in (None, "identity", "symbolic"):
        return spec or "identity"
    if isinstance(spec, Mapping):
        n = spec.get("n", n)
        spec = spec["entries"]
    rows = [[Fraction(str(c)) for c in row] for row in spec]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("gram matrix must be square")
    if n is not None and size != n:
        raise ValueError(f"gram matrix has size {size}, expected {n}")
    for i in range(size):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ValueError("gram matrix must be symmetric")
    return tuple(tuple(r) for r in rows)


class BnScalar(Model):
    """``B_n`` with the scalar grading.

    ``n=None`` stands for the infinite dimensional algebra ``B``; call
    :meth:`with_dimension` to get a finite model large enough for a given
    degree.
    """

    def __init__(self, n: int | None = None, gram="identity"):
        if n is not None and n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.gram = parse_gram(gram, n)
        if isinstance(self.gram, tuple) and n is None:
            self.n = len(self.gram)
        self.name = f"bn-scalar({n if n is not None else 'inf'})"

    def with_dimension(self, degree: int) -> "BnScalar":
        if self.n is not None:
            return self
        return BnScalar(max(1, degree), self.gram)

    def _need_n(self):
        if self.n is None:
            raise ValueError("infinite model: call with_dimension() first")
        return self.n

    def one(self):
        return BnElement(ONE, [ZERO] * self._need_n())

    def form(self, u, v) -> CommPoly:
        n = self._need_n()
        g = self.gram
        total = ZERO
        if g == "identity":
            for j in range(n):
                if u[j] and v[j]:
                    total = total + u[j] * v[j]
        elif g == "symbolic":
            for j in range(n):
                for k in range(n):
                    if u[j] and v[k]:
                        a, b = min(j, k) + 1, max(j, k) + 1
                        total = total + CommPoly.gen(f"g_{a}_{b}") * u[j] * v[k]
        else:
            for j in range(n):
                for k in range(n):
                    if g[j][k] and u[j] and v[k]:
                        total = total + u[j] * v[k] * g[j][k]
        return total

    def mul(self, x, y):
        s = x.scalar * y.scalar + self.form(x.vector, y.vector)
        vec = []
        for a, b in zip(x.vector, y.vector):
            t = ZERO
            if x.scalar and b:
                t = t + x.scalar * b
            if y.scalar and a:
                t = t + y.scalar * a
            vec.append(t)
        return BnElement(s, vec)

    def generic(self, var):
        n = self._need_n()
        if E.is_even(var):
            return BnElement(CommPoly.gen(f"s_{var}"), [ZERO] * n)
        if E.is_odd(var):
            return BnElement(ZERO, [CommPoly.gen(f"t_{var}_{j + 1}") for j in range(n)])
        raise ParityError(f"no parity for {var}")

    def check(self, var, x):
        if not isinstance(x, BnElement) or len(x.vector) != self._need_n():
            raise ValueError(f"assignment for {var} must be a BnElement of dimension {self.n}")
        if E.is_even(var) and any(x.vector):
            raise ParityError(f"{var} is even but was given a vector part")
        if E.is_odd(var) and x.scalar:
            raise ParityError(f"{var} is odd but was given a scalar part")

    def describe(self, x):
        return {"scalar": str(x.scalar), "vector": [str(v) for v in x.vector]}

    def evaluate(self, p, assign=None, cache=None):
        if self.n is None:
            total = max((len(leaves(m)) for m in p.terms), default=1)
            return self.with_dimension(total).evaluate(p, assign, cache)
        return super().evaluate(p, assign, cache)


def make_model(name: str, n: int | None = None, gram="identity") -> Model:
    if name in ("j2-nonscalar", "j2"):
        return J2Nonscalar()
    if name in ("bn-scalar", "b-scalar", "bn-weak"):
        return BnScalar(n, gram)
    raise ValueError(f"unknown model {name!r}")


# -- identity tests -----------------------------------------------------------

def _no_placeholders(p: JordanPoly):
    bad = [v for v in p.variables() if E.is_placeholder(v)]
    if bad:
        raise ParityError(f"placeholders {sorted(bad)} must be instantiated first")


def eval_j2(p: JordanPoly, assign: Mapping[str, J2Element]) -> J2Element:
    return J2Nonscalar().evaluate(p, assign)


def eval_bn(p: JordanPoly, n: int, gram, assign: Mapping[str, BnElement]) -> BnElement:
    return BnScalar(n, gram).evaluate(p, assign)


def is_graded_identity_j2_nonscalar(p: JordanPoly) -> bool:
    _no_placeholders(p)
    return J2Nonscalar().is_identity(p)


def is_graded_identity_bn_scalar(p: JordanPoly, n: int | None, gram="identity") -> bool:
    _no_placeholders(p)
    return BnScalar(n, gram).is_identity(p)


def is_weak_identity_bn(p: JordanPoly, n: int | None, gram="identity") -> bool:
    """Does ``p`` vanish whenever all its variables are replaced by vectors?

    Placeholders ``x<i>`` are read as vectors too.
    """
    evens = [v for v in p.variables() if E.is_even(v)]
    if evens:
        raise ParityError(f"weak identities take vector variables only, got {sorted(evens)}")
    p = as_odd(p)
    return BnScalar(n, gram).is_identity(p)


def as_odd(p: JordanPoly) -> JordanPoly:
    """Rename placeholders ``x<i>`` to fresh odd variables."""
    from .free import fresh_vars, rename
    xs = sorted((v for v in p.variables() if E.is_placeholder(v)), key=E.var_key)
    if not xs:
        return p
    used = p.variables()
    zs = [f"z{E.var_index(x)}" for x in xs]
    if set(zs) & used or len(set(zs)) != len(zs):
        zs = fresh_vars("z", len(xs), used)
    return rename(p, dict(zip(xs, zs)))


def find_witness(p: JordanPoly, model: Model, seed: int = 0, tries: int = 200):
    """Concrete rational substitution on which ``p`` does not vanish, or None.

    The generic value is a nonzero polynomial; small integer points are tried
    (all ones first, then pseudo-random ones) until it is nonzero, and the
    substitution is re-checked by direct evaluation.
    """
    _no_placeholders(p)
    if isinstance(model, BnScalar) and model.n is None:
        model = model.with_dimension(max((len(leaves(m)) for m in p.terms), default=1))
    value = model.evaluate(p)
    if not value:
        return None
    names = sorted({x for c in value.coords() for x in c.indeterminates()}
                   | {x for v in p.variables() for c in model.generic(v).coords() for x in c.indeterminates()})
    rng = random.Random(seed)
    for attempt in range(tries):
        if attempt == 0:
            point = {x: Fraction(1) for x in names}
        else:
            point = {x: Fraction(rng.randint(-3, 3)) for x in names}
        if not any(c.evaluate(point) for c in value.coords()):
            continue

        def spec(c):
            return c.specialize(point)

        target = model
        if isinstance(model, BnScalar) and model.gram == "symbolic":
            # fix the form as well: g_i_j gets its value at the point
            n = model.n
            gram = [[point.get(f"g_{min(i, j) + 1}_{max(i, j) + 1}", Fraction(0)) for j in range(n)]
                    for i in range(n)]
            target = BnScalar(n, gram)
        assign = {v: target.generic(v).map(spec) for v in sorted(p.variables(), key=E.var_key)}
        concrete = target.evaluate(p, assign)
        if concrete:
            out = {
                "model": target.name,
                "assignment": {v: model.describe(x) for v, x in assign.items()},
                "value": model.describe(concrete),
                "_assign": assign,
                "_value": concrete,
            }
            if target is not model:
                out["gram"] = [[fraction_str(c) for c in row] for row in target.gram]
            return out
    return None


def witness_json(w: dict) -> dict:
    return {k: v for k, v in w.items() if not k.startswith("_")}


def concrete_element(model: Model, coords: Sequence) -> object:
    vals = [CommPoly.const(Fraction(str(c))) for c in coords]
    if isinstance(model, J2Nonscalar):
        return J2Element(*vals)
    return BnElement(vals[0], vals[1:])


def format_coords(x) -> list[str]:
    return [fraction_str(c.constant()) if c.is_constant() else str(c) for c in x.coords()]
