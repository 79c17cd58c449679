"""Graded T-ideals, identity components and their comparison.

The central object is :class:`QuotientAlgebra`, the relatively free algebra
``L = J(X)/I`` built one multidegree at a time.  For a multidegree ``d`` let

    P(d) = sum over unordered splits d = e + f of  L(e) (x) L(f)

(symmetric square when ``e == f``).  Products of lower components land in
``P(d)``, and ``L(d)`` is ``P(d)`` modulo the images of all substitution
instances at ``d`` of the (multilinearized) generators, the Jordan identity
included.  Substituting basis elements of lower components is enough because
the generators are multilinear, and closure under multiplication is automatic
because lower components are already quotients.  Every basis element of
``L(d)`` is the image of a single monomial (its *lift*).

Identity components are kernels of generic evaluation into a model.  Since
the generators are identities of the model, evaluation factors through ``L``
and the comparison ``T = I`` at ``d`` reduces to ``rank(eval on L(d)) ==
dim L(d)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

from . import expr as E
from .free import (UNIT, ComponentBasis, JordanPoly, MultiDegree, check_degree,
                   fully_linearize, jordan_identity, monomials, mul_mono, multidegree,
                   multihomogeneous_components, ordered_splits, unit_reductions, accepts)
from .linalg import ONE, Echelon, axpy, dependencies
from .models import BnScalar, Model, element_vector, make_model


# -- generator sets -----------------------------------------------------------

NONSCALAR_TEMPLATES = (
    ("x1*(x2*x3) - x2*(x1*x3)", lambda par: par["x1"] == par["x2"]),
    ("(y1*y2,z1,z2) - (y1*(y2,z1,z2) + y2*(y1,z1,z2) - 2*z1*(z2,y1,y2))", None),
    ("(y1*y2,y3,z1) - (y1*(y2,y3,z1) + y2*(y1,y3,z1))", None),
    ("(z1*z2,x1,x2)", None),
    ("(y1,y2,z1,x1,y3) - (y1,y3,z1,x1,y2)", None),
)
SCALAR_TEMPLATE = ("(y1,x1,x2)", None)


def instantiate(template: JordanPoly | str, condition=None) -> list[JordanPoly]:
    """All parity instantiations of the placeholders of ``template``.

    Each placeholder becomes a fresh ``y`` or ``z`` variable;
    ``condition(parities)`` (a dict ``placeholder -> 0/1``) filters patterns.
    """
    if isinstance(template, str):
        template = JordanPoly.parse(template)
    xs = sorted((v for v in template.variables() if E.is_placeholder(v)), key=E.var_key)
    if not xs:
        return [template]
    from .free import rename
    out = []
    for pattern in itertools.product((0, 1), repeat=len(xs)):
        par = dict(zip(xs, pattern))
        if condition is not None and not condition(par):
            continue
        used = {v for v in template.variables() if not E.is_placeholder(v)}
        mapping = {}
        for x, p in zip(xs, pattern):
            kind = "z" if p else "y"
            i = 1
            while f"{kind}{i}" in used:
                i += 1
            used.add(f"{kind}{i}")
            mapping[x] = f"{kind}{i}"
        out.append(rename(template, mapping))
    return out


@dataclass(frozen=True)
class GeneratorSet:
    """Named generating set of a graded T-ideal.

    ``templates`` keep the placeholder form; ``instances`` are the
    parity-instantiated polynomials actually used.
    """

    name: str
    templates: tuple
    instances: tuple = field(compare=False)
    n: int | None = None

    @property
    def key(self):
        return (self.name, self.n)

    def __str__(self):
        return self.name if self.n is None else f"{self.name}({self.n})"


@lru_cache(maxsize=None)
def nonscalar_j2() -> GeneratorSet:
    inst = []
    for text, cond in NONSCALAR_TEMPLATES:
        inst.extend(instantiate(text, cond))
    return GeneratorSet("nonscalar-J2", tuple(t for t, _ in NONSCALAR_TEMPLATES), tuple(inst))


@lru_cache(maxsize=None)
def scalar_b() -> GeneratorSet:
    return GeneratorSet("scalar-B", (SCALAR_TEMPLATE[0],), tuple(instantiate(SCALAR_TEMPLATE[0])))


@lru_cache(maxsize=None)
def scalar_bn(n: int) -> GeneratorSet:
    from .tableaux import build_gn
    g = build_gn(n)
    return GeneratorSet("scalar-Bn", (SCALAR_TEMPLATE[0], str(g)),
                        tuple(instantiate(SCALAR_TEMPLATE[0])) + (g,), n)


def custom_generators(polys, name="custom") -> GeneratorSet:
    inst = []
    for p in polys:
        inst.extend(instantiate(p))
    return GeneratorSet(name, tuple(str(p) for p in polys), tuple(inst))


def generator_set(name: str, n: int | None = None) -> GeneratorSet:
    key = name.lower()
    if key in ("nonscalar-j2", "nonscalar"):
        return nonscalar_j2()
    if key in ("scalar-b", "scalar"):
        return scalar_b()
    if key == "scalar-bn":
        if n is None:
            raise ValueError("scalar-Bn needs n")
        return scalar_bn(n)
    raise ValueError(f"unknown generator set {name!r}")


# -- relatively free algebra --------------------------------------------------

class _Component:
    __slots__ = ("degree", "pkeys", "pindex", "echelon", "basis", "lindex", "lifts",
                 "proj", "instances")

    @property
    def dim(self):
        return len(self.basis)


def _compile(rel: JordanPoly):
    """Variables, terms and symmetry blocks of a multilinear relation.

    A block is a set of same-kind variables such that every transposition
    inside it maps ``rel`` to ``+-rel``; instances then only need assignments
    that are sorted along each block.
    """
    from .free import rename
    vs = sorted(rel.variables(), key=E.var_key)
    parent = list(range(len(vs)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(vs)), 2):
        if E.var_kind(vs[i]) != E.var_kind(vs[j]) or find(i) == find(j):
            continue
        sw = rename(rel, {vs[i]: vs[j], vs[j]: vs[i]})
        if sw == rel or sw == -rel:
            parent[find(j)] = find(i)
    groups: dict = {}
    for i in range(len(vs)):
        groups.setdefault(find(i), []).append(i)
    blocks = [g for g in groups.values() if len(g) > 1]
    return vs, [(m, c) for m, c in rel.items()], blocks


def _sorted_along(keys, blocks) -> bool:
    for b in blocks:
        for i, j in zip(b, b[1:]):
            if keys[i] > keys[j]:
                return False
    return True


class QuotientAlgebra:
    """The relatively free algebra of a set of multilinearizable relations.

    The linearized Jordan identity is always included, so ``QuotientAlgebra([])``
    is the free Jordan algebra.
    """

    def __init__(self, relations=(), with_jordan: bool = True, bound: int | None = None):
        rels = [jordan_identity()] if with_jordan else []
        rels.extend(relations)
        compiled = []
        seen = set()
        for r in rels:
            for d, comp in multihomogeneous_components(r).items():
                lin = comp if d.is_multilinear() else fully_linearize(comp)
                for q in unit_reductions(lin):
                    if q in seen:
                        continue
                    seen.add(q)
                    if len(q.variables()) < 2:
                        raise ValueError(f"degenerate relation {q}")
                    compiled.append(_compile(q))
        self.relations = compiled
        self.bound = bound
        self._comps: dict = {}
        self._red: dict = {}

    # components

    def component(self, d) -> _Component:
        d = MultiDegree(d)
        c = self._comps.get(d)
        if c is None:
            check_degree(d.total, self.bound)
            c = self._build(d)
            self._comps[d] = c
        return c

    def dim(self, d) -> int:
        return self.component(d).dim

    def _build(self, d: MultiDegree) -> _Component:
        comp = _Component()
        comp.degree = d
        pkeys = []
        if d.total == 0:
            pkeys.append(("unit",))
        elif d.total == 1:
            pkeys.append(("leaf",))
        else:
            for e in d.sub_degrees():
                if e.total == 0 or e == d:
                    continue
                f = d - e
                if e.key() > f.key():
                    continue
                ce, cf = self.component(e), self.component(f)
                if e == f:
                    for i in range(ce.dim):
                        for j in range(i, ce.dim):
                            pkeys.append((e, i, j))
                else:
                    for i in range(ce.dim):
                        for j in range(cf.dim):
                            pkeys.append((e, i, j))
        comp.pkeys = pkeys
        comp.pindex = {k: n for n, k in enumerate(pkeys)}
        ech = Echelon()
        count = 0
        if d.total >= 2:
            for vs, terms, blocks in self.relations:
                if len(vs) > d.total:
                    continue
                for parts in _splits(d, len(vs)):
                    if not all(accepts(v, e) for v, e in zip(vs, parts)):
                        continue
                    pk = [e.key() for e in parts]
                    if not _sorted_along(pk, blocks):
                        continue
                    dims = [self.component(e).dim for e in parts]
                    if 0 in dims:
                        continue
                    for choice in itertools.product(*(range(k) for k in dims)):
                        if blocks and not _sorted_along(list(zip(pk, choice)), blocks):
                            continue
                        env = {v: (e, {i: ONE}) for v, e, i in zip(vs, parts, choice)}
                        vec: dict = {}
                        for m, c in terms:
                            axpy(vec, c, self._eval_top(m, env, comp, d))
                        count += 1
                        if vec:
                            ech.add(vec)
                    if len(ech) == len(pkeys):
                        break
        comp.echelon = ech
        comp.instances = count
        comp.basis = [k for k in range(len(pkeys)) if k not in ech.rows]
        comp.lindex = {k: n for n, k in enumerate(comp.basis)}
        comp.proj = {}
        lifts = []
        for k in comp.basis:
            key = pkeys[k]
            if key[0] == "unit":
                lifts.append(UNIT)
            elif key[0] == "leaf":
                lifts.append(d[0][0])
            else:
                e, i, j = key
                lifts.append(mul_mono(self.component(e).lifts[i], self.component(d - e).lifts[j]))
        comp.lifts = lifts
        return comp

    def _eval_top(self, m, env, comp, d):
        """Value of relation monomial ``m`` under ``env`` as a vector of ``P(d)``."""
        a, b = m
        ea, va = self._eval(a, env)
        eb, vb = self._eval(b, env)
        return self._tensor(comp, ea, va, eb, vb)

    def _eval(self, m, env):
        if isinstance(m, str):
            return env[m]
        ea, va = self._eval(m[0], env)
        eb, vb = self._eval(m[1], env)
        return ea + eb, self.multiply(ea, va, eb, vb)

    def _tensor(self, comp, e, x, f, y) -> dict:
        if e.key() > f.key():
            e, x, f, y = f, y, e, x
        out: dict = {}
        pindex = comp.pindex
        sym = e == f
        for i, a in x.items():
            for j, b in y.items():
                k = pindex[(e, i, j) if not sym or i <= j else (e, j, i)]
                s = out.get(k, 0) + a * b
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def project(self, comp: _Component, pvec: dict) -> dict:
        out: dict = {}
        for k, c in pvec.items():
            img = comp.proj.get(k)
            if img is None:
                if k in comp.lindex:
                    img = {comp.lindex[k]: ONE}
                else:
                    rem, _ = comp.echelon.reduce({k: ONE})
                    img = {comp.lindex[kk]: v for kk, v in rem.items()}
                comp.proj[k] = img
            axpy(out, c, img)
        return out

    def multiply(self, e: MultiDegree, x: dict, f: MultiDegree, y: dict) -> dict:
        """Product of ``x`` in ``L(e)`` and ``y`` in ``L(f)`` as a vector of ``L(e+f)``."""
        if e.total == 0:
            return {i: c * x.get(0, 0) for i, c in y.items() if x.get(0, 0)}
        if f.total == 0:
            return {i: c * y.get(0, 0) for i, c in x.items() if y.get(0, 0)}
        d = e + f
        comp = self.component(d)
        return self.project(comp, self._tensor(comp, e, x, f, y))

    # reduction of polynomials

    def reduce_monomial(self, m) -> dict:
        r = self._red.get(m)
        if r is not None:
            return r
        if m == UNIT or isinstance(m, str):
            d = multidegree(m)
            comp = self.component(d)
            r = {0: ONE} if comp.dim else {}
        else:
            a, b = m
            r = self.multiply(multidegree(a), self.reduce_monomial(a),
                              multidegree(b), self.reduce_monomial(b))
        self._red[m] = r
        return r

    def reduce(self, p: JordanPoly) -> dict[MultiDegree, dict]:
        """Coordinates in ``L`` of each multihomogeneous component of ``p`` (zeros dropped)."""
        out = {}
        for d, part in multihomogeneous_components(p).items():
            check_degree(d.total, self.bound)
            v: dict = {}
            for m, c in part.terms.items():
                axpy(v, c, self.reduce_monomial(m))
            if v:
                out[d] = v
        return out

    def contains(self, p: JordanPoly) -> bool:
        return not self.reduce(p)

    def lift(self, d, v: dict) -> JordanPoly:
        comp = self.component(d)
        return JordanPoly({comp.lifts[i]: c for i, c in v.items()})

    def basis_polys(self, d) -> list[JordanPoly]:
        return [JordanPoly.monomial(m) for m in self.component(d).lifts]

    def kernel_rows(self, d) -> list[dict]:
        """Basis (monomial coordinates) of the kernel of ``monomials(d) -> L(d)``."""
        d = MultiDegree(d)
        vecs = [self.reduce_monomial(m) for m in monomials(d)]
        return dependencies(vecs)


_ENGINES: dict = {}


def engine(gens: GeneratorSet | None) -> QuotientAlgebra:
    """Shared (cached) relatively free algebra for a generator set; None = free Jordan."""
    key = None if gens is None else gens.key
    q = _ENGINES.get(key)
    if q is None:
        q = QuotientAlgebra(() if gens is None else gens.instances)
        _ENGINES[key] = q
    return q


@lru_cache(maxsize=None)
def _splits(d, k):
    return tuple(ordered_splits(d, k))


def shape(d: MultiDegree) -> MultiDegree:
    """Renaming of ``d`` to ungraded variables, exponents descending."""
    exps = sorted((k for _, k in d), reverse=True)
    return MultiDegree({f"x{i + 1}": k for i, k in enumerate(exps)})


def free_jordan_dim(d) -> int:
    """Dimension of the free Jordan algebra at ``d`` (depends only on the exponents)."""
    return engine(None).dim(shape(MultiDegree(d)))


# -- identity side ------------------------------------------------------------

class Evaluator:
    """Memoized generic evaluation of monomials into a model."""

    def __init__(self, model: Model):
        self.model = model
        self._cache: dict = {}
        self._vec: dict = {}

    def value(self, m):
        p = JordanPoly.monomial(m)
        return self.model.evaluate(p, cache=self._cache)

    def vector(self, m) -> dict:
        v = self._vec.get(m)
        if v is None:
            v = element_vector(self.value(m))
            self._vec[m] = v
        return v


_EVALUATORS: dict = {}


def evaluator(model: Model, d: MultiDegree) -> Evaluator:
    if isinstance(model, BnScalar) and model.n is None:
        model = model.with_dimension(d.total)
    key = (type(model).__name__, getattr(model, "n", None), str(getattr(model, "gram", "")))
    ev = _EVALUATORS.get(key)
    if ev is None:
        ev = Evaluator(model)
        _EVALUATORS[key] = ev
    return ev


def model_from(spec) -> Model:
    if isinstance(spec, Model):
        return spec
    if isinstance(spec, str):
        return make_model(spec)
    name, *rest = spec
    return make_model(name, *rest)


# -- public operations --------------------------------------------------------

@dataclass
class IdealComponent:
    degree: MultiDegree
    subspace: ComponentBasis

    @property
    def dim(self):
        return self.subspace.dim

    def contains(self, p: JordanPoly) -> bool:
        return self.subspace.contains_poly(p)

    @property
    def rows(self):
        return self.subspace.rows

    @property
    def relations(self):
        return self.subspace.relations


def _jordan_relations(d: MultiDegree) -> Echelon:
    ech = Echelon()
    for r in engine(None).kernel_rows(d):
        ech.add(r)
    return ech


def ideal_component(gens: GeneratorSet, d) -> IdealComponent:
    """``I`` at ``d`` inside the free Jordan component, in monomial coordinates."""
    d = MultiDegree(d)
    rows = engine(gens).kernel_rows(d)
    sub = ComponentBasis(d, monomials(d), _jordan_relations(d), rows, "free-jordan")
    return IdealComponent(d, sub)


def identity_component(model, d) -> IdealComponent:
    """Kernel of generic evaluation at ``d`` inside the free Jordan component."""
    d = MultiDegree(d)
    check_degree(d.total)
    ev = evaluator(model_from(model), d)
    rows = dependencies([ev.vector(m) for m in monomials(d)])
    sub = ComponentBasis(d, monomials(d), _jordan_relations(d), rows, "free-jordan")
    return IdealComponent(d, sub)


def is_member(p: JordanPoly, gens: GeneratorSet) -> bool:
    """Is ``p`` in the graded T-ideal generated by ``gens`` (decided per component)?"""
    for v in p.variables():
        if E.is_placeholder(v):
            raise ValueError("instantiate placeholders before a membership query")
    return engine(gens).contains(p)


@dataclass
class Comparison:
    degree: MultiDegree
    dim_free_jordan: int | None
    dim_ideal: int | None
    dim_identities: int | None
    dim_quotient: int
    rank_eval: int
    sound: bool
    counterexample: JordanPoly | None = None
    unsound_element: JordanPoly | None = None

    @property
    def equal(self) -> bool:
        return self.sound and self.counterexample is None

    def to_json(self) -> dict:
        out = {
            "degree": str(self.degree),
            "dim_free_jordan": self.dim_free_jordan,
            "dim_ideal": self.dim_ideal,
            "dim_identities": self.dim_identities,
            "equal": self.equal,
        }
        if self.counterexample is not None:
            out["counterexample"] = str(self.counterexample)
        if not self.sound:
            out["unsound"] = str(self.unsound_element)
        return out

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def compare_components(gens: GeneratorSet, model, d, with_free_jordan: bool = True) -> Comparison:
    """Compare ``I`` (generated by ``gens``) with ``T`` (identities of ``model``) at ``d``.

    ``I <= T`` is checked on the relations defining ``L(d)``; equality then
    amounts to evaluation being injective on ``L(d)``.  A kernel vector, lifted
    to a polynomial, is an identity outside ``I``.
    """
    d = MultiDegree(d)
    check_degree(d.total)
    q = engine(gens)
    comp = q.component(d)
    ev = evaluator(model_from(model), d)

    sound, bad = True, None
    pvals: dict = {}

    def pvalue(k):
        v = pvals.get(k)
        if v is None:
            key = comp.pkeys[k]
            if key[0] in ("unit", "leaf"):
                m = UNIT if key[0] == "unit" else d[0][0]
            else:
                e, i, j = key
                m = mul_mono(q.component(e).lifts[i], q.component(d - e).lifts[j])
            v = pvals[k] = (m, ev.vector(m))
        return v

    for row in comp.echelon.rows.values():
        total: dict = {}
        for k, c in row.items():
            axpy(total, c, pvalue(k)[1])
        if total:
            sound = False
            bad = JordanPoly({pvalue(k)[0]: c for k, c in row.items()})
            break

    vecs = [ev.vector(m) for m in comp.lifts]
    kernel = dependencies(vecs)
    rank_eval = len(vecs) - len(kernel)
    cex = None
    if kernel:
        cex = JordanPoly({comp.lifts[i]: c for i, c in kernel[0].items()})
    fj = free_jordan_dim(d) if with_free_jordan else None
    return Comparison(
        degree=d,
        dim_free_jordan=fj,
        dim_ideal=None if fj is None else fj - comp.dim,
        dim_identities=None if fj is None else fj - rank_eval,
        dim_quotient=comp.dim,
        rank_eval=rank_eval,
        sound=sound,
        counterexample=cex,
        unsound_element=bad,
    )


def quotient_dim(gens: GeneratorSet, d) -> int:
    return engine(gens).dim(d)
