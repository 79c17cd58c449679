import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jgpi.free import (DegreeBoundError, JordanPoly, MultiDegree, associator, canonicalize,
                       closure_span, component_basis, degree_window, fully_linearize, jordan_identity,
                       linearized_jordan_identity, long_associator, monomials, multihomogeneous_components,
                       multiply, rename, shift_substitute)
from jgpi.linalg import Echelon
from jgpi.models import BnScalar, J2Nonscalar
from jgpi.tideal import engine, free_jordan_dim

V = JordanPoly.var


def P(text):
    return JordanPoly.parse(text)


# -- canonical monomials -------------------------------------------------------

def test_canonicalize_commutes():
    assert canonicalize(("x2", "x1")) == canonicalize(("x1", "x2"))
    assert canonicalize(("x3", ("x2", "x1"))) == canonicalize((("x1", "x2"), "x3"))
    assert canonicalize(("1", "z1")) == "z1"


@given(st.recursive(st.sampled_from(["y1", "y2", "z1", "x1", "1"]),
                    lambda c: st.tuples(c, c), max_leaves=7))
def test_canonicalize_idempotent_and_swap_invariant(tree):
    def swap_all(t):
        return t if isinstance(t, str) else (swap_all(t[1]), swap_all(t[0]))
    m = canonicalize(tree)
    assert canonicalize(m) == m
    assert canonicalize(swap_all(tree)) == m


def test_monomial_counts_are_double_factorials():
    # (2n-3)!! commutative nonassociative multilinear monomials
    for n, count in [(1, 1), (2, 1), (3, 3), (4, 15), (5, 105)]:
        d = MultiDegree({f"x{i}": 1 for i in range(1, n + 1)})
        assert len(monomials(d)) == count


# -- products and associators --------------------------------------------------

def test_multiply_examples():
    z1, z2, y1 = V("z1"), V("z2"), V("y1")
    assert multiply(z1, z2) == JordanPoly.monomial(("z1", "z2"))
    assert (y1 + z1) * z1 == y1 * z1 + z1 * z1
    assert JordanPoly.one() * (y1 * z1) == y1 * z1


def test_associator_examples():
    z1, z2, y1 = V("z1"), V("z2"), V("y1")
    assert not associator(z1, z2, JordanPoly.one())
    assert not associator(y1, y1, y1)
    a = associator(z1, y1, z2)
    assert a == (z1 * y1) * z2 - z1 * (y1 * z2)
    assert sorted(a.terms.values()) == [-1, 1]


polys = st.builds(
    lambda terms: sum((P(t) * c for t, c in terms), JordanPoly()),
    st.lists(st.tuples(st.sampled_from(["y1", "z1", "z2", "y1*z1", "z1*z2", "(y1*z1)*z2", "1", "y2*(y2*z1)"]),
                       st.integers(-3, 3)), max_size=4))


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys, st.integers(-3, 3))
def test_multiply_commutative_bilinear_unital(p, q, r, c):
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p * c) * q == (p * q) * c
    assert JordanPoly.one() * p == p


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys, polys)
def test_associator_trilinear_and_unit(p, q, r, s):
    assert associator(p + s, q, r) == associator(p, q, r) + associator(s, q, r)
    assert associator(p, q + s, r) == associator(p, q, r) + associator(p, s, r)
    assert associator(p, q, r + s) == associator(p, q, r) + associator(p, q, s)
    one = JordanPoly.one()
    assert not associator(one, q, r) and not associator(p, one, r) and not associator(p, q, one)
    assert not associator(p, p, p)


def test_multihomogeneous_components():
    p = P("y1*z1 + z1*z1")
    comps = multihomogeneous_components(p)
    assert len(comps) == 2 and sum(comps.values(), JordanPoly()) == p
    assert multihomogeneous_components(JordanPoly()) == {}
    assert len(multihomogeneous_components(P("(y1,z1,z2)"))) == 1


@settings(max_examples=60, deadline=None)
@given(polys)
def test_components_partition(p):
    comps = multihomogeneous_components(p)
    assert sum(comps.values(), JordanPoly()) == p
    for d, part in comps.items():
        assert part.multidegree() == d


# -- shift by the unit ---------------------------------------------------------

def test_shift_substitute_examples():
    assert shift_substitute(P("y1*y1"), "y1") == P("y1*y1 + 2*y1 + 1")
    assert shift_substitute(P("(y1,y2,z1)"), "y1") == P("(y1,y2,z1)")
    assert shift_substitute(P("y1*(y1*z1)"), "y1") == P("y1*(y1*z1) + 2*(y1*z1) + z1")
    with pytest.raises(ValueError):
        shift_substitute(P("z1*z1"), "z1")


def test_shift_components_are_partial_linearizations():
    p = P("(y1*y1)*z1")
    comps = multihomogeneous_components(shift_substitute(p, "y1"))
    assert comps[MultiDegree.of("y1", "y1", "z1")] == p
    assert comps[MultiDegree.of("y1", "z1")] == P("2*(y1*z1)")
    assert comps[MultiDegree.of("z1")] == P("z1")


# -- linearization and the Jordan identity -------------------------------------

def test_full_linearization_is_multilinear():
    lin = linearized_jordan_identity()
    assert lin.multidegree().is_multilinear()
    assert lin.multidegree().total == 4
    assert fully_linearize(P("(y1,z1,z2)")) == P("(y1,z1,z2)")


@pytest.mark.parametrize("model", [J2Nonscalar(), BnScalar(3), BnScalar(2, "symbolic")],
                         ids=["j2", "b3", "b2-symbolic"])
def test_linearized_jordan_identity_holds_in_models(model):
    lin = linearized_jordan_identity()
    xs = sorted(lin.variables())
    for kinds in itertools.product("yz", repeat=len(xs)):
        inst = rename(lin, {x: f"{k}{i + 1}" for i, (x, k) in enumerate(zip(xs, kinds))})
        assert model.is_identity(inst)


# -- component bases -----------------------------------------------------------

def test_component_basis_examples():
    d = MultiDegree.of("x1", "x2", "x3")
    free = component_basis(d, "free-nonassoc")
    assert free.dim == 3 and len(free.monomials) == 3
    assert component_basis(d, "free-jordan").dim == 3
    # (x^2 x) x = x^2 x^2 is the only relation among the two monomials of x1^4
    q = MultiDegree({"x1": 4})
    assert len(monomials(q)) == 2
    assert component_basis(q, "free-jordan").dim == 1


def test_component_basis_relatively_free():
    from jgpi.tideal import nonscalar_j2, quotient_dim
    d = MultiDegree.of("y1", "z1", "z2")
    cb = component_basis(d, "relatively-free-L", gens=nonscalar_j2())
    assert cb.dim == quotient_dim(nonscalar_j2(), d)
    with pytest.raises(ValueError):
        component_basis(d, "relatively-free-L")
    with pytest.raises(ValueError):
        component_basis(d, "no-such-modulus")


def test_degree_bound():
    with pytest.raises(DegreeBoundError):
        component_basis(MultiDegree({"x1": 8}), "free-nonassoc")
    with pytest.raises(DegreeBoundError):
        component_basis(MultiDegree({"x1": 4}), "free-nonassoc", bound=3)


def test_component_json():
    data = component_basis(MultiDegree.of("y1", "y1"), "free-jordan").to_json()
    assert data["dim"] == 1 and data["monomials"] == ["y1*y1"]


# -- oracle: brute-force closure against the quotient engine --------------------

FREE_JORDAN_MULTILINEAR = {1: 1, 2: 1, 3: 3, 4: 11, 5: 55}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_free_jordan_multilinear_dims(n):
    d = MultiDegree({f"x{i}": 1 for i in range(1, n + 1)})
    brute = len(monomials(d)) - closure_span([jordan_identity()], d).rank
    assert brute == FREE_JORDAN_MULTILINEAR[n]
    assert engine(None).dim(d) == brute


@pytest.mark.parametrize("exps", [(4,), (3, 1), (2, 2), (3, 2), (2, 2, 1), (3, 1, 1), (2, 1, 1, 1)])
def test_free_jordan_engine_matches_closure(exps):
    d = MultiDegree({f"x{i + 1}": k for i, k in enumerate(exps)})
    brute = len(monomials(d)) - closure_span([jordan_identity()], d).rank
    assert engine(None).dim(d) == brute == free_jordan_dim(d)


def test_free_jordan_dimension_is_shape_invariant():
    for d in degree_window(5, 2):
        assert free_jordan_dim(d) == engine(None).dim(d)


# -- left-normed associators span all associators --------------------------------

def _associators(args):
    """All associators built from the variables ``args`` (in order) by nesting triples."""
    if len(args) == 1:
        yield V(args[0])
        return
    n = len(args)
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            for a in _associators(args[:i]):
                for b in _associators(args[i:j]):
                    for c in _associators(args[j:]):
                        yield associator(a, b, c)


@pytest.mark.parametrize("names", [
    ("x1", "x2", "x3", "x4", "x5"),
    ("x1", "x1", "x2", "x3", "x3"),
    ("x1", "x1", "x1", "x1", "x2", "x2", "x2"),
    ("x1", "x1", "x1", "x2", "x2", "x3", "x3"),
])
def test_long_associators_in_span_of_proper_ones(names):
    d = MultiDegree.of(*names)
    L = engine(None)
    proper = Echelon()
    for perm in set(itertools.permutations(names)):
        proper.add(L.reduce(long_associator(*map(V, perm))).get(d, {}))
    checked = 0
    for perm in set(itertools.permutations(names)):
        for u in _associators(perm):
            checked += 1
            assert proper.contains(L.reduce(u).get(d, {}))
    assert checked > 0
