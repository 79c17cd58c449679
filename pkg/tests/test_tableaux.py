import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jgpi.models import is_weak_identity_bn
from jgpi.polys import CommPoly
from jgpi.tableaux import (DoubleTableau, PairProduct, StraighteningError, TableauError, TPoly, build_gn,
                           contents, dot, is_doubly_standard, pair_products, parse_tableau, phi, phi_any,
                           standard_basis_certificate, standard_tableaux, straighten, straighten_residual,
                           tvar)

T = parse_tableau


# -- a numeric oracle ------------------------------------------------------------

def _det(m):
    """Exact determinant by Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in m]
    n, sign, out = len(m), 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return sign * out


def _numeric(t: DoubleTableau, vecs):
    """Value of the tableau at concrete vectors; a list for 0-tableaux, a Fraction otherwise."""
    def ip(i, j):
        return sum(a * b for a, b in zip(vecs[i], vecs[j]))
    total = Fraction(1)
    vec = None
    for p, q in t.rows:
        if p[0] == 0:
            # Laplace expansion along the formal first row of vectors
            n = len(vecs[q[0]])
            vec = [Fraction(0)] * n
            for j, qj in enumerate(q):
                minor = [[ip(pi, qk) for k, qk in enumerate(q) if k != j] for pi in p[1:]]
                c = (-1) ** j * (_det(minor) if minor else 1)
                vec = [v + c * x for v, x in zip(vec, vecs[qj])]
        else:
            total *= _det([[ip(pi, qj) for qj in q] for pi in p])
    return [total * v for v in vec] if vec is not None else total


def _value(tp: TPoly, vecs):
    point = {tvar(i, k + 1): x for i, v in vecs.items() for k, x in enumerate(v)}
    if tp.is_vector:
        return [c.evaluate(point) for c in tp.vector]
    return tp.scalar.evaluate(point)


def _random_vecs(idx, n, rng):
    return {i: [Fraction(rng.randint(-4, 4)) for _ in range(n)] for i in idx}


# -- basics --------------------------------------------------------------------

def test_parse_and_print():
    t = T("(1 2|1 3) (2|4)")
    assert t.rows == (((1, 2), (1, 3)), ((2,), (4,)))
    assert str(t) == "(1 2|1 3) (2|4)"
    assert DoubleTableau.from_json(t.to_json()) == t
    assert DoubleTableau.from_json('{"zero": true, "rows": [{"p": [0, 1], "q": [2, 3]}]}').zero


@pytest.mark.parametrize("text", ["(1|2 3)", "(1|2) (1 2|3 4)", "(1 0|2 3)", "(a|b)", "1|2", "(0|1) (0|2)"])
def test_bad_tableaux(text):
    with pytest.raises(TableauError):
        T(text)


def test_zero_flag_mismatch():
    with pytest.raises(TableauError):
        DoubleTableau.from_json({"zero": True, "rows": [{"p": [1], "q": [2]}]})


def test_is_doubly_standard_examples():
    assert is_doubly_standard(T("(1 2|1 3)"))
    assert is_doubly_standard(T("(1|2) (3|4)"))
    assert not is_doubly_standard(T("(2|1)"))
    assert not is_doubly_standard(T("(1|4) (2|3)"))
    assert not is_doubly_standard(T("(1 2|2 1)"))
    assert is_doubly_standard(T("(0 1|2 3)"))


def test_phi_examples():
    assert phi(T("(1|2)"), 3) == TPoly(dot(1, 2, 3))
    assert phi(T("(1 2|1 2)"), 2) == TPoly(dot(1, 1, 2) * dot(2, 2, 2) - dot(1, 2, 2) * dot(1, 2, 2))
    v = phi(T("(0 1|2 3)"), 2)
    t = lambda i, k: CommPoly.gen(tvar(i, k))
    assert v.vector == tuple(t(2, k) * dot(1, 3, 2) - t(3, k) * dot(1, 2, 2) for k in (1, 2))


def test_phi_vanishes_beyond_n():
    # a 3x3 Gram determinant vanishes on 2-dimensional vectors
    assert not phi(T("(1 2 3|4 5 6)"), 2)
    assert phi(T("(1 2 3|4 5 6)"), 3)


@pytest.mark.parametrize("text", ["(1 2|3 4)", "(1 2 3|1 2 4) (2|3)", "(0 1|2 3)", "(0 2 3|1 1 4) (1|2)", "(1|4) (2|3)"])
def test_phi_matches_numeric_determinants(text):
    t = T(text)
    rng = random.Random(11)
    for n in (1, 2, 3):
        for _ in range(4):
            vecs = _random_vecs(range(1, 7), n, rng)
            assert _value(phi(t, n), vecs) == _numeric(t, vecs)


def test_alternating():
    t, swapped = T("(1 2|3 4)"), T("(1 2|4 3)")
    assert phi(swapped, 3) == phi(t, 3) * -1
    assert not phi(T("(1 1|3 4)"), 3)
    assert not phi(T("(0 1|3 3)"), 3)


# -- straightening --------------------------------------------------------------

def test_straighten_examples():
    assert straighten(PairProduct(((2, 1),)), 1) == [(1, T("(1|2)"))]
    assert straighten(T("(1 2|2 1)"), 2) == [(-1, T("(1 2|1 2)"))]
    got = dict((str(t), c) for c, t in straighten(T("(1|4) (2|3)"), 4))
    assert got == {"(1 3|2 4)": -1, "(1|2) (3|4)": 1}


def test_straighten_bare_vector():
    out = straighten(PairProduct(((1, 2),), bare=3), 2)
    assert all(t.zero and is_doubly_standard(t) for _, t in out)
    assert not straighten_residual(PairProduct(((1, 2),), bare=3), out, 2)


def test_straighten_with_bound():
    from jgpi.free import DegreeBoundError
    with pytest.raises(DegreeBoundError):
        straighten(T("(1 2|3 4)"), 2, bound=3)


tableau_texts = st.sampled_from(["(1 2|2 1)", "(2|1) (1|2)", "(3|1) (2|2)", "(1 3|2 1)", "(0 3|1 2)", "(0|2) (1|1)",
                                 "(2 3|1 1) (1|2)", "(0 2|1 3) (3|2)", "(1|3) (2|2) (1|3)"])


@settings(max_examples=40, deadline=None)
@given(tableau_texts, st.integers(1, 3), st.integers(0, 10_000))
def test_straighten_is_exact_numerically(text, n, seed):
    t = T(text)
    out = straighten(t, n)
    assert all(is_doubly_standard(s) and s.shape[0] <= n for _, s in out)
    vecs = _random_vecs(range(1, 5), n, random.Random(seed))
    lhs = _numeric(t, vecs)
    rhs = None
    for c, s in out:
        val = _numeric(s, vecs)
        val = [c * x for x in val] if isinstance(val, list) else c * val
        rhs = val if rhs is None else ([a + b for a, b in zip(rhs, val)] if isinstance(val, list) else rhs + val)
    if rhs is None:
        rhs = [Fraction(0)] * n if isinstance(lhs, list) else Fraction(0)
    assert lhs == rhs


def test_straightening_failure_is_reported():
    # the dimension must be positive
    with pytest.raises((StraighteningError, TableauError, ValueError)):
        straighten(T("(1|2)"), 0)


# -- standard bases --------------------------------------------------------------

def _double_factorial(k):
    out = 1
    for i in range(2 * k - 1, 0, -2):
        out *= i
    return out


@pytest.mark.parametrize("k", [1, 2, 3])
def test_standard_count_for_distinct_content(k):
    # 2k distinct vectors and n >= k: pair products are independent, (2k-1)!! of them
    content = Counter(range(1, 2 * k + 1))
    assert len(standard_tableaux(content, k)) == _double_factorial(k)
    assert len(pair_products(content)) == _double_factorial(k)
    assert len(standard_tableaux(content, 1)) == 1


@pytest.mark.parametrize("k,n", [(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_certificates(k, n):
    for c in contents(k):
        cert = standard_basis_certificate(c, n)
        assert cert.ok, cert.to_json()
    for c in contents(k - 1, zero=True):
        assert standard_basis_certificate(c, n, zero=True).ok


def test_contents_are_compositions():
    assert [dict(c) for c in contents(1)] == [{1: 1, 2: 1}, {1: 2}]
    assert len(list(contents(2))) == 8
    assert all(sum(c.values()) == 3 for c in contents(1, zero=True))


def test_pair_products_cover_content():
    for x in pair_products({1: 2, 2: 1, 3: 1}):
        assert x.content() == Counter({1: 2, 2: 1, 3: 1})
    for x in pair_products({1: 1, 2: 1, 3: 1}, zero=True):
        assert x.zero and sum(x.content().values()) == 3


# -- g_n -------------------------------------------------------------------------

@pytest.mark.parametrize("n,terms", [(1, 2), (2, 6), (3, 24)])
def test_gn_term_counts(n, terms):
    g = build_gn(n)
    assert len(g.terms) == terms
    assert set(abs(c) for c in g.terms.values()) == {1}
    assert g.multidegree().is_multilinear() and g.multidegree().total == 2 * n + 1


@pytest.mark.parametrize("n", [1, 2])
def test_gn_weak_identity(n):
    g = build_gn(n, "x")
    assert is_weak_identity_bn(g, n)
    assert not is_weak_identity_bn(g, n + 1)


def test_gn_is_alternating_in_first_arguments():
    from jgpi.free import rename
    g = build_gn(2)
    assert rename(g, {"z1": "z2", "z2": "z1"}) == g * -1
    assert rename(g, {"z4": "z5", "z5": "z4"}) != g * -1
    with pytest.raises(ValueError):
        build_gn(0)


def test_phi_any_dispatch():
    x = PairProduct(((1, 2), (3, 3)))
    assert phi_any(x, 2) == TPoly(dot(1, 2, 2) * dot(3, 3, 2))
    assert phi_any(T("(1|2)"), 2) == TPoly(dot(1, 2, 2))


def test_standard_tableaux_are_standard_and_distinct():
    for content in ({1: 2, 2: 2}, {1: 1, 2: 2, 3: 1}, {1: 3, 2: 1}):
        for n in (1, 2):
            ts = standard_tableaux(content, n)
            assert len(set(ts)) == len(ts)
            for t in ts:
                assert is_doubly_standard(t) and t.content() == Counter(content) and t.shape[0] <= n
    assert all(t.zero for t in standard_tableaux({1: 1, 2: 2}, 2, zero=True))
    assert standard_tableaux({1: 1, 2: 2}, 2) == []
