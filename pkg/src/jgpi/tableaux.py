"""Double tableaux, their determinantal polynomials and straightening.

Formal vectors ``t_i = (t_i_1, ..., t_i_n)`` carry the standard form
``t_i o t_j = sum_k t_i_k t_j_k``.  A double tableau is a list of rows
``(p_1 .. p_m | q_1 .. q_m)`` with weakly decreasing lengths; a 0-tableau has
``p_11 = 0`` and its first row produces a vector instead of a scalar.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .free import JordanPoly, check_degree, product
from .linalg import Echelon, as_fraction, solve
from .polys import ONE, ZERO, CommPoly


class TableauError(ValueError):
    pass


class StraighteningError(RuntimeError):
    """No expansion over standard tableaux was found (must not happen)."""


# -- tableaux -----------------------------------------------------------------

@dataclass(frozen=True)
class DoubleTableau:
    rows: tuple  # of (p tuple, q tuple)

    def __post_init__(self):
        rows = tuple((tuple(p), tuple(q)) for p, q in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise TableauError("a tableau needs at least one row")
        prev = None
        for r, (p, q) in enumerate(rows):
            if len(p) != len(q) or not p:
                raise TableauError(f"row {r + 1}: p and q must have the same positive length")
            if prev is not None and len(p) > prev:
                raise TableauError("row lengths must be weakly decreasing")
            prev = len(p)
            for c, v in enumerate(p + q):
                if not isinstance(v, int) or isinstance(v, bool):
                    raise TableauError("entries must be integers")
                if v < 0 or (v == 0 and not (r == 0 and c == 0)):
                    raise TableauError("entries must be positive (only p_11 may be 0)")

    @classmethod
    def of(cls, *rows) -> "DoubleTableau":
        return cls(tuple(rows))

    @property
    def zero(self) -> bool:
        return self.rows[0][0][0] == 0

    @property
    def shape(self) -> tuple:
        return tuple(len(p) for p, _ in self.rows)

    def content(self) -> Counter:
        return Counter(v for p, q in self.rows for v in p + q if v)

    def to_json(self) -> dict:
        return {"zero": self.zero, "rows": [{"p": list(p), "q": list(q)} for p, q in self.rows]}

    @classmethod
    def from_json(cls, data) -> "DoubleTableau":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            rows = [(list(r["p"]), list(r["q"])) for r in data["rows"]]
        except (KeyError, TypeError) as exc:
            raise TableauError(f"malformed tableau JSON: {exc}") from None
        t = cls(tuple(rows))
        if "zero" in data and bool(data["zero"]) != t.zero:
            raise TableauError("zero flag disagrees with p_11")
        return t

    def __str__(self):
        return " ".join("(" + " ".join(map(str, p)) + "|" + " ".join(map(str, q)) + ")"
                        for p, q in self.rows)


def parse_tableau(text: str) -> DoubleTableau:
    """Read ``"(1 2|1 3) (2|4)"``."""
    rows = []
    for chunk in text.replace(")", ")\n").split("\n"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")") and "|" in chunk):
            raise TableauError(f"cannot read row {chunk!r}")
        left, right = chunk[1:-1].split("|")
        try:
            rows.append((tuple(int(x) for x in left.split()), tuple(int(x) for x in right.split())))
        except ValueError:
            raise TableauError(f"non-integer entry in {chunk!r}") from None
    return DoubleTableau(tuple(rows))


def is_doubly_standard(t: DoubleTableau) -> bool:
    rows = t.rows
    for i, (p, q) in enumerate(rows):
        if any(a >= b for a, b in zip(p, p[1:])) or any(a >= b for a, b in zip(q, q[1:])):
            return False
        if any(a > b for a, b in zip(p, q)):
            return False
        if i + 1 < len(rows):
            nxt = rows[i + 1][0]
            if any(q[j] > nxt[j] for j in range(len(nxt))):
                return False
    return True


# -- polynomials in the t_ij --------------------------------------------------

@dataclass(frozen=True)
class TPoly:
    """Scalar (``vector is None``) or vector valued polynomial in the ``t_i_j``."""

    scalar: CommPoly | None = None
    vector: tuple | None = None

    @property
    def is_vector(self) -> bool:
        return self.vector is not None

    def __bool__(self):
        if self.is_vector:
            return any(self.vector)
        return bool(self.scalar)

    def __add__(self, o: "TPoly") -> "TPoly":
        self._same(o)
        if self.is_vector:
            return TPoly(vector=tuple(a + b for a, b in zip(self.vector, o.vector)))
        return TPoly(self.scalar + o.scalar)

    def __neg__(self):
        return self * -1

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, TPoly):
            if self.is_vector and o.is_vector:
                raise TypeError("cannot multiply two vectors")
            if self.is_vector:
                return TPoly(vector=tuple(a * o.scalar for a in self.vector))
            if o.is_vector:
                return TPoly(vector=tuple(self.scalar * a for a in o.vector))
            return TPoly(self.scalar * o.scalar)
        if self.is_vector:
            return TPoly(vector=tuple(a * o for a in self.vector))
        return TPoly(self.scalar * o)

    __rmul__ = __mul__

    def _same(self, o):
        if self.is_vector != o.is_vector or (self.is_vector and len(self.vector) != len(o.vector)):
            raise TypeError("mismatched scalar/vector polynomials")

    def coords(self) -> dict:
        """Sparse coefficient vector (keys ``(component, monomial)``)."""
        if self.is_vector:
            return {(j, m): c for j, v in enumerate(self.vector) for m, c in v.terms.items()}
        return {(-1, m): c for m, c in self.scalar.terms.items()}

    def to_json(self):
        if self.is_vector:
            return {"vector": [str(v) for v in self.vector]}
        return {"scalar": str(self.scalar)}

    def __str__(self):
        if self.is_vector:
            return "(" + ", ".join(str(v) for v in self.vector) + ")"
        return str(self.scalar)


def tvar(i: int, j: int) -> str:
    return f"t_{i}_{j}"


@lru_cache(maxsize=None)
def dot(i: int, j: int, n: int) -> CommPoly:
    """``t_i o t_j``."""
    total = ZERO
    for k in range(1, n + 1):
        total = total + CommPoly.gen(tvar(i, k)) * CommPoly.gen(tvar(j, k))
    return total


def tvector(i: int, n: int) -> tuple:
    return tuple(CommPoly.gen(tvar(i, k)) for k in range(1, n + 1))


def _sign(perm) -> int:
    s = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            s = -s
    return s


def _row_phi(p, q, n: int) -> TPoly:
    m = len(p)
    if p[0] == 0:
        vec = [ZERO] * n
        for perm in itertools.permutations(range(m)):
            s = _sign(perm)
            scal = ONE * s
            for i in range(1, m):
                scal = scal * dot(p[i], q[perm[i]], n)
            if scal:
                lead = q[perm[0]]
                for k in range(n):
                    vec[k] = vec[k] + scal * CommPoly.gen(tvar(lead, k + 1))
        return TPoly(vector=tuple(vec))
    total = ZERO
    for perm in itertools.permutations(range(m)):
        term = ONE * _sign(perm)
        for i in range(m):
            term = term * dot(p[i], q[perm[i]], n)
        total = total + term
    return TPoly(total)


def phi(t: DoubleTableau, n: int) -> TPoly:
    if n < 1:
        raise ValueError("n must be >= 1")
    out = None
    for p, q in t.rows:
        r = _row_phi(p, q, n)
        out = r if out is None else out * r
    return out


# -- pair products --------------------------------------------------------------

@dataclass(frozen=True)
class PairProduct:
    """``t_bare * prod (t_i o t_j)``; ``bare`` is None for a scalar product."""

    pairs: tuple
    bare: int | None = None

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        for p in pairs:
            if len(p) != 2 or min(p) < 1:
                raise TableauError("pair factors need two positive indices")
        if self.bare is not None and self.bare < 1:
            raise TableauError("bare vector index must be positive")

    @property
    def zero(self) -> bool:
        return self.bare is not None

    def content(self) -> Counter:
        c = Counter(v for p in self.pairs for v in p)
        if self.bare is not None:
            c[self.bare] += 1
        return c

    def __str__(self):
        parts = [f"t{self.bare}"] if self.bare is not None else []
        parts += [f"(t{i} o t{j})" for i, j in self.pairs]
        return "*".join(parts) or "1"


def phi_product(x: PairProduct, n: int) -> TPoly:
    scal = ONE
    for i, j in x.pairs:
        scal = scal * dot(i, j, n)
    if x.bare is None:
        return TPoly(scal)
    return TPoly(vector=tuple(scal * v for v in tvector(x.bare, n)))


def phi_any(x, n: int) -> TPoly:
    return phi(x, n) if isinstance(x, DoubleTableau) else phi_product(x, n)


# -- enumeration ----------------------------------------------------------------

def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for m in range(min(total, largest), 0, -1):
        for rest in _partitions(total - m, m):
            yield (m,) + rest


def _fill(lengths, remaining: Counter, above, first_fixed):
    """Fill rows of the given lengths with strictly increasing entries taken
    from ``remaining``, each entry >= the entry above it."""
    if not lengths:
        if not +remaining:
            yield ()
        return
    m = lengths[0]
    fixed = first_fixed
    values = sorted(v for v, c in remaining.items() if c > 0)
    need = m - len(fixed)
    for combo in itertools.combinations(values, need):
        row = fixed + combo
        if any(a >= b for a, b in zip(row, row[1:])):
            continue
        if above is not None and any(row[j] < above[j] for j in range(m)):
            continue
        rem = remaining.copy()
        for v in combo:
            rem[v] -= 1
        for rest in _fill(lengths[1:], rem, row, ()):
            yield (row,) + rest


def standard_tableaux(content, n: int | None = None, zero: bool = False) -> list[DoubleTableau]:
    """All doubly standard (0-)tableaux of the given content with first row length <= n."""
    content = Counter(content)
    size = sum(content.values())
    if any(v < 1 for v in content):
        raise TableauError("content entries must be positive")
    slots = size + (1 if zero else 0)
    if slots % 2:
        return []
    half = slots // 2
    out = []
    for shape in _partitions(half, half if n is None else n):
        lengths = [m for m in shape for _ in (0, 1)]
        first = (0,) if zero else ()
        for rows in _fill(lengths, content, None, first):
            t = DoubleTableau(tuple((rows[2 * i], rows[2 * i + 1]) for i in range(len(shape))))
            out.append(t)
    return sorted(out, key=lambda t: (tuple(-m for m in t.shape), t.rows))


def pair_products(content, zero: bool = False) -> list[PairProduct]:
    """All products of pair factors (plus one bare vector if ``zero``) of the content."""
    content = Counter(content)
    out = set()

    def pairings(rem: Counter):
        vals = sorted(v for v, c in rem.items() if c > 0)
        if not vals:
            yield ()
            return
        a = vals[0]
        r1 = rem.copy()
        r1[a] -= 1
        for b in sorted(v for v, c in r1.items() if c > 0):
            r2 = r1.copy()
            r2[b] -= 1
            for rest in pairings(r2):
                yield ((a, b),) + rest

    if zero:
        for a in sorted(content):
            rem = content.copy()
            rem[a] -= 1
            for ps in pairings(rem):
                out.add(PairProduct(ps, a))
    else:
        for ps in pairings(content):
            out.add(PairProduct(ps))
    return sorted(out, key=lambda x: (x.bare or 0, x.pairs))


# -- straightening --------------------------------------------------------------

def straighten(x, n: int, bound: int | None = None) -> list[tuple[Fraction, DoubleTableau]]:
    """Expand ``x`` (a tableau or a :class:`PairProduct`) over doubly standard
    tableaux of the same content with first row length <= n.

    The expansion is found by an exact linear solve and checked term by term;
    a nonzero residual raises.
    """
    content = x.content()
    check_degree(sum(content.values()), bound)
    target = phi_any(x, n)
    basis = standard_tableaux(content, n, zero=x.zero)
    images = [phi(t, n) for t in basis]
    coeffs = solve([im.coords() for im in images], target.coords())
    if coeffs is None:
        raise StraighteningError(f"{x} is not in the span of standard tableaux (n={n})")
    out = [(as_fraction(coeffs[i]), basis[i]) for i in sorted(coeffs)]
    residual = straighten_residual(x, out, n)
    if residual:
        raise StraighteningError(f"nonzero residual {residual}")
    return out


def straighten_residual(x, expansion, n: int) -> TPoly:
    r = phi_any(x, n)
    for c, t in expansion:
        r = r - phi(t, n) * c
    return r


@dataclass
class Certificate:
    content: dict
    n: int
    zero: bool
    count: int
    dim: int
    rank: int
    independent: bool
    spans: bool

    @property
    def ok(self) -> bool:
        return self.independent and self.spans

    def to_json(self) -> dict:
        return {"content": {str(k): v for k, v in sorted(self.content.items())}, "n": self.n,
                "zero": self.zero, "count": self.count, "dim": self.dim, "rank": self.rank,
                "independent": self.independent, "spans": self.spans}


def standard_basis_certificate(content, n: int, zero: bool = False,
                               bound: int | None = None) -> Certificate:
    """Compare doubly standard tableaux with the span of all products of the content."""
    content = Counter(content)
    check_degree(sum(content.values()), bound)
    std = [phi(t, n).coords() for t in standard_tableaux(content, n, zero)]
    prods = [phi_product(x, n).coords() for x in pair_products(content, zero)]
    ech = Echelon()
    r_std = ech.extend(std)
    r_all = r_std + ech.extend(prods)
    dim = Echelon()
    d = dim.extend(prods)
    return Certificate(dict(content), n, zero, len(std), d, r_std,
                       independent=r_std == len(std), spans=r_all == r_std and r_std == d)


def contents(pair_degree: int, zero: bool = False):
    """Canonical contents: compositions of ``2k`` (plus one if ``zero``) on indices 1, 2, ..."""
    size = 2 * pair_degree + (1 if zero else 0)

    def comps(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in comps(total - first):
                yield (first,) + rest

    for c in comps(size):
        yield Counter({i + 1: k for i, k in enumerate(c)})


# -- the polynomials g_n --------------------------------------------------------

def build_gn(n: int, kind: str = "z") -> JordanPoly:
    """``sum_sigma sgn(sigma) v_s1 (v_{n+2} v_s2) ... (v_{2n+1} v_s(n+1))``, left normed.

    ``kind="z"`` gives the graded polynomial; ``kind="x"`` the ungraded
    version used for weak identities.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    v = [JordanPoly.var(f"{kind}{i}") for i in range(1, 2 * n + 2)]
    total = JordanPoly()
    for perm in itertools.permutations(range(n + 1)):
        factors = [v[perm[0]]] + [v[n + i] * v[perm[i]] for i in range(1, n + 1)]
        total = total + product(factors) * _sign(perm)
    return total
