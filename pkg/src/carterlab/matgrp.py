"""Classical matrix groups over GF(q) and their permutation realizations.

Matrices are numpy arrays of field-element indices (see :mod:`carterlab.gf`);
arithmetic goes through the cached field tables. Linear groups act on row
vectors from the right, v -> v A, and a semilinear element (A, e) acts by
v -> frobenius(v, e) A. Groups are realized either on nonzero vectors or on
projective points (vectors normalized so the first nonzero entry is 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from dataclasses import field as dc_field
from math import gcd, prod

import numpy as np
from sympy import factorint

from .errors import BadParameters, NotStabilized, TooLarge
from .gf import field_make
from .perm import PermGroup, symmetric_group, alternating_group

MAX_DEGREE = 10**4

FAMILIES = ("GL", "SL", "PGL", "PSL", "Sp", "PSp", "GU", "SU", "PGU", "PSU", "Sym", "Alt")


def prime_power(q):
    f = factorint(q)
    if len(f) != 1:
        raise BadParameters(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return p, k


# ---------------------------------------------------------------------------
# matrices over table-backed fields


class Matrix:
    """An n x n matrix over a FieldSpec, stored as an index array."""

    def __init__(self, F, a):
        self.F = F
        self.a = np.asarray(a, dtype=np.int32)
        if self.a.ndim != 2 or self.a.shape[0] != self.a.shape[1]:
            raise BadParameters("matrix must be square")

    @property
    def n(self):
        return self.a.shape[0]

    @classmethod
    def identity(cls, F, n):
        return cls(F, np.eye(n, dtype=np.int32))

    @classmethod
    def from_elems(cls, F, rows):
        return cls(F, [[F.elem(x).index for x in row] for row in rows])

    def entries(self):
        return [[self.F.elem(int(x)) for x in row] for row in self.a]

    def __mul__(self, other):
        return Matrix(self.F, mat_mul(self.F, self.a, other.a))

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.F == other.F and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash(self.a.tobytes())

    def __repr__(self):
        return f"Matrix({self.F!r}, {self.a.tolist()})"

    def frobenius(self, e=1):
        return Matrix(self.F, frob_array(self.F, self.a, e))

    def det(self):
        return self.F.elem(int(det_index(self.F, self.a)))

    def inverse(self):
        return Matrix(self.F, mat_inv(self.F, self.a))

    def transpose(self):
        return Matrix(self.F, self.a.T.copy())

    def key(self):
        return self.a.tobytes()


def _add_reduce(add, terms, axis):
    terms = np.moveaxis(terms, axis, 0)
    acc = terms[0]
    for t in terms[1:]:
        acc = add[acc, t]
    return acc


def mat_mul(F, a, b):
    t = F.tables()
    prods = t["mul"][a[:, :, None], b[None, :, :]]
    return _add_reduce(t["add"], prods, 1).astype(np.int32)


def frob_array(F, a, e=1):
    e %= F.k
    t = F.tables()
    for _ in range(e):
        a = t["frob"][a]
    return np.asarray(a, dtype=np.int32)


def mat_inv(F, a):
    """Gauss-Jordan inverse over the field."""
    t = F.tables()
    add, mul, neg, inv = t["add"], t["mul"], t["neg"], t["inv"]
    n = a.shape[0]
    m = np.concatenate([a.astype(np.int32), np.eye(n, dtype=np.int32)], axis=1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r, c]), None)
        if piv is None:
            raise BadParameters("matrix is singular")
        m[[c, piv]] = m[[piv, c]]
        m[c] = mul[m[c], inv[m[c, c]]]
        for r in range(n):
            if r != c and m[r, c]:
                m[r] = add[m[r], neg[mul[m[c], m[r, c]]]]
    return m[:, n:].copy()


def det_index(F, a):
    t = F.tables()
    add, mul, neg, inv = t["add"], t["mul"], t["neg"], t["inv"]
    m = a.astype(np.int32).copy()
    n = m.shape[0]
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r, c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[[c, piv]] = m[[piv, c]]
            d = neg[d]
        d = mul[d, m[c, c]]
        ic = inv[m[c, c]]
        for r in range(c + 1, n):
            if m[r, c]:
                f = mul[m[r, c], ic]
                m[r] = add[m[r], neg[mul[m[c], f]]]
    return int(d)


# ---------------------------------------------------------------------------
# semilinear elements


@dataclass(frozen=True)
class SemilinearElement:
    """v -> frobenius(v, frob) * mat."""

    mat: Matrix
    frob: int = 0

    def __mul__(self, other):
        F = self.mat.F
        k = F.k
        return SemilinearElement(self.mat.frobenius(other.frob) * other.mat, (self.frob + other.frob) % k)

    def inverse(self):
        k = self.mat.F.k
        e = (k - self.frob) % k
        return SemilinearElement(self.mat.inverse().frobenius(e), e)

    def __eq__(self, other):
        return isinstance(other, SemilinearElement) and self.frob == other.frob and self.mat == other.mat

    def __hash__(self):
        return hash((self.mat.key(), self.frob))


# ---------------------------------------------------------------------------
# point sets and actions


class PointSet:
    """Nonzero vectors of GF(q)^n, or projective points, with index lookup."""

    def __init__(self, F, n, projective):
        q = F.q
        if q**n - 1 > 10**6:
            raise TooLarge("vector space too large")
        self.F, self.n, self.projective = F, n, projective
        allv = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int32)[:, ::-1]
        allv = allv[1:]
        if projective:
            first = allv[np.arange(len(allv)), (allv != 0).argmax(axis=1)]
            allv = allv[first == 1]
        self.vectors = allv
        if len(allv) > MAX_DEGREE:
            raise TooLarge(f"permutation degree {len(allv)} exceeds {MAX_DEGREE}")
        self._weights = q ** np.arange(n, dtype=np.int64)
        self._pos = np.full(q**n, -1, dtype=np.int64)
        self._pos[allv @ self._weights] = np.arange(len(allv))

    @property
    def degree(self):
        return len(self.vectors)

    def normalize(self, V):
        if not self.projective:
            return V
        t = self.F.tables()
        lead = V[np.arange(len(V)), (V != 0).argmax(axis=1)]
        s = t["inv"][lead]
        return t["mul"][V, s[:, None]]

    def image(self, A, e=0):
        """The permutation induced by the semilinear map (A, e)."""
        F = self.F
        t = F.tables()
        V = frob_array(F, self.vectors, e) if e else self.vectors
        a = A.a if isinstance(A, Matrix) else np.asarray(A)
        prods = t["mul"][V[:, :, None], a[None, :, :]]
        W = _add_reduce(t["add"], prods, 1)
        W = self.normalize(W)
        idx = self._pos[W.astype(np.int64) @ self._weights]
        if (idx < 0).any():
            raise BadParameters("matrix is singular")
        return tuple(int(i) for i in idx)

    def index_of(self, v):
        v = np.asarray([self.F.elem(x).index if not isinstance(x, (int, np.integer)) else int(x) for x in v])
        v = self.normalize(v[None, :])[0]
        return int(self._pos[int(v.astype(np.int64) @ self._weights)])


@dataclass
class GroupInstance:
    """A concrete group: descriptor, permutation realization and named elements."""

    descriptor: dict
    perm: PermGroup
    labels: dict = dc_field(default_factory=dict)
    field: object = None
    n: int = 0
    generators: list = dc_field(default_factory=list)
    points: PointSet | None = None

    def order(self):
        return self.perm.order()

    def element(self, A, e=0):
        if self.points is None:
            raise BadParameters("instance is not realized by matrices")
        if isinstance(A, SemilinearElement):
            A, e = A.mat, A.frob
        return self.points.image(A, e)


# ---------------------------------------------------------------------------
# generators


def _additive_basis(F):
    return [F.elem(tuple(1 if i == j else 0 for i in range(F.k))).index for j in range(F.k)]


def _elementary(F, n, i, j, t):
    a = np.eye(n, dtype=np.int32)
    a[i, j] = t
    return Matrix(F, a)


def _diag(F, entries):
    return Matrix(F, np.diag(np.asarray(entries, dtype=np.int32)))


def _sl_gens(F, n):
    gens = []
    for t in _additive_basis(F):
        for i in range(n - 1):
            gens.append(_elementary(F, n, i, i + 1, t))
            gens.append(_elementary(F, n, i + 1, i, t))
    return gens


def _gl_gens(F, n):
    w = F.primitive_index()
    return _sl_gens(F, n) + [_diag(F, [w] + [1] * (n - 1))]


def symplectic_form(F, m):
    """Gram matrix J = [[0, I], [-I, 0]] of size 2m."""
    t = F.tables()
    J = np.zeros((2 * m, 2 * m), dtype=np.int32)
    for i in range(m):
        J[i, m + i] = 1
        J[m + i, i] = t["neg"][1]
    return Matrix(F, J)


def _transvection(F, J, u, c):
    """v -> v + c * B(v, u) u with B(v, w) = v J w^T."""
    t = F.tables()
    n = len(u)
    Ju = np.zeros(n, dtype=np.int32)
    for i in range(n):
        Ju[i] = _add_reduce(t["add"], t["mul"][J.a[i], np.asarray(u)][:, None], 0)[0]
    a = np.eye(n, dtype=np.int32)
    cu = t["mul"][c, np.asarray(u)]
    for i in range(n):
        a[i] = t["add"][a[i], t["mul"][Ju[i], cu]]
    return Matrix(F, a)


def _sp_gens(F, n):
    if n % 2:
        raise BadParameters("symplectic groups need even dimension")
    m = n // 2
    J = symplectic_form(F, m)
    vecs = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        vecs.append(v)
    for i in range(n - 1):
        v = [0] * n
        v[i] = v[i + 1] = 1
        vecs.append(v)
    for i in range(m):
        v = [0] * n
        v[i] = v[m + i] = 1
        vecs.append(v)
    return [_transvection(F, J, u, c) for u in vecs for c in _additive_basis(F)]


def unitary_form(n, q):
    """The Hermitian form used for GU(n, q): the identity over GF(q^2)."""
    p, k = prime_power(q)
    F = field_make(p, 2 * k)
    return Matrix.identity(F, n)


def _conj_transpose(F, a, q):
    """Entrywise x -> x^q, transposed."""
    k0 = F.k // 2
    return frob_array(F, a, k0).T.copy()


def is_unitary(A, q):
    F = A.F
    prod_ = mat_mul(F, A.a, _conj_transpose(F, A.a, q))
    return np.array_equal(prod_, np.eye(A.n, dtype=np.int32))


def _u2_blocks(F, q, special):
    """All 2x2 unitary matrices over GF(q^2) (determinant 1 when special)."""
    t = F.tables()
    Q = F.q
    k0 = F.k // 2
    fq = np.arange(Q)
    for _ in range(k0):
        fq = t["frob"][fq]
    norm = t["mul"][np.arange(Q), fq]
    out = []
    pairs = [(a, b) for a in range(Q) for b in range(Q) if t["add"][norm[a], norm[b]] == 1]
    units = [l for l in range(1, Q) if norm[l] == 1]
    for a, b in pairs:
        for lam in units:
            c = t["neg"][t["mul"][lam, fq[b]]]
            d = t["mul"][lam, fq[a]]
            A = Matrix(F, [[a, b], [c, d]])
            if special and det_index(F, A.a) != 1:
                continue
            out.append(A)
    return out


def _embed(F, n, block, i):
    a = np.eye(n, dtype=np.int32)
    a[i:i + 2, i:i + 2] = block.a
    return Matrix(F, a)


def _norm_one_units(F):
    t = F.tables()
    k0 = F.k // 2
    return [l for l in range(1, F.q) if t["mul"][l, frob_array(F, np.array([l]), k0)[0]] == 1]


def _hermitian(F, x, y):
    """h(x, y) = sum x_i y_i^q."""
    t = F.tables()
    yq = frob_array(F, np.asarray(y), F.k // 2)
    return int(_add_reduce(t["add"], t["mul"][np.asarray(x), yq][:, None], 0)[0])


def unitary_reflection(F, v, lam):
    """x -> x + c h(x, v) v with c = (lam - 1) / h(v, v); unitary when lam^(q+1) = 1."""
    t = F.tables()
    n = len(v)
    hv = _hermitian(F, v, v)
    c = t["mul"][t["add"][lam, t["neg"][1]], t["inv"][hv]]
    vq = frob_array(F, np.asarray(v), F.k // 2)
    a = np.eye(n, dtype=np.int32)
    for i in range(n):
        a[i] = t["add"][a[i], t["mul"][t["mul"][c, vq[i]], np.asarray(v)]]
    return Matrix(F, a)


def _unitary_gens(F, n, q, special):
    import random

    units = _norm_one_units(F)
    w = max(units, key=lambda l: F.elem(l).multiplicative_order())
    if n == 1:
        return [] if special else [Matrix(F, [[w]])]
    gens = []
    for b in _u2_blocks(F, q, special):
        for i in range(n - 1):
            gens.append(_embed(F, n, b, i))
    rng = random.Random(q * 100 + n)
    vecs = []
    for _ in range(400):
        v = [rng.randrange(1, F.q) for _ in range(n)]
        if _hermitian(F, v, v) != 0:
            vecs.append(v)
        if len(vecs) >= 6:
            break
    winv = int(F.tables()["inv"][w])
    for i, v in enumerate(vecs):
        r = unitary_reflection(F, v, w)
        if special:
            u = vecs[(i + 1) % len(vecs)]
            gens.append(r * unitary_reflection(F, u, winv))
        else:
            gens.append(r)
    if not special:
        gens.append(_diag(F, [w] + [1] * (n - 1)))
    return gens


# ---------------------------------------------------------------------------
# orders


def classical_order(family, n, q):
    """Order of the named classical group (closed-form)."""
    if family == "Sym":
        return prod(range(1, n + 1))
    if family == "Alt":
        return prod(range(1, n + 1)) // 2 if n > 1 else 1
    if family in ("GL", "SL", "PGL", "PSL"):
        gl = q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))
        if family == "GL":
            return gl
        sl = gl // (q - 1)
        if family in ("SL", "PGL"):
            return sl
        return sl // gcd(n, q - 1)
    if family in ("Sp", "PSp"):
        m = n // 2
        sp = q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return sp if family == "Sp" else sp // gcd(2, q - 1)
    if family in ("GU", "SU", "PGU", "PSU"):
        gu = q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))
        if family == "GU":
            return gu
        su = gu // (q + 1)
        if family in ("SU", "PGU"):
            return su
        return su // gcd(n, q + 1)
    raise BadParameters(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# constructors


def _select_generators(points, mats, target, extra=()):
    """A short sublist of mats whose permutation images generate a group of the target order."""
    perms = [points.image(A) for A in mats]
    chosen, chosen_p = [], []
    G = None
    import random

    rng = random.Random(len(mats))
    order_ = list(range(len(mats)))
    rng.shuffle(order_)
    for i in order_:
        if perms[i] in chosen_p:
            continue
        cand = PermGroup(points.degree, chosen_p + [perms[i]], check=False)
        if G is None or cand.order() > G.order():
            chosen.append(mats[i])
            chosen_p.append(perms[i])
            G = cand
            if G.order() == target:
                break
    return chosen, chosen_p


def classical_group(family, n, q=None):
    """Permutation realization of a classical group (or Sym/Alt of degree n)."""
    if family not in FAMILIES:
        raise BadParameters(f"unknown family {family!r}")
    if family in ("Sym", "Alt"):
        if n < 1:
            raise BadParameters("degree must be positive")
        G = symmetric_group(n) if family == "Sym" else alternating_group(n)
        G.name = f"{family}({n})"
        return GroupInstance({"family": family, "n": n}, G)
    if q is None:
        raise BadParameters("field size required")
    n, q = int(n), int(q)
    if n < 1:
        raise BadParameters("dimension must be positive")
    p, k = prime_power(q)
    projective = family.startswith("P")
    base = family[1:] if projective else family
    if base in ("GU", "SU"):
        F = field_make(p, 2 * k)
    else:
        F = field_make(p, k)
    if base == "Sp" and n % 2:
        raise BadParameters("symplectic groups need even dimension")
    points = PointSet(F, n, projective)
    if base == "GL":
        mats = _gl_gens(F, n)
        lin = "GL"
    elif base == "SL":
        mats = _sl_gens(F, n)
        lin = "SL"
    elif base == "Sp":
        mats = _sp_gens(F, n)
        lin = "Sp"
    elif base == "GU":
        mats = _unitary_gens(F, n, q, special=False)
        lin = "GU"
    else:
        mats = _unitary_gens(F, n, q, special=True)
        lin = "SU"
    target = classical_order(family, n, q)
    chosen, perms = _select_generators(points, mats, target)
    name = f"{family}({n},{q})"
    G = PermGroup(points.degree, perms, order=None, name=name, check=False)
    if G.order() != target:
        raise AssertionError(f"{name}: got order {G.order()}, expected {target}")
    desc = {"family": family, "n": n, "q": q, "p": p, "projective": projective, "linear": lin,
            "frob": 0}
    labels = {f"g{i}": g for i, g in enumerate(perms)}
    return GroupInstance(desc, G, labels, F, n, [SemilinearElement(A, 0) for A in chosen], points)


def matrix_group(q, n, matrices, projective=False, field_k=None):
    """Group generated by explicit matrices (entries are field-element indices)."""
    p, k = prime_power(q)
    F = field_make(p, k)
    points = PointSet(F, n, projective)
    mats = [Matrix(F, m) for m in matrices]
    for A in mats:
        if det_index(F, A.a) == 0:
            raise BadParameters("singular generator")
    perms = [points.image(A) for A in mats]
    G = PermGroup(points.degree, perms, check=False, name=f"<matrices over GF({q})>")
    desc = {"family": "matrix", "n": n, "q": q, "p": p, "projective": projective, "frob": 0}
    return GroupInstance(desc, G, {f"g{i}": g for i, g in enumerate(perms)}, F, n,
                         [SemilinearElement(A, 0) for A in mats], points)


def projective_reduction(G):
    """The same matrices acting on projective points (kernel: the scalars of G)."""
    if G.points is None:
        raise BadParameters("instance is not realized by matrices")
    if G.points.projective:
        return G
    points = PointSet(G.field, G.n, True)
    perms = [points.image(s.mat, s.frob) for s in G.generators]
    desc = dict(G.descriptor)
    desc["projective"] = True
    fam = desc.get("family", "")
    if fam in ("GL", "SL", "Sp", "GU", "SU"):
        desc["family"] = "P" + fam
    name = f"P{G.perm.name}" if G.perm.name and not G.perm.name.startswith("P") else G.perm.name
    P = PermGroup(points.degree, perms, check=False, name=name)
    return GroupInstance(desc, P, {f"g{i}": g for i, g in enumerate(perms)}, G.field, G.n,
                         list(G.generators), points)


def scalar_subgroup_order(G):
    """Number of scalar matrices in the vector-realized group G (exhaustive scalar scan)."""
    F = G.field
    count = 0
    for lam in range(1, F.q):
        A = Matrix(F, np.diag([lam] * G.n).astype(np.int32))
        if G.perm.contains(G.points.image(A)):
            count += 1
    return count


def frobenius_normalizes(G, e, twist=None):
    x = G.points.image(twist.a if twist is not None else np.eye(G.n, dtype=np.int32), e)
    from .perm import conj

    return all(G.perm.contains(conj(g, x)) for g in G.perm.gens), x


def semilinear_extend(G, e, twist=None):
    """<G, (twist, e)>: adjoin a Frobenius power, optionally twisted by a matrix."""
    if G.points is None:
        raise BadParameters("instance is not realized by matrices")
    F = G.field
    e = int(e) % F.k
    if twist is not None and not isinstance(twist, Matrix):
        twist = Matrix(F, twist)
    if e == 0 and twist is None:
        return G
    ok, x = frobenius_normalizes(G, e, twist)
    if not ok:
        raise NotStabilized("the semilinear map does not normalize G")
    perm = G.perm.extend([x])
    tag = f"phi^{e}" if twist is None else f"(A,phi^{e})"
    perm.name = f"{G.perm.name}:{tag}" if G.perm.name else None
    desc = dict(G.descriptor)
    desc["frob"] = e
    desc["twisted"] = twist is not None
    labels = dict(G.labels)
    labels["zeta" if twist is not None else "phi"] = x
    gens = list(G.generators) + [SemilinearElement(twist or Matrix.identity(F, G.n), e)]
    return GroupInstance(desc, perm, labels, F, G.n, gens, G.points)


def wreath_counterexample(q=27):
    """G = ((S x S) : <(phi, phi^-1)>) : Sym_2 inside L wr Sym_2, L = PSL(2,q) : <phi>.

    Returns dict with G, H = S x S, M_cap = G cap (L x L) and the base group L, all
    as permutation groups on two copies of the projective line (degree 2(q+1)).
    """
    from .perm import PermGroup, inv

    S = classical_group("PSL", 2, q)
    p, k = prime_power(q)
    L = semilinear_extend(S, 1)
    phi = L.labels["phi"]
    m = L.perm.degree

    def left(g):
        return tuple(g) + tuple(range(m, 2 * m))

    def right(g):
        return tuple(range(m)) + tuple(m + x for x in g)

    def pair(a, b):
        return tuple(a) + tuple(m + x for x in b)

    swap = tuple(range(m, 2 * m)) + tuple(range(m))
    hgens = [left(g) for g in S.perm.gens] + [right(g) for g in S.perm.gens]
    d = pair(phi, inv(phi))
    s_order = S.perm.order()
    H = PermGroup(2 * m, hgens, order=s_order**2, name="H", check=False)
    Mcap = PermGroup(2 * m, hgens + [d], order=s_order**2 * k, name="G cap M", check=False)
    G = PermGroup(2 * m, hgens + [d, swap], order=s_order**2 * k * 2, name="G", check=False)
    return {"G": G, "H": H, "G_cap_M": Mcap, "L": L.perm, "S": S.perm, "swap": swap, "d": d}
