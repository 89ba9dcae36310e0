"""Chevalley bases, adjoint Chevalley groups over GF(q) and table checks.

The Lie algebra has basis h_1..h_n, e_r (r in the root list of
:mod:`carterlab.rootsys`). Structure constants N_{r,s} are fixed by making
every extraspecial pair positive under the (height, lex) order of positive
roots. Group elements are matrices acting on coordinate columns, so the matrix
product is composition of maps; x_r(t) = sum_i t^i (ad e_r)^i / i!, with the
divided powers computed over the integers before reduction mod p.

Commutators follow [a, b] = a^-1 b^-1 a b, and the commutator formula is
checked in the form

    [x_s(u), x_r(t)] = prod_{i,j>0} x_{ir+js}(C_{ijrs} (-t)^i u^j)

with the product taken in increasing order of i + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial, gcd

import numpy as np

from .errors import BadParameters, NotATorusElement, ZeroParameter
from .gf import field_make
from .rootsys import root_system

# ---------------------------------------------------------------------------
# structure constants


@dataclass
class StructureConstants:
    Phi: object
    N: dict
    C: dict = dc_field(default_factory=dict)

    @property
    def dim(self):
        return self.Phi.rank + len(self.Phi.roots)

    def n(self, r, s):
        return self.N.get((tuple(r), tuple(s)), 0)

    def basis_index(self, r):
        return self.Phi.rank + self.Phi.index[tuple(r)]

    @property
    def bracket(self):
        return _bracket_tensor(self)

    @property
    def ad(self):
        return _ad_matrices(self)

    @property
    def divided_powers(self):
        return _divided_powers(self)


def _string_below(Phi, r, s):
    """Largest p with s - p r a root."""
    p = 0
    while tuple(b - (p + 1) * a for a, b in zip(r, s)) in Phi.index:
        p += 1
    return p


def _sub(r, s):
    return tuple(a - b for a, b in zip(r, s))


def _addv(r, s):
    return tuple(a + b for a, b in zip(r, s))


def _neg(r):
    return tuple(-a for a in r)


@lru_cache(maxsize=None)
def structure_constants(label):
    """N_{r,s} for all roots r, s with r + s a root (extraspecial signs positive)."""
    Phi = root_system(label) if isinstance(label, str) else label
    pos = Phi.positive  # ordered by (height, lex)
    rank_of = {r: i for i, r in enumerate(pos)}
    posset = set(pos)
    norm = Phi.norm
    Npos = {}

    def N(a, b):
        """N_{a,b} for arbitrary roots with a + b a root, from the positive table."""
        pa, pb = a in posset, b in posset
        if pa and pb:
            return Npos[(a, b)]
        if not pa and not pb:
            return -Npos[(_neg(a), _neg(b))]
        c = _neg(_addv(a, b))
        # a + b + c = 0: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
        if c in posset:
            # c and the positive one of a, b
            if pa:
                val = Fraction(norm(c), norm(b)) * N(c, a)
            else:
                val = Fraction(norm(c), norm(a)) * N(b, c)
        else:
            if pa:
                val = Fraction(norm(c), norm(a)) * N(b, c)
            else:
                val = Fraction(norm(c), norm(b)) * N(c, a)
        assert val.denominator == 1
        return int(val)

    for xi in pos:
        pairs = [(r, _sub(xi, r)) for r in pos if _sub(xi, r) in posset]
        if not pairs:
            continue
        zeta, eta = min(pairs, key=lambda pr: rank_of[pr[0]])
        p = _string_below(Phi, zeta, eta)
        Npos[(zeta, eta)] = p + 1
        Npos[(eta, zeta)] = -(p + 1)
        nz = Npos[(zeta, eta)]
        for r, s in pairs:
            if (r, s) in Npos:
                continue
            total = Fraction(0)
            # r + s + (-zeta) + (-eta) = 0, no two opposite
            a = _sub(s, zeta)
            if a in Phi.index:
                total += Fraction(N(s, _neg(zeta)) * N(r, _neg(eta)), norm(a))
            b = _sub(r, zeta)
            if b in Phi.index:
                total += Fraction(N(_neg(zeta), r) * N(s, _neg(eta)), norm(b))
            val = Fraction(norm(xi), nz) * total
            assert val.denominator == 1
            Npos[(r, s)] = int(val)
            Npos[(s, r)] = -int(val)
    full = {}
    for a in Phi.roots:
        for b in Phi.roots:
            if _addv(a, b) in Phi.index:
                full[(a, b)] = N(a, b)
    sc = StructureConstants(Phi, full)
    sc.C = _commutator_constants(sc)
    return sc


def _M(sc, r, s, i):
    """M_{r,s,i} = (1/i!) prod_{k<i} N_{r, kr+s}."""
    val = Fraction(1)
    cur = tuple(s)
    for k in range(i):
        val *= sc.n(r, cur)
        cur = _addv(cur, r)
    return val / factorial(i)


def _commutator_constants(sc):
    Phi = sc.Phi
    C = {}
    for r in Phi.roots:
        for s in Phi.roots:
            if r == s or r == _neg(s):
                continue
            for i in range(1, 4):
                for j in range(1, 4):
                    t = tuple(i * a + j * b for a, b in zip(r, s))
                    if t not in Phi.index:
                        continue
                    if j == 1:
                        v = _M(sc, r, s, i)
                    elif i == 1:
                        v = (-1) ** j * _M(sc, s, r, j)
                    elif (i, j) == (3, 2):
                        v = Fraction(1, 3) * _M(sc, _addv(r, s), r, 2)
                    elif (i, j) == (2, 3):
                        v = Fraction(-2, 3) * _M(sc, _addv(s, r), s, 2)
                    else:
                        raise AssertionError("unexpected root combination")
                    assert v.denominator == 1
                    C[(i, j, r, s)] = int(v)
    return C


@lru_cache(maxsize=None)
def _bracket_cache(label):
    sc = structure_constants(label)
    Phi = sc.Phi
    n = Phi.rank
    dim = sc.dim
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    simple_norms = [Phi.norm(a) for a in Phi.simple]
    for r in Phi.roots:
        ir = sc.basis_index(r)
        for i in range(n):
            pair = 2 * Phi.inner(r, Phi.simple[i]) // simple_norms[i]
            c[i, ir, ir] = pair
            c[ir, i, ir] = -pair
        for s in Phi.roots:
            js = sc.basis_index(s)
            if s == _neg(r):
                # [e_r, e_-r] = h_r = sum c_i (r_i, r_i)/(r, r) h_i
                nr = Phi.norm(r)
                for i in range(n):
                    v = Fraction(r[i] * simple_norms[i], nr)
                    assert v.denominator == 1
                    c[ir, js, i] = int(v)
            else:
                t = _addv(r, s)
                if t in Phi.index:
                    c[ir, js, sc.basis_index(t)] = sc.n(r, s)
    return c


def _bracket_tensor(sc):
    return _bracket_cache(sc.Phi.type_label)


def _ad_matrices(sc):
    """ad(b_x) as integer matrices acting on coordinate columns: (ad x)[k, j] = c[x, j, k]."""
    c = _bracket_tensor(sc)
    return np.transpose(c, (0, 2, 1))


@lru_cache(maxsize=None)
def _divided_powers_cache(label):
    sc = structure_constants(label)
    ad = _ad_matrices(sc)
    out = {}
    dim = sc.dim
    for r in sc.Phi.roots:
        A = ad[sc.basis_index(r)]
        mats = [np.eye(dim, dtype=np.int64)]
        P = np.eye(dim, dtype=np.int64)
        for i in range(1, 4):
            P = P @ A
            if not P.any():
                break
            assert (P % factorial(i) == 0).all()
            mats.append(P // factorial(i))
        assert not (P @ A).any() or len(mats) < 4
        out[r] = mats
    return out


def _divided_powers(sc):
    return _divided_powers_cache(sc.Phi.type_label)


def jacobi_check(label, sample=None, seed=0):
    """Number of basis triples violating the Jacobi identity (0 means pass).

    Exhaustive for rank <= 4; otherwise ``sample`` random triples (deterministic).
    """
    c = _bracket_cache(label)
    dim = c.shape[0]
    Phi = root_system(label)
    if Phi.rank <= 4 and sample is None:
        # J[x,y,z,:] = [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
        t1 = np.einsum("yzk,xkm->xyzm", c, c)
        J = t1 + np.transpose(t1, (2, 0, 1, 3)) + np.transpose(t1, (1, 2, 0, 3))
        return int(np.count_nonzero(J.any(axis=3)))
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(sample or 20000):
        x, y, z = rng.integers(0, dim, 3)
        v = c[x] .T @ c[y, z] + c[y].T @ c[z, x] + c[z].T @ c[x, y]
        bad += bool(v.any())
    return bad


# ---------------------------------------------------------------------------
# matrices over GF(q)


class FqMatrices:
    """Matrix arithmetic over GF(q): modular integers for primes, tables otherwise."""

    def __init__(self, q):
        from .matgrp import prime_power

        p, k = prime_power(q)
        self.p, self.k, self.q = p, k, q
        self.F = field_make(p, k)
        if k > 1:
            self.t = self.F.tables()

    def scalar(self, x):
        """Field element (FieldElem or int index) -> internal scalar."""
        if hasattr(x, "index"):
            return x.index
        return int(x) % self.p if self.k == 1 else int(x)

    def from_int(self, M):
        M = np.asarray(M, dtype=np.int64) % self.p
        return M  # prime-field digits are the indices 0..p-1

    def add(self, A, B):
        if self.k == 1:
            return (A + B) % self.p
        return self.t["add"][A, B]

    def smul(self, s, A):
        if self.k == 1:
            return (s * A) % self.p
        return self.t["mul"][s, A]

    def mul(self, A, B):
        if self.k == 1:
            return (A @ B) % self.p
        prods = self.t["mul"][A[:, :, None], B[None, :, :]]
        acc = prods[:, 0, :]
        for j in range(1, prods.shape[1]):
            acc = self.t["add"][acc, prods[:, j, :]]
        return acc

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def spow(self, s, i):
        return self.F.elem(s) ** i if self.k > 1 else pow(s, i, self.p)

    def sval(self, s, i):
        """Internal scalar for s^i."""
        v = self.spow(s, i)
        return v.index if self.k > 1 else v

    def neg_s(self, s):
        return (-s) % self.p if self.k == 1 else int(self.t["neg"][s])

    def inv_s(self, s):
        if s == 0:
            raise ZeroParameter("zero has no inverse")
        return pow(s, -1, self.p) if self.k == 1 else int(self.t["inv"][s])

    def mul_s(self, a, b):
        return (a * b) % self.p if self.k == 1 else int(self.t["mul"][a, b])

    def add_s(self, a, b):
        return (a + b) % self.p if self.k == 1 else int(self.t["add"][a, b])

    def elements(self):
        return list(range(self.q))

    def inverse(self, A):
        from .matgrp import mat_inv

        if self.k == 1:
            return _modinv_matrix(A, self.p)
        return mat_inv(self.F, A.astype(np.int32)).astype(np.int64)

    def key(self, A):
        return np.ascontiguousarray(A, dtype=np.int8 if self.q <= 127 else np.int16).tobytes()


def _modinv_matrix(A, p):
    n = A.shape[0]
    m = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r, c] % p)
        m[[c, piv]] = m[[piv, c]]
        m[c] = (m[c] * pow(int(m[c, c]), -1, p)) % p
        nz = np.nonzero(m[:, c])[0]
        for r in nz:
            if r != c:
                m[r] = (m[r] - m[r, c] * m[c]) % p
    return m[:, n:].copy()


# ---------------------------------------------------------------------------
# group elements


@dataclass
class ChevalleyElement:
    mat: np.ndarray
    tag: str = ""

    def __mul__(self, other):
        raise TypeError("multiply elements through their ChevalleyGroup")


class ChevalleyGroup:
    """The adjoint Chevalley group of type Phi over GF(q), as matrices."""

    def __init__(self, label, q):
        self.sc = structure_constants(label)
        self.Phi = self.sc.Phi
        self.q = q
        self.R = FqMatrices(q)
        self.dim = self.sc.dim
        self._dp = {r: [self.R.from_int(M) for M in mats] for r, mats in _divided_powers(self.sc).items()}

    def identity(self):
        return ChevalleyElement(self.R.eye(self.dim), "1")

    def mul(self, *xs):
        M = xs[0].mat
        for x in xs[1:]:
            M = self.R.mul(M, x.mat)
        return ChevalleyElement(M, "*".join(x.tag for x in xs))

    def inv(self, x):
        return ChevalleyElement(self.R.inverse(x.mat), f"({x.tag})^-1")

    def eq(self, x, y):
        return np.array_equal(x.mat, y.mat)

    def is_identity(self, x):
        return np.array_equal(x.mat, self.R.eye(self.dim))

    def comm(self, x, y):
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.inv(x), self.inv(y), x, y)

    def conj(self, x, h):
        """h x h^-1."""
        return self.mul(h, x, self.inv(h))

    def x(self, r, t):
        r = tuple(r)
        s = self.R.scalar(t)
        M = self.R.eye(self.dim)
        for i, D in enumerate(self._dp[r][1:], start=1):
            ti = self.R.sval(s, i)
            if ti:
                M = self.R.add(M, self.R.smul(ti, D))
        return ChevalleyElement(M, f"x{r}({t})")

    def n(self, r, t):
        s = self.R.scalar(t)
        if s == 0:
            raise ZeroParameter("n_r(t) needs t != 0")
        minv = self.R.neg_s(self.R.inv_s(s))
        e = self.mul(self.x(r, s), self.x(_neg(tuple(r)), minv), self.x(r, s))
        e.tag = f"n{tuple(r)}({t})"
        return e

    def h(self, r, t):
        s = self.R.scalar(t)
        if s == 0:
            raise ZeroParameter("h_r(t) needs t != 0")
        e = self.mul(self.n(r, s), self.n(r, self.R.neg_s(1)))
        e.tag = f"h{tuple(r)}({t})"
        return e

    def element(self, form, r, t):
        if form in ("x", "x_r"):
            return self.x(r, t)
        if form in ("n", "n_r"):
            return self.n(r, t)
        if form in ("h", "h_r"):
            return self.h(r, t)
        raise BadParameters(f"unknown element form {form!r}")

    def order(self, x, limit=10**4):
        M = x.mat
        eye = self.R.eye(self.dim)
        P = M.copy()
        for k in range(1, limit + 1):
            if np.array_equal(P, eye):
                return k
            P = self.R.mul(P, M)
        raise AssertionError("element order exceeds limit")

    def generators(self):
        """x_{+-r_i}(1) for the simple roots (they generate the group over prime fields)."""
        gens = []
        for a in self.Phi.simple:
            for tval in self._field_generators():
                gens.append(self.x(a, tval))
                gens.append(self.x(_neg(a), tval))
        return gens

    def _field_generators(self):
        if self.R.k == 1:
            return [1]
        F = self.R.F
        return [F.elem(tuple(1 if i == j else 0 for i in range(F.k))).index for j in range(F.k)]

    def class_size(self, x, limit=2 * 10**5):
        """Size of the conjugacy class of x by breadth-first closure under the generators."""
        gens = self.generators()
        ginv = [self.inv(g) for g in gens]
        seen = {self.R.key(x.mat)}
        queue = [x.mat]
        while queue:
            M = queue.pop()
            for g, gi in zip(gens, ginv):
                Y = self.R.mul(self.R.mul(gi.mat, M), g.mat)
                k = self.R.key(Y)
                if k not in seen:
                    seen.add(k)
                    if len(seen) > limit:
                        raise BadParameters("class too large for breadth-first closure")
                    queue.append(Y)
        return len(seen)

    def torus_element(self, lams):
        """prod_i h_{r_i}(lambda_i) over the simple roots."""
        e = self.identity()
        for a, lam in zip(self.Phi.simple, lams):
            e = self.mul(e, self.h(a, lam))
        return e

    def chi(self, lams, r):
        """chi(r) = prod_i lambda_i^<r, r_i^v> for h = prod h_{r_i}(lambda_i)."""
        val = 1 if self.R.k == 1 else self.R.F.one().index
        for a, lam in zip(self.Phi.simple, lams):
            e = 2 * self.Phi.inner(r, a) // self.Phi.norm(a)
            lam_s = self.R.scalar(lam)
            if e < 0:
                lam_s = self.R.inv_s(lam_s)
                e = -e
            val = self.R.mul_s(val, self.R.sval(lam_s, e))
        return val


@lru_cache(maxsize=None)
def chevalley_group(label, q):
    return ChevalleyGroup(label, q)


def element(label, q, form, r, t):
    return chevalley_group(label, q).element(form, r, t)


# ---------------------------------------------------------------------------
# checks


def commutator_rhs(Gq, r, s, t, u):
    """prod_{i,j>0} x_{ir+js}(C_{ijrs} (-t)^i u^j) in increasing i + j."""
    R = Gq.R
    C = Gq.sc.C
    terms = sorted(((i, j) for (i, j, a, b) in C if a == tuple(r) and b == tuple(s)),
                   key=lambda ij: (ij[0] + ij[1], ij[0]))
    out = Gq.identity()
    mt = R.neg_s(R.scalar(t))
    su = R.scalar(u)
    for i, j in terms:
        c = C[(i, j, tuple(r), tuple(s))]
        coef = R.mul_s(R.mul_s(c % Gq.R.p if R.k == 1 else _int_to_field(R, c), R.sval(mt, i)), R.sval(su, j))
        out = Gq.mul(out, Gq.x(tuple(a * i + b * j for a, b in zip(r, s)), coef))
    return out


def _int_to_field(R, c):
    return R.F.elem(c % R.p).index


def commutator_check(label, q, r, s, t, u):
    """Matrix commutator [x_s(u), x_r(t)] equals the formula's right-hand side."""
    Gq = chevalley_group(label, q)
    r, s = tuple(r), tuple(s)
    if r == s or r == _neg(s):
        raise BadParameters("r and s must be linearly independent")
    lhs = Gq.comm(Gq.x(s, u), Gq.x(r, t))
    return Gq.eq(lhs, commutator_rhs(Gq, r, s, t, u))


def commutator_suite(label, q):
    """Count of failures over all independent root pairs and all t, u in GF(q)."""
    Gq = chevalley_group(label, q)
    Phi = Gq.Phi
    fails = 0
    total = 0
    xs = {(r, t): Gq.x(r, t) for r in Phi.roots for t in range(q)}
    xinv = {k: Gq.inv(v) for k, v in xs.items()}
    for r in Phi.roots:
        for s in Phi.roots:
            if r == s or r == _neg(s):
                continue
            for t in range(q):
                for u in range(q):
                    lhs = Gq.mul(xinv[(s, u)], xinv[(r, t)], xs[(s, u)], xs[(r, t)])
                    total += 1
                    if not Gq.eq(lhs, commutator_rhs(Gq, r, s, t, u)):
                        fails += 1
    return fails, total


def additivity_check(label, q):
    """Failures of x_r(t) x_r(u) = x_r(t + u) over all roots and t, u."""
    Gq = chevalley_group(label, q)
    R = Gq.R
    fails = 0
    for r in Gq.Phi.roots:
        xs = [Gq.x(r, t) for t in range(q)]
        for t in range(q):
            for u in range(q):
                if not Gq.eq(Gq.mul(xs[t], xs[u]), xs[R.add_s(t, u)]):
                    fails += 1
    return fails


def torus_action(label, q, lams, r, t):
    """h x_r(t) h^-1 for h = prod h_{r_i}(lambda_i); returns (element, chi(r), agrees)."""
    Gq = chevalley_group(label, q)
    lams = list(lams)
    if len(lams) != Gq.Phi.rank or any(Gq.R.scalar(l) == 0 for l in lams):
        raise NotATorusElement("a torus element needs one nonzero parameter per simple root")
    h = Gq.torus_element(lams)
    r = tuple(r)
    y = Gq.conj(Gq.x(r, t), h)
    c = Gq.chi(lams, r)
    expected = Gq.x(r, Gq.R.mul_s(c, Gq.R.scalar(t)))
    return y, c, Gq.eq(y, expected)


def torus_square_check(label, q):
    """Failures of h(chi)^2 = h(chi^2) over all torus parameter tuples."""
    Gq = chevalley_group(label, q)
    R = Gq.R
    units = [x for x in range(1, q)]
    fails = 0
    for lams in iproduct(units, repeat=Gq.Phi.rank):
        h = Gq.torus_element(lams)
        h2 = Gq.torus_element([R.mul_s(l, l) for l in lams])
        if not Gq.eq(Gq.mul(h, h), h2):
            fails += 1
    return fails


def hartley_shute_witness(label, q, r, s, twisted=False):
    """Search the Cartan subgroup for h(chi) with chi(r) = s.

    Returns dict(witness=lambdas, achieved=value, exact=bool, exponent=d) where d
    is the gcd of the pairings <r, r_i^v>; when no h gives s, the witness gives
    s^d instead.
    """
    if twisted:
        raise BadParameters("twisted groups are not constructed")
    Gq = chevalley_group(label, q)
    R = Gq.R
    r = tuple(r)
    s = R.scalar(s)
    if s == 0:
        raise BadParameters("s must be nonzero")
    units = list(range(1, q))
    d = 0
    for a in Gq.Phi.simple:
        d = gcd(d, abs(2 * Gq.Phi.inner(r, a) // Gq.Phi.norm(a)))
    found = None
    for lams in iproduct(units, repeat=Gq.Phi.rank):
        if Gq.chi(lams, r) == s:
            found = lams
            break
    if found is not None:
        return {"witness": list(found), "achieved": s, "exact": True, "exponent": d}
    target = R.sval(s, d)
    for lams in iproduct(units, repeat=Gq.Phi.rank):
        if Gq.chi(lams, r) == target:
            return {"witness": list(lams), "achieved": target, "exact": False, "exponent": d}
    raise AssertionError("no torus element reaches s^d")


def cu_q_check(label, q):
    """Fixed points in U of the Sylow 2-subgroup Q of the Cartan subgroup.

    U is enumerated in canonical form prod_{r > 0} x_r(t_r) and each element is
    tested against generators of Q by matrix conjugation. Returns the order of
    C_U(Q) and the positive roots whose root subgroups it contains.
    """
    Gq = chevalley_group(label, q)
    R = Gq.R
    if q % 2 == 0:
        raise BadParameters("q must be odd")
    units = list(range(1, q))
    two_part = 1
    while (q - 1) % (two_part * 2) == 0:
        two_part *= 2
    # a generator of the 2-part of GF(q)^*
    g2 = next(x for x in units if _mult_order(R, x) == two_part)
    Qgens = []
    for i in range(Gq.Phi.rank):
        lams = [1] * Gq.Phi.rank
        lams[i] = g2
        Qgens.append(Gq.torus_element(lams))
    Qinv = [Gq.inv(h) for h in Qgens]
    pos = Gq.Phi.positive
    if q ** len(pos) > 10**6:
        raise BadParameters("U too large to enumerate")
    xs = {(r, t): Gq.x(r, t) for r in pos for t in range(q)}
    fixed = []
    for ts in iproduct(range(q), repeat=len(pos)):
        u = Gq.identity()
        for r, t in zip(pos, ts):
            if t:
                u = Gq.mul(u, xs[(r, t)])
        if all(Gq.eq(Gq.mul(h, u, hi), u) for h, hi in zip(Qgens, Qinv)):
            fixed.append(ts)
    roots = [r for k, r in enumerate(pos) if any(ts[k] for ts in fixed)]
    return {"order": len(fixed), "roots": roots,
            "long_roots": [r for r in roots if Gq.Phi.is_long(r)]}


def _mult_order(R, x):
    k, y = 1, x
    while y != 1:
        y = R.mul_s(y, x)
        k += 1
    return k


# ---------------------------------------------------------------------------
# unipotent tables


def _root_from_eps_f4(vec):
    """F4 root given in the orthonormal epsilon basis -> simple-root coordinates.

    Simple roots: a1 = e2 - e3, a2 = e3 - e4, a3 = e4, a4 = (e1 - e2 - e3 - e4)/2.
    """
    A = np.array([[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [0.5, -0.5, -0.5, -0.5]]).T
    c = np.linalg.solve(A, np.asarray(vec, dtype=float))
    return tuple(int(round(x)) for x in c)


def parse_f4_root(label):
    """'2-3' -> e2 - e3, '4' -> e4, '1-2+3+4' -> (e1 - e2 + e3 + e4)/2."""
    import re

    terms = re.findall(r"([+-]?)(\d)", label)
    v = [0.0] * 4
    for sign, i in terms:
        v[int(i) - 1] = -1.0 if sign == "-" else 1.0
    if len(terms) == 4:
        v = [x / 2 for x in v]
    return _root_from_eps_f4(v)


# parameters: eta a non-square, xi with x^2 + xi x + eta irreducible,
# zeta with x^3 - x + zeta irreducible (over GF(3): eta = 2, xi = 1, zeta = 1)
G2_TABLE = {
    1: [("a", 1), ("b", 1)],
    2: [("a", 1), ("b", 1), ("3a+b", "zeta")],
    3: [("a", 1), ("b", 1), ("3a+b", "-zeta")],
    4: [("a+b", 1), ("3a+b", 1)],
    5: [("a+b", 1), ("3a+b", "eta")],
    6: [("2a+b", 1)],
    7: [("2a+b", 1), ("3a+2b", 1)],
    8: [("3a+2b", 1)],
}

G2_CENTRALIZERS = {  # |C(x)| as polynomials in q
    1: lambda q: 3 * q**2, 2: lambda q: 3 * q**2, 3: lambda q: 3 * q**2,
    4: lambda q: 2 * q**4, 5: lambda q: 2 * q**4,
    6: lambda q: q**6 * (q**2 - 1), 7: lambda q: q**6, 8: lambda q: q**6 * (q**2 - 1),
}

F4_TABLE = {
    1: [("1+2", 1)],
    2: [("1-2", 1), ("1+2", -1)],
    3: [("1-2", 1), ("1+2", "-eta")],
    4: [("2", 1), ("3+4", 1)],
    5: [("2-3", 1), ("4", 1), ("2+3", 1)],
    6: [("2-3", 1), ("4", 1), ("2+3", "eta")],
    7: [("2", 1), ("1-2+3+4", 1)],
    8: [("2-3", 1), ("4", 1), ("1-2", 1)],
    9: [("2-3", 1), ("3-4", 1), ("3+4", -1)],
    10: [("2-3", 1), ("3-4", 1), ("3+4", "-eta")],
    11: [("2+3", 1), ("1+2-3-4", 1), ("1-2+3+4", 1)],
    12: [("2-3", 1), ("4", 1), ("1-4", 1)],
    13: [("2-3", 1), ("4", 1), ("1-4", "eta")],
    14: [("2-4", 1), ("3+4", 1), ("1-2", -1), ("1-3", -1)],
    15: [("2-4", 1), ("3+4", 1), ("1-2", "-eta"), ("1-3", -1)],
    16: [("2-4", 1), ("2+4", "-eta"), ("1-2+3+4", 1), ("1-3", -1)],
    17: [("2-4", 1), ("3+4", 1), ("1-2-3+4", 1), ("1-2", "-eta"), ("1-3", "xi")],
    18: [("2", 1), ("3+4", 1), ("1-2+3-4", 1), ("1-2", -1), ("1-3", "zeta")],
    19: [("2-3", 1), ("3-4", 1), ("4", 1)],
    20: [("2", 1), ("3+4", 1), ("1-2-3-4", 1)],
    21: [("2-4", 1), ("3", 1), ("2+4", 1), ("1-2-3+4", 1)],
    22: [("2-4", 1), ("3", 1), ("2+4", "eta"), ("1-2-3+4", 1)],
    23: [("2-3", 1), ("3-4", 1), ("4", 1), ("1-2", 1)],
    24: [("2-3", 1), ("3-4", 1), ("4", 1), ("1-2", "eta")],
    25: [("2-3", 1), ("3-4", 1), ("4", 1), ("1-2-3-4", 1)],
    26: [("2-3", 1), ("3-4", 1), ("4", 1), ("1-2-3-4", 1), ("1-2+3+4", "zeta")],
    27: [("2-3", 1), ("3-4", 1), ("4", 1), ("1-2-3-4", 1), ("1-2+3+4", "-zeta")],
}


def table_parameters(q):
    """eta (non-square), xi (x^2 + xi x + eta irreducible), zeta (x^3 - x + zeta irreducible)."""
    R = FqMatrices(q)
    F = R.F
    elems = F.elements()
    squares = {(x * x).index for x in elems}
    eta = next(x for x in elems if x.index not in squares)

    def no_root(coeffs):
        return all(sum((c * x**i for i, c in enumerate(coeffs)), F.zero()) != F.zero() for x in elems)

    xi = next(x for x in elems if no_root([eta, x, F.one()]))
    zeta = next(x for x in elems if no_root([x, -F.one(), F.zero(), F.one()]))
    return {"eta": eta.index, "xi": xi.index, "zeta": zeta.index}


def _param_value(R, v, params):
    if isinstance(v, int):
        return R.scalar(v % R.p) if R.k == 1 else R.F.elem(v % R.p).index
    neg = v.startswith("-")
    x = params[v.lstrip("-")]
    return R.neg_s(x) if neg else x


def _g2_root(label):
    import re

    a = b = 0
    for coef, sym in re.findall(r"(\d*)([ab])", label):
        c = int(coef) if coef else 1
        if sym == "a":
            a += c
        else:
            b += c
    return (a, b)


def table_element(kind, i, q=3):
    Gq = chevalley_group("G2" if kind == "G2" else "F4", q)
    params = table_parameters(q)
    table = G2_TABLE if kind == "G2" else F4_TABLE
    conv = _g2_root if kind == "G2" else parse_f4_root
    x = Gq.identity()
    for root, v in table[i]:
        x = Gq.mul(x, Gq.x(conv(root), _param_value(Gq.R, v, params)))
    x.tag = f"x{i}"
    return x


G2_ORDER = lambda q: q**6 * (q**6 - 1) * (q**2 - 1)  # noqa: E731


def verify_unipotent_table(kind, q=3, classes=(6, 7, 8)):
    """Element orders, inverse-conjugacy witnesses and (G2) class-size centralizer orders."""
    if q != 3:
        raise BadParameters("tables are verified at q = 3")
    report = {"type": kind, "q": q, "orders": {}}
    if kind == "G2":
        Gq = chevalley_group("G2", q)
        a, b = (1, 0), (0, 1)
        xs = {i: table_element("G2", i, q) for i in G2_TABLE}
        report["orders"] = {i: Gq.order(x) for i, x in xs.items()}
        ha, hb = Gq.h(a, q - 1), Gq.h(b, q - 1)
        witnesses = {}
        for i, h, name in ((6, ha, "h_a(-1)"), (8, hb, "h_b(-1)"), (4, hb, "h_b(-1)"), (5, hb, "h_b(-1)")):
            # x^h = h^-1 x h
            conj = Gq.mul(Gq.inv(h), xs[i], h)
            witnesses[i] = {"by": name, "inverse": Gq.eq(conj, Gq.inv(xs[i]))}
        report["inverse_witnesses"] = witnesses
        cents = {}
        order_g = G2_ORDER(q)
        for i in classes:
            size = Gq.class_size(xs[i])
            cents[i] = {"class_size": size, "centralizer": order_g // size,
                        "divides": order_g % size == 0, "expected": G2_CENTRALIZERS[i](q)}
        report["centralizers"] = cents
        report["group_order"] = order_g
        return report
    if kind == "F4":
        Gq = chevalley_group("F4", q)
        report["orders"] = {i: Gq.order(table_element("F4", i, q)) for i in F4_TABLE}
        return report
    raise BadParameters("kind must be G2 or F4")
