"""Irreducible root systems, Weyl groups and subsystem enumeration.

Roots are integer coefficient vectors over the fundamental roots r_1..r_n
(Bourbaki numbering). The symmetric bilinear form is stored as an integer
Gram matrix with short roots of squared length 2, so everything is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import Matrix as SymMatrix, factorint
from sympy.matrices.normalforms import smith_normal_form

from .errors import BadLabel, TooLarge
from .perm import PermGroup, order as perm_order, mul

WEYL_ENUM_BOUND = 10**7
W_DEDUP_BOUND = 10**5


def _chain_gram(n, lengths, bonds):
    """Gram matrix from squared lengths and (i, j) adjacency (0-based)."""
    B = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        B[i, i] = lengths[i]
    for i, j in bonds:
        # (r_i, r_j) = -max(|r_i|^2, |r_j|^2) / 2 for adjacent simple roots
        v = -max(lengths[i], lengths[j]) // 2
        B[i, j] = B[j, i] = v
    return B


def gram_matrix(family, n):
    if family == "A":
        return _chain_gram(n, [2] * n, [(i, i + 1) for i in range(n - 1)])
    if family == "B":
        return _chain_gram(n, [4] * (n - 1) + [2], [(i, i + 1) for i in range(n - 1)])
    if family == "C":
        return _chain_gram(n, [2] * (n - 1) + [4], [(i, i + 1) for i in range(n - 1)])
    if family == "D":
        bonds = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return _chain_gram(n, [2] * n, bonds)
    if family == "E":
        bonds = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return _chain_gram(n, [2] * n, bonds)
    if family == "F":
        return _chain_gram(4, [4, 4, 2, 2], [(0, 1), (1, 2), (2, 3)])
    if family == "G":
        B = np.array([[2, -3], [-3, 6]], dtype=np.int64)
        return B
    raise BadLabel(f"unknown family {family}")


_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def parse_label(label):
    m = re.fullmatch(r"\s*([ABCDEFG])_?(\d+)\s*", str(label))
    if not m:
        raise BadLabel(f"bad root system label {label!r}")
    fam, n = m.group(1), int(m.group(2))
    if not _RANK_OK[fam](n):
        raise BadLabel(f"{fam}{n} is not a valid irreducible type")
    return fam, n


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    gram: np.ndarray
    roots: tuple
    index: dict

    @property
    def family(self):
        return self.type_label[0]

    @property
    def cartan(self):
        """Cartan integers <r_i, r_j> = 2 (r_i, r_j) / (r_j, r_j)."""
        B = self.gram
        return (2 * B // np.diag(B)[None, :]).astype(int)

    def __len__(self):
        return len(self.roots)

    def __repr__(self):
        return f"RootSystem({self.type_label})"

    def inner(self, r, s):
        return int(np.asarray(r) @ self.gram @ np.asarray(s))

    def norm(self, r):
        return self.inner(r, r)

    def is_positive(self, r):
        return any(c > 0 for c in r)

    @property
    def positive(self):
        return [r for r in self.roots if self.is_positive(r)]

    @property
    def negative(self):
        return [r for r in self.roots if not self.is_positive(r)]

    @property
    def simple(self):
        n = self.rank
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]

    def root_lengths(self):
        return sorted({self.norm(r) for r in self.roots})

    def is_long(self, r):
        return self.norm(r) == max(self.root_lengths())

    def add(self, r, s):
        """r + s if it is a root, else None."""
        t = tuple(a + b for a, b in zip(r, s))
        return t if t in self.index else None

    def reflect(self, r, a):
        """s_a(r) = r - <r, a> a with <r, a> = 2 (r, a) / (a, a)."""
        c = 2 * self.inner(r, a) // self.norm(a)
        return tuple(x - c * y for x, y in zip(r, a))

    def neg(self, r):
        return tuple(-x for x in r)


@lru_cache(maxsize=None)
def root_system(type_label):
    """The root system of the given type, e.g. 'G2', 'F4', 'A3'."""
    fam, n = parse_label(type_label)
    B = gram_matrix(fam, n)
    simple = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    found = set(simple)
    queue = list(simple)
    Bd = np.diag(B)
    while queue:
        r = queue.pop()
        rv = np.asarray(r)
        for i in range(n):
            c = 2 * int(rv @ B[:, i]) // int(Bd[i])
            s = list(r)
            s[i] -= c
            s = tuple(s)
            if s not in found:
                found.add(s)
                queue.append(s)
    # order: positive by (height, lex), then negatives of those in the same order
    pos = sorted([r for r in found if any(c > 0 for c in r)], key=lambda r: (sum(r), r))
    roots = pos + [tuple(-c for c in r) for r in pos]
    label = f"{fam}{n}"
    return RootSystem(label, n, B, tuple(roots), {r: i for i, r in enumerate(roots)})


def heights(Phi):
    return {r: sum(r) for r in Phi.roots}


def highest_root(Phi):
    h = max(sum(r) for r in Phi.roots)
    top = [r for r in Phi.roots if sum(r) == h]
    assert len(top) == 1
    return top[0]


def bad_primes(Phi):
    primes = set()
    for c in highest_root(Phi):
        primes.update(factorint(c))
    return sorted(primes)


def fundamental_group(Phi):
    """Invariant factors of the weight lattice modulo the root lattice (Smith form of the Cartan matrix)."""
    from sympy import ZZ

    C = SymMatrix(Phi.cartan.tolist())
    S = smith_normal_form(C, domain=ZZ)
    factors = [abs(int(S[i, i])) for i in range(Phi.rank)]
    return [d for d in factors if d != 1]


def fundamental_group_str(Phi):
    f = fundamental_group(Phi)
    return " x ".join(f"Z{d}" for d in f) if f else "1"


# ---------------------------------------------------------------------------
# Weyl groups


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as the permutation it induces on the root list."""

    Phi: RootSystem
    root_perm: tuple

    def __mul__(self, other):
        return WeylElement(self.Phi, mul(self.root_perm, other.root_perm))

    def __call__(self, r):
        return self.Phi.roots[self.root_perm[self.Phi.index[tuple(r)]]]

    def order(self):
        return perm_order(self.root_perm)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.root_perm == other.root_perm

    def __hash__(self):
        return hash(self.root_perm)


def reflection_perm(Phi, a):
    return tuple(Phi.index[Phi.reflect(r, a)] for r in Phi.roots)


def fundamental_reflections(Phi):
    return [WeylElement(Phi, reflection_perm(Phi, a)) for a in Phi.simple]


_WEYL_ORDERS = {
    "A": lambda n: _fact(n + 1),
    "B": lambda n: 2**n * _fact(n),
    "C": lambda n: 2**n * _fact(n),
    "D": lambda n: 2 ** (n - 1) * _fact(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def _fact(n):
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def weyl_group(Phi, *, order_hint=False):
    """W(Phi) as a permutation group on the root list.

    The order is computed from the stabilizer chain; ``order_hint`` passes the
    classical order to speed up the randomized phase (used for large types).
    """
    gens = [s.root_perm for s in fundamental_reflections(Phi)]
    hint = _WEYL_ORDERS[Phi.family](Phi.rank) if order_hint else None
    return PermGroup(len(Phi.roots), gens, order=hint, name=f"W({Phi.type_label})", check=False)


def weyl_elements(Phi, limit=WEYL_ENUM_BOUND):
    """All elements of W as an integer array of root permutations."""
    W = weyl_group(Phi)
    if W.order() > limit:
        raise TooLarge(f"|W({Phi.type_label})| = {W.order()} exceeds {limit}")
    gens = np.array([s.root_perm for s in fundamental_reflections(Phi)], dtype=np.int16)
    ident = np.arange(len(Phi.roots), dtype=np.int16)
    seen = {ident.tobytes()}
    layer = [ident]
    out = [ident]
    while layer:
        L = np.array(layer)
        nxt = []
        for g in gens:
            P = g[L]  # apply the element, then the generator
            for row in P:
                k = row.tobytes()
                if k not in seen:
                    seen.add(k)
                    nxt.append(row)
        out.extend(nxt)
        layer = nxt
    return np.array(out)


def length(w):
    """Number of positive roots sent to negative roots."""
    Phi = w.Phi
    npos = len(Phi.roots) // 2
    return sum(1 for i in range(npos) if w.root_perm[i] >= npos)


def longest_element(Phi):
    """w0 by greedy descent: multiply by s_i while some r_i^w is still positive."""
    npos = len(Phi.roots) // 2
    refl = fundamental_reflections(Phi)
    simple_idx = [Phi.index[a] for a in Phi.simple]
    w = WeylElement(Phi, tuple(range(len(Phi.roots))))
    while True:
        for i, si in enumerate(simple_idx):
            if w.root_perm[si] < npos:
                w = refl[i] * w
                break
        else:
            return w


def minus_one_test(Phi):
    """True iff w0 acts as -1 on the roots."""
    w0 = longest_element(Phi)
    return all(w0(r) == Phi.neg(r) for r in Phi.roots)


def e6_order3_check():
    """True iff no element of order 3 in W(E6) has a centralizer of order 3."""
    return not order3_centralizer_orders("E6").count(3)


def order3_centralizer_orders(label="E6"):
    """Centralizer orders of the order-3 classes of W, from class sizes."""
    Phi = root_system(label)
    elems = weyl_elements(Phi)
    n = len(elems)
    orders = _element_orders(elems)
    inv = np.argsort(elems, axis=1).astype(np.int16)
    keys = {row.tobytes(): i for i, row in enumerate(elems)}
    gens = np.array([s.root_perm for s in fundamental_reflections(Phi)], dtype=np.int16)
    done = np.zeros(n, dtype=bool)
    out = []
    for i in np.nonzero(orders == 3)[0]:
        if done[i]:
            continue
        cls = {int(i)}
        queue = [int(i)]
        while queue:
            x = elems[queue.pop()]
            for g in gens:
                # x^g = g^-1 x g; reflections are involutions
                y = g[x[g]]
                j = keys[y.tobytes()]
                if j not in cls:
                    cls.add(j)
                    queue.append(j)
        done[list(cls)] = True
        out.append(n // len(cls))
    return sorted(out)


def _element_orders(elems):
    ident = np.arange(elems.shape[1])
    cur = elems.copy()
    orders = np.zeros(len(elems), dtype=np.int64)
    k = 1
    while (orders == 0).any():
        hit = (orders == 0) & (cur == ident).all(axis=1)
        orders[hit] = k
        cur = np.take_along_axis(elems, cur, axis=1)
        k += 1
    return orders


# ---------------------------------------------------------------------------
# extended Dynkin diagrams and subsystems


def extended_dynkin(Phi):
    """Nodes -r0, r_1..r_n with the Cartan matrix among them and the marks of r0."""
    r0 = highest_root(Phi)
    nodes = [Phi.neg(r0)] + Phi.simple
    C = [[2 * Phi.inner(a, b) // Phi.norm(b) for b in nodes] for a in nodes]
    edges = [(i, j) for i in range(len(nodes)) for j in range(i + 1, len(nodes)) if C[i][j]]
    return {"nodes": nodes, "cartan": C, "edges": edges, "marks": [1] + list(r0)}


@dataclass(frozen=True)
class SubsystemDescriptor:
    component_types: tuple
    embedding: frozenset

    @property
    def label(self):
        return "x".join(self.component_types) if self.component_types else "1"

    @property
    def rank(self):
        return sum(int(re.sub(r"\D", "", t)) for t in self.component_types)


def _closure_under_reflections(Phi, base):
    """The root subsystem generated by the pi-system base (orbit under its reflections)."""
    found = set(base) | {Phi.neg(a) for a in base}
    queue = list(found)
    while queue:
        r = queue.pop()
        for a in base:
            s = Phi.reflect(r, a)
            if s not in found:
                found.add(s)
                queue.append(s)
    return frozenset(Phi.index[r] for r in found)


def subsystem_base(Phi, idx):
    """Simple roots of a subsystem with respect to the ambient positivity."""
    pos = [Phi.roots[i] for i in idx if Phi.is_positive(Phi.roots[i])]
    posset = set(pos)
    simple = []
    for r in pos:
        decomposable = False
        for s in pos:
            t = tuple(a - b for a, b in zip(r, s))
            if t in posset:
                decomposable = True
                break
        if not decomposable:
            simple.append(r)
    return simple


def _components(Phi, base):
    comps = []
    left = list(base)
    while left:
        comp = [left.pop()]
        changed = True
        while changed:
            changed = False
            for r in list(left):
                if any(Phi.inner(r, s) != 0 for s in comp):
                    comp.append(r)
                    left.remove(r)
                    changed = True
        comps.append(comp)
    return comps


def _component_type(Phi, comp):
    n = len(comp)
    sub = _closure_under_reflections(Phi, comp)
    N = len(sub)
    lengths = {Phi.norm(r) for r in comp}
    two_lengths_ambient = len(Phi.root_lengths()) > 1
    if len(lengths) == 1:
        if N == n * (n + 1):
            t = f"A{n}"
        elif n >= 4 and N == 2 * n * (n - 1):
            t = f"D{n}"
        elif N in (72, 126, 240):
            t = {72: "E6", 126: "E7", 240: "E8"}[N]
        else:
            raise AssertionError("unrecognized simply-laced component")
        if two_lengths_ambient and Phi.norm(comp[0]) == min(Phi.root_lengths()):
            t = "~" + t
        return t
    if n == 2 and N == 12:
        return "G2"
    if n == 4 and N == 48:
        return "F4"
    if n == 2:
        return "B2"
    long_ = max(lengths)
    nlong = sum(1 for r in comp if Phi.norm(r) == long_)
    return f"B{n}" if nlong == n - 1 else f"C{n}"


def describe_subsystem(Phi, idx):
    idx = frozenset(idx)
    if not idx:
        return SubsystemDescriptor((), idx)
    base = subsystem_base(Phi, idx)
    types = sorted(_component_type(Phi, c) for c in _components(Phi, base))
    types.sort(key=lambda t: (-int(re.sub(r"\D", "", t)), t))
    return SubsystemDescriptor(tuple(types), idx)


def is_closed_symmetric(Phi, idx):
    idx = set(idx)
    for i in idx:
        if Phi.index[Phi.neg(Phi.roots[i])] not in idx:
            return False
        for j in idx:
            s = Phi.add(Phi.roots[i], Phi.roots[j])
            if s is not None and Phi.index[s] not in idx:
                return False
    return True


class _WCanon:
    """Canonical keys for root subsets up to W-conjugacy."""

    def __init__(self, Phi):
        self.Phi = Phi
        W = weyl_group(Phi)
        self.exact = W.order() <= W_DEDUP_BOUND
        if self.exact:
            self.elems = weyl_elements(Phi).astype(np.int64)

    def key(self, idx):
        if not self.exact:
            d = describe_subsystem(self.Phi, idx)
            return ("types", d.component_types, len(idx))
        m = np.zeros(len(self.Phi.roots), dtype=bool)
        m[list(idx)] = True
        # image of the subset under each w, as a sorted tuple; take the least
        imgs = np.sort(self.elems[:, sorted(idx)], axis=1) if idx else np.zeros((1, 0), dtype=np.int64)
        best = min(map(tuple, imgs.tolist())) if len(idx) else ()
        return ("exact", best)


def borel_de_siebenthal(Phi):
    """Subsystems from repeatedly extending a component by -r0 and deleting vertices."""
    canon = _WCanon(Phi)
    start = list(Phi.simple)
    results = {}
    seen_bases = set()
    queue = [start]

    def record(base):
        idx = _closure_under_reflections(Phi, base) if base else frozenset()
        k = canon.key(idx)
        if k not in results:
            results[k] = describe_subsystem(Phi, idx)
            return True
        return False

    record(start)
    while queue:
        base = queue.pop()
        comps = _components(Phi, base)
        for ci, comp in enumerate(comps):
            others = [r for j, c in enumerate(comps) if j != ci for r in c]
            sub_idx = _closure_under_reflections(Phi, comp)
            coords = [(_coords_in(comp, Phi.roots[i]), Phi.roots[i]) for i in sub_idx]
            top = max((sum(c), r) for c, r in coords if min(c) >= 0)[1]
            ext = comp + [Phi.neg(top)]
            m = len(ext)
            for mask in range(1, 2**m):
                kept = [ext[i] for i in range(m) if not mask >> i & 1]
                new = others + kept
                key = frozenset(new)
                if key in seen_bases:
                    continue
                seen_bases.add(key)
                record(new)
                if new:
                    queue.append(new)
    return sorted(results.values(), key=lambda d: (-len(d.embedding), d.label))


def _coords_in(comp, r):
    """Coordinates of r in the basis comp (exact: the system has full column rank)."""
    A = SymMatrix(comp).T
    sol = (A.T * A).solve(A.T * SymMatrix(r))
    return [int(x) for x in sol]


def closed_subsystems_oracle(Phi, limit=48):
    """All symmetric closed subsets of Phi, up to W-conjugacy (grown one root pair at a time)."""
    if len(Phi.roots) > limit:
        raise TooLarge(f"oracle limited to |Phi| <= {limit}")
    canon = _WCanon(Phi)
    N = len(Phi.roots)
    npos = N // 2
    addt = {}
    for i in range(N):
        for j in range(N):
            s = Phi.add(Phi.roots[i], Phi.roots[j])
            if s is not None:
                addt[(i, j)] = Phi.index[s]
    negi = [Phi.index[Phi.neg(r)] for r in Phi.roots]

    def close(S):
        S = set(S)
        changed = True
        while changed:
            changed = False
            for i in list(S):
                if negi[i] not in S:
                    S.add(negi[i])
                    changed = True
            for i in list(S):
                for j in list(S):
                    k = addt.get((i, j))
                    if k is not None and k not in S:
                        S.add(k)
                        changed = True
        return frozenset(S)

    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for S in frontier:
            for i in range(npos):
                if i in S:
                    continue
                T = close(S | {i})
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    classes = {}
    for S in seen:
        k = canon.key(S)
        if k not in classes:
            classes[k] = describe_subsystem(Phi, S)
    return sorted(classes.values(), key=lambda d: (-len(d.embedding), d.label))


def bds_vs_oracle(Phi):
    """(BdS classes contained in the oracle, full-rank oracle classes contained in BdS)."""
    canon = _WCanon(Phi)
    bds = {canon.key(d.embedding) for d in borel_de_siebenthal(Phi)}
    orc = closed_subsystems_oracle(Phi)
    orc_keys = {canon.key(d.embedding) for d in orc}
    full = {canon.key(d.embedding) for d in orc if d.rank == Phi.rank}
    return bds <= orc_keys, full <= bds
