"""Permutation groups: stabilizer chains, backtrack search and structure.

Permutations are tuples of point images on 0..n-1. Products act on the
right, so ``mul(a, b)`` applies ``a`` first and then ``b``, and conjugation
is ``x^g = g^-1 x g``. This matches the usual conventions
[x, y] = x^-1 y^-1 x y and x^y = y^-1 x y.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, lcm

import numpy as np

from .errors import (
    ElementNotInGroup,
    InvalidPermutation,
    NotASubgroup,
    TooLarge,
)

BRUTE_BOUND = 2000
ENUM_BOUND = 5000
SEED = 20240611


# ---------------------------------------------------------------------------
# plain permutations


def identity(n):
    return tuple(range(n))


def mul(a, b):
    """Apply a, then b."""
    return tuple(map(b.__getitem__, a))


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(x, g):
    """x^g = g^-1 x g."""
    out = [0] * len(x)
    for i, gi in enumerate(g):
        out[gi] = g[x[i]]
    return tuple(out)


def comm(x, y):
    """[x, y] = x^-1 y^-1 x y."""
    return mul(mul(inv(x), inv(y)), mul(x, y))


def power(a, k):
    n = len(a)
    if k < 0:
        a, k = inv(a), -k
    result = identity(n)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def is_identity(a):
    return all(i == x for i, x in enumerate(a))


def cycles(a, include_fixed=False):
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if not seen[i]:
            c = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                c.append(j)
                seen[j] = True
                j = a[j]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
    return out


def order(a):
    return reduce(lcm, (len(c) for c in cycles(a)), 1)


def cycle_type(a):
    return tuple(sorted(len(c) for c in cycles(a, include_fixed=True)))


def from_cycles(n, cyc):
    """Build a permutation of degree n from an iterable of cycles."""
    img = list(range(n))
    seen = set()
    for c in cyc:
        c = [int(x) for x in c]
        for x in c:
            if not 0 <= x < n or x in seen:
                raise InvalidPermutation(f"bad point {x} in cycle {tuple(c)}")
            seen.add(x)
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return tuple(img)


def cycle_str(a):
    cs = cycles(a)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def check_perm(a, n=None):
    a = tuple(int(x) for x in a)
    if n is not None and len(a) != n:
        raise InvalidPermutation(f"expected degree {n}, got {len(a)}")
    if sorted(a) != list(range(len(a))):
        raise InvalidPermutation("images do not form a bijection")
    return a


# ---------------------------------------------------------------------------
# stabilizer chain


class _Level:
    __slots__ = ("point", "gens", "orbit", "inverse", "done")

    def __init__(self, point, n):
        self.point = point
        self.gens = []
        self.orbit = {point: identity(n)}
        self.inverse = {point: identity(n)}
        self.done = set()

    def extend(self, new_gens):
        """Add generators and grow the orbit; old transversal entries are kept."""
        self.gens.extend(new_gens)
        orbit, inverse = self.orbit, self.inverse
        queue = list(orbit)
        gens = self.gens
        i = 0
        # old points only need the new generators, but new points need all
        old = set(orbit)
        while i < len(queue):
            p = queue[i]
            i += 1
            u = orbit[p]
            for s in (new_gens if p in old else gens):
                q = s[p]
                if q not in orbit:
                    v = mul(u, s)
                    orbit[q] = v
                    inverse[q] = inv(v)
                    queue.append(q)


class PermGroup:
    """A permutation group on 0..degree-1 with a lazily built stabilizer chain.

    ``order`` may be passed as a hint when the order is known in advance; the
    randomized phase then stops as soon as the chain reaches it. ``base``
    forces a base prefix (redundant points allowed), ``base_order`` gives a
    preference order for choosing new base points.
    """

    def __init__(self, degree, gens=(), *, order=None, base=None, base_order=None,
                 name=None, check=True, _seed_chain=None):
        self.degree = int(degree)
        n = self.degree
        if check:
            gens = [check_perm(g, n) for g in gens]
        else:
            gens = [tuple(g) for g in gens]
        seen = set()
        uniq = []
        for g in gens:
            if g not in seen and not is_identity(g):
                seen.add(g)
                uniq.append(g)
        self.gens = uniq
        self.name = name
        self._order_hint = order
        self._base_prefix = list(base) if base is not None else []
        self._base_order = list(base_order) if base_order is not None else None
        self._seed_chain = _seed_chain
        self._levels = None
        self._cache = {}

    # -- construction -----------------------------------------------------
    def _new_base_point(self, g):
        if self._base_order is not None:
            for p in self._base_order:
                if g[p] != p:
                    return p
        for p in range(self.degree):
            if g[p] != p:
                return p
        raise AssertionError("identity has no moved point")

    def _chain(self):
        if self._levels is None:
            self._build()
        return self._levels

    def _build(self):
        n = self.degree
        levels = [_Level(b, n) for b in self._base_prefix]
        strong = []
        if self._seed_chain is not None:
            base, sg = self._seed_chain
            known = {lv.point for lv in levels}
            for b in base:
                if b not in known:
                    levels.append(_Level(b, n))
                    known.add(b)
            strong = list(sg)
        for g in self.gens:
            if g not in strong:
                strong.append(g)
        self._levels = levels
        self._strong = []
        for g in strong:
            self._add_strong(g)
        target = self._order_hint
        if target is not None and self.order() == target:
            return
        rng = random.Random(SEED)
        self._random_phase(rng, target)
        if target is not None and self.order() == target:
            return
        self._verify()

    def _add_strong(self, h):
        """Insert h as a strong generator, extending the base if needed."""
        levels = self._levels
        depth = 0
        while depth < len(levels) and h[levels[depth].point] == levels[depth].point:
            depth += 1
        if depth == len(levels):
            levels.append(_Level(self._new_base_point(h), self.degree))
        self._strong.append(h)
        for i in range(depth + 1):
            levels[i].extend([h])
        return depth

    def _sift(self, g, start=0):
        levels = self._levels
        for i in range(start, len(levels)):
            lv = levels[i]
            ui = lv.inverse.get(g[lv.point])
            if ui is None:
                return g, i
            g = mul(g, ui)
        return g, len(levels)

    def _random_phase(self, rng, target):
        if not self.gens:
            return
        pool = list(self.gens)
        while len(pool) < 10:
            pool.append(pool[len(pool) % len(self.gens)])
        acc = identity(self.degree)

        def next_random():
            nonlocal acc
            i, j = rng.sample(range(len(pool)), 2)
            if rng.random() < 0.5:
                pool[i] = mul(pool[i], pool[j])
            else:
                pool[i] = mul(pool[j], pool[i])
            acc = mul(acc, pool[i])
            return acc

        for _ in range(50):
            next_random()
        quiet = 0
        limit = 40 if target is None else 400
        while quiet < limit:
            g = next_random()
            h, _ = self._sift(g)
            if is_identity(h):
                quiet += 1
            else:
                quiet = 0
                self._add_strong(h)
                if target is not None and self.order() >= target:
                    return

    def _verify(self):
        """Deterministic Schreier-Sims: every Schreier generator must sift."""
        levels = self._levels
        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            restart = None
            for p in list(lv.orbit):
                u = lv.orbit[p]
                for si, s in enumerate(lv.gens):
                    if (p, si) in lv.done:
                        continue
                    lv.done.add((p, si))
                    q = s[p]
                    sg = mul(mul(u, s), lv.inverse[q])
                    h, _ = self._sift(sg, i + 1)
                    if not is_identity(h):
                        restart = self._add_strong(h)
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = max(restart, i)

    # -- basic queries ----------------------------------------------------
    @property
    def base(self):
        return [lv.point for lv in self._chain()]

    @property
    def strong_gens(self):
        self._chain()
        return list(self._strong)

    def basic_orbit_sizes(self):
        return [len(lv.orbit) for lv in self._chain()]

    def order(self):
        levels = self._chain()
        o = 1
        for lv in levels:
            o *= len(lv.orbit)
        return o

    def __len__(self):
        return self.order()

    def identity(self):
        return identity(self.degree)

    def contains(self, g):
        g = tuple(g)
        if len(g) != self.degree:
            return False
        self._chain()
        h, _ = self._sift(g)
        return is_identity(h)

    __contains__ = contains

    def is_trivial(self):
        return not self.gens

    def is_subgroup_of(self, other):
        return self.degree == other.degree and all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def __hash__(self):
        return hash((self.degree, self.order()))

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self.order()}>"

    def level_group(self, i):
        """The chain subgroup G^(i) fixing the first i base points."""
        levels = self._chain()
        if i >= len(levels):
            return PermGroup(self.degree, [], check=False)
        o = 1
        for lv in levels[i:]:
            o *= len(lv.orbit)
        return PermGroup(self.degree, levels[i].gens, order=o, check=False,
                         _seed_chain=([lv.point for lv in levels[i:]], levels[i].gens))

    def with_base(self, base=None, base_order=None):
        """The same group with a stabilizer chain built on a chosen base."""
        return PermGroup(self.degree, self.strong_gens, order=self.order(), base=base,
                         base_order=base_order, name=self.name, check=False)

    def subgroup(self, gens, order=None, name=None):
        return PermGroup(self.degree, gens, order=order, name=name, check=False)

    def extend(self, new_gens):
        """<self, new_gens>, reusing the current chain as a seed."""
        new_gens = [tuple(g) for g in new_gens]
        self._chain()
        return PermGroup(self.degree, self.gens + new_gens, check=False,
                         _seed_chain=(self.base, self._strong))

    # -- elements ---------------------------------------------------------
    def elements(self, limit=10**6):
        """All elements, in a fixed order determined by the chain."""
        if self.order() > limit:
            raise TooLarge(f"group of order {self.order()} too large to enumerate")
        levels = self._chain()
        elems = [identity(self.degree)]
        for lv in reversed(levels):
            trans = list(lv.orbit.values())
            elems = [mul(e, u) for e in elems for u in trans]
        return elems

    def random_element(self, rng):
        g = identity(self.degree)
        for lv in reversed(self._chain()):
            g = mul(g, rng.choice(list(lv.orbit.values())))
        return g

    def random_elements(self, count, seed=SEED):
        rng = random.Random(seed)
        return [self.random_element(rng) for _ in range(count)]

    # -- orbits -----------------------------------------------------------
    def orbit(self, point):
        seen = {point}
        queue = [point]
        for p in queue:
            for g in self.gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def orbits(self):
        seen = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                o = self.orbit(p)
                seen.update(o)
                out.append(o)
        return out

    def stabilizer(self, point):
        G = self.with_base(base=[point])
        return G.level_group(1)

    def conjugate(self, g):
        return PermGroup(self.degree, [conj(x, g) for x in self.gens], order=self.order(),
                         check=False)

    def is_abelian(self):
        gens = self.gens
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def exponent_of(self, g):
        return order(g)

    def element_orders(self):
        return sorted({order(g) for g in self.elements()})

    # -- convenience wrappers over module functions -------------------------
    def is_normal_in(self, G):
        return all(self.contains(conj(h, g)) for h in self.gens for g in G.gens)

    def normal_closure_in(self, G):
        return normal_closure(G, self.gens)


def trivial_group(n):
    return PermGroup(n, [], check=False)


def symmetric_group(n):
    if n <= 1:
        return PermGroup(max(n, 1), [], name=f"Sym({n})")
    gens = [from_cycles(n, [(0, 1)]), from_cycles(n, [tuple(range(n))])] if n > 2 else [
        from_cycles(n, [(0, 1)])]
    f = 1
    for i in range(2, n + 1):
        f *= i
    return PermGroup(n, gens, order=f, name=f"Sym({n})")


def alternating_group(n):
    if n <= 2:
        return PermGroup(max(n, 1), [], name=f"Alt({n})")
    gens = [from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    f = 1
    for i in range(3, n + 1):
        f *= i
    return PermGroup(n, gens, order=f, name=f"Alt({n})")


def cyclic_group(n):
    return PermGroup(n, [from_cycles(n, [tuple(range(n))])] if n > 1 else [], order=n,
                     name=f"C{n}")


def dihedral_group(m):
    """Dihedral group of order 2m acting on m points."""
    r = from_cycles(m, [tuple(range(m))])
    s = tuple((-i) % m for i in range(m))
    return PermGroup(m, [r, s], order=2 * m, name=f"D{2 * m}")


def direct_product(*groups):
    """External direct product acting on the disjoint union of point sets."""
    n = sum(G.degree for G in groups)
    gens = []
    off = 0
    for G in groups:
        for g in G.gens:
            img = list(range(n))
            for i, x in enumerate(g):
                img[off + i] = off + x
            gens.append(tuple(img))
        off += G.degree
    o = 1
    for G in groups:
        o *= G.order()
    return PermGroup(n, gens, order=o, check=False)


# ---------------------------------------------------------------------------
# backtrack search over the stabilizer chain


def subgroup_search(G, prop, partial=None, init=None):
    """The subgroup {g in G : prop(g)}; prop must define a subgroup.

    ``partial(images)`` receives the images of the first few base points and
    may return False to prune. ``init`` is a known subgroup of the answer.
    """
    levels = G._chain()
    n = G.degree
    base = [lv.point for lv in levels]
    k = len(base)
    init_levels = None
    if init is not None and not init.is_trivial():
        init_levels = init.with_base(base=base)._chain()
    found = []

    def dfs(m, p, images):
        if m == k:
            return p if prop(p) else None
        lv = levels[m]
        for delta, u in lv.orbit.items():
            img = p[delta]
            imgs = images + [img]
            if partial is not None and not partial(imgs):
                continue
            r = dfs(m + 1, mul(u, p), imgs)
            if r is not None:
                return r
        return None

    for l in reversed(range(k)):
        if init_levels is not None and l < len(init_levels):
            for g in init_levels[l].gens:
                if g not in found:
                    found.append(g)
        lv = levels[l]
        orb = _OrbitPartition(n, found)
        bl = base[l]
        prefix = base[:l]
        for gamma in sorted(lv.orbit):
            if gamma == bl or orb.same(gamma, bl) or orb.min_of(gamma) != gamma:
                continue
            imgs = prefix + [gamma]
            if partial is not None and not partial(imgs):
                continue
            g = dfs(l + 1, lv.orbit[gamma], imgs)
            if g is not None:
                found.append(g)
                orb.add(g)
    return PermGroup(n, found, check=False)


def find_element(G, prop, partial=None):
    """Some g in G with prop(g), or None; plain depth-first search."""
    levels = G._chain()
    k = len(levels)

    def dfs(m, p, images):
        if m == k:
            return p if prop(p) else None
        for delta, u in levels[m].orbit.items():
            imgs = images + [p[delta]]
            if partial is not None and not partial(imgs):
                continue
            r = dfs(m + 1, mul(u, p), imgs)
            if r is not None:
                return r
        return None

    return dfs(0, identity(G.degree), [])


class _OrbitPartition:
    """Union-find orbits of a growing generating set."""

    def __init__(self, n, gens):
        self.parent = list(range(n))
        for g in gens:
            self.add(g)

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def add(self, g):
        for i, x in enumerate(g):
            a, b = self.find(i), self.find(x)
            if a != b:
                # keep the smaller point as root so min_of is a lookup
                if a < b:
                    self.parent[b] = a
                else:
                    self.parent[a] = b

    def same(self, a, b):
        return self.find(a) == self.find(b)

    def min_of(self, x):
        return self.find(x)


def _map_partial(xs, ys, base):
    """Prune for g with x_i^g = y_i: propagate a -> c into x(a) -> y(c)."""

    def partial(images):
        fwd = {}
        bwd = {}
        stack = list(zip(base, images))
        while stack:
            a, c = stack.pop()
            if a in fwd:
                if fwd[a] != c:
                    return False
                continue
            if c in bwd:
                return False
            fwd[a] = c
            bwd[c] = a
            for x, y in zip(xs, ys):
                stack.append((x[a], y[c]))
        return True

    return partial


def centralizer(G, X, *, method="auto"):
    """C_G(X) for an element or a group X (as permutations of the same degree)."""
    xs = _as_elements(X)
    for x in xs:
        if len(x) != G.degree:
            raise ElementNotInGroup("degree mismatch")
    if not xs:
        return G
    if method == "brute" or (method == "auto" and G.order() <= 64):
        return brute_centralizer(G, xs)
    support = sorted(range(G.degree), key=lambda p: (-sum(x[p] != p for x in xs), p))
    H = G.with_base(base_order=support)
    base = H.base
    partial = _map_partial(xs, xs, base)
    return subgroup_search(H, lambda g: all(conj(x, g) == x for x in xs), partial)


def _as_elements(X):
    if isinstance(X, PermGroup):
        return list(X.gens)
    if isinstance(X, tuple) and X and isinstance(X[0], int):
        return [X]
    return [tuple(x) for x in X]


def conjugating_element(G, x, y):
    """Some g in G with x^g = y, or None."""
    if cycle_type(x) != cycle_type(y):
        return None
    support = sorted(range(G.degree), key=lambda p: (x[p] == p, p))
    H = G.with_base(base_order=support)
    partial = _map_partial([x], [y], H.base)
    return find_element(H, lambda g: conj(x, g) == y, partial)


def is_conjugate(G, x, y):
    return conjugating_element(G, x, y) is not None


def _orbit_partial(H, base):
    size = {}
    label = {}
    for i, o in enumerate(H.orbits()):
        for p in o:
            label[p] = i
            size[p] = len(o)

    def partial(images):
        m = {}
        back = {}
        for b, c in zip(base, images):
            if size[b] != size[c]:
                return False
            lb, lc = label[b], label[c]
            if m.setdefault(lb, lc) != lc or back.setdefault(lc, lb) != lb:
                return False
        return True

    return partial


def normalizer(G, H, *, method="auto"):
    """N_G(H) by backtrack with orbit-partition pruning."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    if H.is_trivial() or H.order() == G.order():
        return G
    if method == "brute" or (method == "auto" and G.order() <= 64):
        return brute_normalizer(G, H)
    orbs = H.orbits()
    size = {p: len(o) for o in orbs for p in o}
    pref = sorted(range(G.degree), key=lambda p: (size[p], p))
    G2 = G.with_base(base_order=pref)
    partial = _orbit_partial(H, G2.base)
    hg = H.gens
    return subgroup_search(G2, lambda g: all(H.contains(conj(h, g)) for h in hg), partial,
                           init=H)


def _prefix_feasible(K, base):
    """Prune for elements of K: can some k in K send base[i] -> images[i]?"""
    levels = K.with_base(base=base)._chain()

    def partial(images):
        t = None  # inverse of accumulated transversal product
        for i, c in enumerate(images):
            lv = levels[i]
            pt = c if t is None else t[c]
            if pt not in lv.orbit:
                return False
            ui = lv.inverse[pt]
            t = ui if t is None else mul(t, ui)
        return True

    return partial


def intersection(H, K):
    if H.order() > K.order():
        H, K = K, H
    partial = _prefix_feasible(K, H.base)
    return subgroup_search(H, K.contains, partial)


# ---------------------------------------------------------------------------
# brute-force oracles


def brute_normalizer(G, H):
    hg = H.gens
    return PermGroup(G.degree, [g for g in G.elements() if all(H.contains(conj(h, g)) for h in hg)],
                     check=False)


def brute_centralizer(G, X):
    xs = _as_elements(X)
    return PermGroup(G.degree, [g for g in G.elements() if all(conj(x, g) == x for x in xs)],
                     check=False)


# ---------------------------------------------------------------------------
# closures and series


def normal_closure(G, gens):
    """<gens^G>."""
    n = G.degree
    gens = [tuple(g) for g in gens if not is_identity(g)]
    N = PermGroup(n, gens, check=False)
    queue = list(N.gens)
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g in G.gens:
            y = conj(x, g)
            if not N.contains(y):
                N = N.extend([y])
                queue.append(y)
    return N


def commutator_subgroup(G, A, B):
    """[A, B] for A, B normal in G (normal closure in G of generator commutators)."""
    return normal_closure(G, [comm(a, b) for a in A.gens for b in B.gens])


def derived_subgroup(G):
    key = "derived"
    if key not in G._cache:
        G._cache[key] = normal_closure(G, [comm(a, b) for i, a in enumerate(G.gens)
                                           for b in G.gens[i + 1:]])
    return G._cache[key]


def derived_series(G):
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)
        if D.is_trivial():
            return series


def lower_central_series(G):
    series = [G]
    while True:
        C = series[-1]
        D = normal_closure(G, [comm(a, g) for a in C.gens for g in G.gens])
        if D.order() == C.order():
            return series
        series.append(D)
        if D.is_trivial():
            return series


def is_solvable(G):
    if "solvable" not in G._cache:
        G._cache["solvable"] = derived_series(G)[-1].is_trivial()
    return G._cache["solvable"]


def is_nilpotent(G):
    if "nilpotent" not in G._cache:
        G._cache["nilpotent"] = lower_central_series(G)[-1].is_trivial()
    return G._cache["nilpotent"]


def is_perfect(G):
    return G.is_trivial() or derived_subgroup(G).order() == G.order()


def center(G):
    return centralizer(G, G)


def structure_tests(G):
    return {
        "is_nilpotent": is_nilpotent(G),
        "is_solvable": is_solvable(G),
        "derived_series": derived_series(G),
        "lower_central_series": lower_central_series(G),
        "center": center(G),
    }


def is_normal(G, N):
    return N.is_normal_in(G)


# ---------------------------------------------------------------------------
# conjugacy classes and power witnesses


def conjugacy_class(G, x, limit=10**6):
    """The G-class of x by breadth-first closure under generator conjugation."""
    seen = {x}
    queue = [x]
    i = 0
    while i < len(queue):
        y = queue[i]
        i += 1
        for g in G.gens:
            z = conj(y, g)
            if z not in seen:
                seen.add(z)
                queue.append(z)
                if len(seen) > limit:
                    raise TooLarge("conjugacy class exceeds the enumeration limit")
    return seen


def power_witness(G, x, *, class_limit=200000):
    """Least k with 1 < k < |x|, gcd(k, |x|) = 1 and x^k conjugate to x in G."""
    if not G.contains(x):
        raise ElementNotInGroup("x is not in G")
    m = order(x)
    ks = [k for k in range(2, m) if gcd(k, m) == 1]
    if not ks:
        return None
    try:
        cls = conjugacy_class(G, x, limit=class_limit)
        for k in ks:
            if power(x, k) in cls:
                return k
        return None
    except TooLarge:
        for k in ks:
            if is_conjugate(G, x, power(x, k)):
                return k
        return None


def conjugacy(G, x):
    cls = conjugacy_class(G, x)
    return {"class_size": len(cls), "power_witness": power_witness(G, x)}


# ---------------------------------------------------------------------------
# cosets and quotients


def canonical_coset_rep(N, g):
    """Canonical representative of the coset N g (least base-image sequence)."""
    for lv in N._chain():
        best = None
        best_u = None
        for delta, u in lv.orbit.items():
            v = g[delta]
            if best is None or v < best:
                best, best_u = v, u
        if best_u is not None and not is_identity(best_u):
            g = mul(best_u, g)
    return g


class CosetAction:
    """G acting on the right cosets of a normal subgroup N.

    ``image`` is the quotient as a permutation group of degree [G:N];
    ``__call__`` maps elements, ``preimage`` pulls subgroups back.
    """

    def __init__(self, G, N, limit=10**5, check_normal=True):
        from .errors import IndexTooLarge, NotNormal

        if check_normal and not N.is_normal_in(G):
            raise NotNormal("N is not normal in G")
        index = G.order() // N.order()
        if index > limit:
            raise IndexTooLarge(f"index {index} exceeds {limit}")
        self.G, self.N = G, N
        e = identity(G.degree)
        reps = [canonical_coset_rep(N, e)]
        where = {reps[0]: 0}
        images = [[None] * index for _ in G.gens]
        i = 0
        while i < len(reps):
            r = reps[i]
            for gi, s in enumerate(G.gens):
                c = canonical_coset_rep(N, mul(r, s))
                j = where.get(c)
                if j is None:
                    j = len(reps)
                    where[c] = j
                    reps.append(c)
                images[gi][i] = j
            i += 1
        self.reps = reps
        self._where = where
        self.image = PermGroup(index, [tuple(im) for im in images], order=index, check=False)
        self._gen_images = {g: tuple(im) for g, im in zip(G.gens, images)}

    @property
    def degree(self):
        return len(self.reps)

    def coset_index(self, g):
        return self._where[canonical_coset_rep(self.N, g)]

    def __call__(self, g):
        if g in self._gen_images:
            return self._gen_images[g]
        return tuple(self._where[canonical_coset_rep(self.N, mul(r, g))] for r in self.reps)

    def lift(self, x):
        """Some element of G mapping to the quotient element x."""
        return self.reps[x[0]]

    def preimage(self, K):
        gens = [self.lift(x) for x in K.gens] + list(self.N.gens)
        return PermGroup(self.G.degree, gens, order=K.order() * self.N.order(), check=False)

    def image_of(self, H):
        imgs = [self(h) for h in H.gens]
        return PermGroup(self.degree, imgs, check=False)


def coset_action(G, N, limit=10**5):
    act = CosetAction(G, N, limit=limit)
    return act.image, act


# ---------------------------------------------------------------------------
# Sylow and Hall subgroups


def _prime_factors(n):
    from sympy import factorint

    return factorint(n)


def p_part(n, p):
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def _p_part_element(g, p):
    o = order(g)
    m = o // p_part(o, p)
    return power(g, m) if m > 1 else g


def _pi_part_element(g, pi):
    o = order(g)
    m = 1
    for q, e in _prime_factors(o).items():
        if q not in pi:
            m *= q**e
    return power(g, m) if m > 1 else g


def sylow(G, p, seed=SEED):
    """A Sylow p-subgroup: random p-element seeding, then normalizer ascent."""
    target = p_part(G.order(), p)
    P = trivial_group(G.degree)
    if target == 1:
        return P
    rng = random.Random(seed + p)
    N = G
    while P.order() < target:
        x = None
        for _ in range(2000):
            g = N.random_element(rng)
            if order(g) % p:
                continue
            y = _p_part_element(g, p)
            if not P.contains(y):
                x = y
                break
        if x is None:
            raise AssertionError("failed to find a p-element outside P")
        P = P.extend([x]) if not P.is_trivial() else PermGroup(G.degree, [x], check=False)
        if P.order() < target:
            N = normalizer(G, P)
    return PermGroup(G.degree, P.gens, order=target, name=f"P{p}", check=False)


def hall(G, pi):
    """A Hall pi-subgroup of a solvable group."""
    from .errors import NotSolvable

    pi = set(pi)
    if not is_solvable(G):
        raise NotSolvable("Hall subgroups are only computed for solvable groups")
    return _hall(G, pi)


def _pi_order(n, pi):
    r = 1
    for q, e in _prime_factors(n).items():
        if q in pi:
            r *= q**e
    return r


def _hall(G, pi):
    n = G.order()
    target = _pi_order(n, pi)
    if target == n:
        return G
    if target == 1:
        return trivial_group(G.degree)
    primes = set(_prime_factors(n))
    if len(primes & pi) == 1 and len(primes) > 1:
        (p,) = primes & pi
        return sylow(G, p)
    if len(primes - pi) == 1:
        (q,) = primes - pi
        if is_nilpotent(G):
            return _nilpotent_hall(G, pi)
    if is_nilpotent(G):
        return _nilpotent_hall(G, pi)
    Y = minimal_normal_solvable(G)
    p = _prime_factors(Y.order()).popitem()[0]
    act = CosetAction(G, Y, check_normal=False)
    Hbar = _hall(act.image, pi)
    H1 = act.preimage(Hbar)
    if p in pi:
        return H1
    return _complement(H1, Y, p)


def _nilpotent_hall(G, pi):
    gens = [_pi_part_element(g, pi) for g in G.gens]
    gens = [g for g in gens if order(g) > 1 and all(q in pi for q in _prime_factors(order(g)))]
    return PermGroup(G.degree, gens, order=_pi_order(G.order(), pi), check=False)


def _complement(H, Y, p):
    """A complement to the normal Sylow p-subgroup Y of the solvable group H."""
    if Y.is_trivial():
        return H
    if Y.order() == H.order():
        return trivial_group(H.degree)
    act = CosetAction(H, Y, check_normal=False)
    Hbar = act.image
    Lbar = minimal_normal_solvable(Hbar)
    q = _prime_factors(Lbar.order()).popitem()[0]
    L = act.preimage(Lbar)
    S = sylow(L, q)
    N = normalizer(H, S)
    if N.order() < H.order():
        return _complement(N, intersection(N, Y), p)
    # S is normal in H and meets Y trivially
    act2 = CosetAction(H, S, check_normal=False)
    Ybar = act2.image_of(Y)
    Ybar = PermGroup(act2.degree, Ybar.gens, order=Y.order(), check=False)
    Cbar = _complement(act2.image, Ybar, p)
    return act2.preimage(Cbar)


# ---------------------------------------------------------------------------
# elementary abelian sections as GF(p)-modules


class ElementaryAbelianSection:
    """A/B elementary abelian of exponent p, with G (normalizing both) acting."""

    def __init__(self, A, B, p, acting=(), limit=20000):
        self.A, self.B, self.p = A, B, p
        d = 0
        size = A.order() // B.order()
        while size > 1:
            if size % p:
                raise ValueError("section is not a p-group")
            size //= p
            d += 1
        if p**d > limit:
            raise TooLarge(f"section of order {p}^{d} too large")
        self.dim = d
        e = identity(A.degree)
        zero = canonical_coset_rep(B, e)
        coords = {zero: (0,) * d}
        basis = []
        elems = {(0,) * d: e}
        for g in list(A.gens) + A.random_elements(4 * d + 4):
            if len(basis) == d:
                break
            key = canonical_coset_rep(B, g)
            if key in coords:
                continue
            basis.append(g)
            i = len(basis) - 1
            new = {}
            for vec, x in elems.items():
                y = x
                for c in range(1, p):
                    y = mul(y, g)
                    v = list(vec)
                    v[i] = c
                    v = tuple(v)
                    new[v] = y
                    coords[canonical_coset_rep(B, y)] = v
            elems.update(new)
        if len(basis) != d:
            raise AssertionError("could not find a basis of the section")
        self.basis = basis
        self._coords = coords
        self._elems = elems
        self.gens = list(acting)
        self.matrices = [self.action_matrix(g) for g in self.gens]

    def coords(self, g):
        return self._coords[canonical_coset_rep(self.B, g)]

    def element(self, vec):
        return self._elems[tuple(int(v) % self.p for v in vec)]

    def action_matrix(self, g):
        return [self.coords(conj(x, g)) for x in self.basis]

    def spin(self, vectors, start=()):
        """Smallest invariant subspace containing start and vectors, as an echelon basis."""
        p = self.p
        basis = []
        pivots = []

        def reduce_vec(v):
            v = list(v)
            for b, piv in zip(basis, pivots):
                c = v[piv]
                if c:
                    v = [(x - c * y) % p for x, y in zip(v, b)]
            return v

        def add(v):
            v = reduce_vec(v)
            for i, c in enumerate(v):
                if c:
                    ic = pow(c, -1, p)
                    v = [(x * ic) % p for x in v]
                    # clear this pivot from the existing rows
                    for j, b in enumerate(basis):
                        if b[i]:
                            cb = b[i]
                            basis[j] = [(x - cb * y) % p for x, y in zip(b, v)]
                    basis.append(v)
                    pivots.append(i)
                    return True
            return False

        queue = []
        for v in list(start) + list(vectors):
            if add(v):
                queue.append(list(basis[-1]))
        while queue:
            v = queue.pop()
            for M in self.matrices:
                w = [sum(v[i] * M[i][j] for i in range(self.dim)) % p for j in range(self.dim)]
                if add(w):
                    queue.append(list(basis[-1]))
        return [tuple(b) for b in sorted(basis)]

    def _projective_points(self):
        p, d = self.p, self.dim
        for i in range(d):
            for tail in _tuples(p, d - i - 1):
                yield (0,) * i + (1,) + tail

    def composition_series(self):
        """Invariant subspaces 0 < W1 < ... < V with irreducible factors."""
        series = []
        current = []
        while len(current) < self.dim:
            best = None
            for v in self._projective_points():
                if current and len(self.spin([], start=current + [v])) == len(current):
                    continue
                W = self.spin([v], start=current)
                if len(W) == len(current):
                    continue
                key = (len(W), sorted(self.element(w) for w in W))
                if best is None or key < best[0]:
                    best = (key, W)
            current = list(best[1])
            series.append(current)
        return series

    def subgroup(self, W):
        gens = list(self.B.gens) + [self.element(w) for w in W]
        return PermGroup(self.A.degree, gens, order=self.B.order() * self.p ** len(W), check=False)


def _tuples(p, r):
    if r == 0:
        yield ()
        return
    for t in _tuples(p, r - 1):
        for c in range(p):
            yield t + (c,)


def minimal_normal_solvable(G):
    """A minimal normal subgroup of a solvable group (elementary abelian)."""
    series = derived_series(G)
    D = series[-2] if series[-1].is_trivial() and len(series) > 1 else series[-1]
    if D.is_trivial():
        return D
    p = min(_prime_factors(D.order()))
    E = _omega_sylow(D, p)
    return minimal_normal_in_elementary(G, E, p)


def _omega_sylow(D, p):
    """Elements of order dividing p in the Sylow p-subgroup of abelian D."""
    P = _nilpotent_hall(D, {p})
    if P.order() <= 10**5:
        gens = [x for x in P.elements() if not is_identity(x) and is_identity(power(x, p))]
    else:
        gens = [power(x, order(x) // p) for x in P.gens if order(x) > 1]
        gens += [power(x, order(x) // p) for x in P.random_elements(40) if order(x) > 1]
    return PermGroup(D.degree, gens, check=False)


def minimal_normal_in_elementary(G, E, p):
    sec = ElementaryAbelianSection(E, trivial_group(E.degree), p, acting=G.gens)
    W = sec.composition_series()[0]
    return sec.subgroup(W)


# ---------------------------------------------------------------------------
# simple groups by order


def _simple_order_table(limit=10**10):
    from sympy import isprime, primerange

    table = {}

    def add(o, name):
        if 1 < o <= limit:
            table.setdefault(o, []).append(name)

    f = 60
    for n in range(5, 15):
        add(f, f"Alt({n})")
        f *= n + 1
    for q in range(4, 4000):
        fac = _prime_factors(q)
        if len(fac) != 1:
            continue
        d = gcd(2, q - 1)
        add(q * (q * q - 1) // d, f"PSL(2,{q})")
        if q <= 100:
            d3 = gcd(3, q - 1)
            add(q**3 * (q**2 - 1) * (q**3 - 1) // d3, f"PSL(3,{q})")
            du = gcd(3, q + 1)
            if q > 2:
                add(q**3 * (q**2 - 1) * (q**3 + 1) // du, f"PSU(3,{q})")
            add(q**4 * (q**2 - 1) * (q**4 - 1) // gcd(2, q - 1), f"PSp(4,{q})")
    add(6048, "PSU(3,3)")
    add(25920, "PSp(4,3)")
    for q in (2, 3):
        add(q**3 * (q**2 - 1) * (q**3 - 1) // gcd(3, q - 1), f"PSL(3,{q})")
    add(29120, "Sz(8)")
    add(32537600, "Sz(32)")
    add(7920, "M11")
    add(95040, "M12")
    add(175560, "J1")
    add(443520, "M22")
    add(604800, "J2")
    add(10200960, "M23")
    add(244823040, "M24")
    add(4245696, "G2(3)")
    add(17971200, "2F4(2)'")
    add(10073444472, "G2(4)")
    for p in primerange(2, 100):
        add(p, f"C{p}")
    return table


_SIMPLE = None


def simple_group_name(order_, sample=None):
    """Name(s) of the simple groups of the given order ('C_p' for primes)."""
    global _SIMPLE
    from sympy import isprime

    if isprime(order_):
        return f"C{order_}"
    if _SIMPLE is None:
        _SIMPLE = _simple_order_table()
    names = _SIMPLE.get(order_)
    if not names:
        return None
    if order_ == 20160 and sample is not None:
        # Alt(8) has elements of order 15, PSL(3,4) does not
        return "Alt(8)" if 15 in sample else "PSL(3,4)"
    return names[0]


# ---------------------------------------------------------------------------
# minimal normal subgroups and chief series


def group_make(degree, generators, name=None):
    """Build a permutation group; generators may be image lists or cycle strings."""
    gens = []
    for g in generators:
        if isinstance(g, str):
            gens.append(parse_cycles(degree, g))
        else:
            gens.append(g)
    return PermGroup(degree, gens, name=name)


def parse_cycles(n, text):
    """'(0 1 2)(3 4)' -> permutation of degree n (0-based points)."""
    text = text.strip()
    if text in ("", "()", "e", "1"):
        return identity(n)
    cyc = []
    for part in text.replace(")", ") ").split(")"):
        part = part.strip()
        if not part:
            continue
        if not part.startswith("("):
            raise InvalidPermutation(f"bad cycle notation: {text!r}")
        cyc.append([int(x) for x in part[1:].replace(",", " ").split()])
    return from_cycles(n, cyc)


def _prime_order_samples(G, count, seed):
    """Elements of prime order obtained as powers of random elements."""
    out = []
    for g in G.random_elements(count, seed=seed):
        o = order(g)
        for p in sorted(_prime_factors(o)) if o > 1 else ():
            out.append(power(g, o // p))
    for g in G.gens:
        o = order(g)
        for p in sorted(_prime_factors(o)) if o > 1 else ():
            out.append(power(g, o // p))
    return out


def _ncl_key(N):
    return (N.order(), sorted(N.gens))


def _descend_minimal(G, N, seed, rounds=3):
    """Shrink the G-normal subgroup N by normal closures of its prime-order elements."""
    changed = True
    step = 0
    while changed and step < 50:
        changed = False
        step += 1
        for x in _prime_order_samples(N, 24 * rounds, seed + step):
            M = normal_closure(G, [x])
            if M.order() < N.order():
                N = M
                changed = True
                break
    return N


def _components(G, N, seed=SEED):
    """Simple direct factors of a non-abelian minimal normal subgroup N."""
    best = None
    for x in _prime_order_samples(N, 30, seed):
        T = normal_closure(N, [x])
        if best is None or T.order() < best.order():
            best = T
    T = best
    comps = [T]
    queue = [T]
    while queue:
        A = queue.pop()
        for g in G.gens:
            B = A.conjugate(g)
            if not any(B == C for C in comps):
                comps.append(B)
                queue.append(B)
    return comps


def minimal_normal(G, seed=SEED):
    """One minimal normal subgroup of G (smallest found), with its factor description."""
    if G.is_trivial():
        return G
    if is_solvable(G):
        return minimal_normal_solvable(G)
    R = derived_series(G)[-1]
    cands = [normal_closure(G, [x]) for x in _prime_order_samples(R, 30, seed)]
    cands.sort(key=lambda N: N.order())
    N = _descend_minimal(G, cands[0], seed)
    if N.is_abelian():
        p = min(_prime_factors(N.order()))
        return minimal_normal_in_elementary(G, N, p)
    return N


def minimal_normals(G, seed=SEED):
    """Minimal normal subgroups of G.

    Exact for groups within the element-table bound; above it the list holds
    the distinct minimal normal closures found from sampled prime-order elements.
    """
    if G.is_trivial():
        return []
    if G.order() <= BRUTE_BOUND:
        return ElementTable(G).minimal_normals()
    found = []
    for x in _prime_order_samples(G, 40, seed):
        N = _descend_minimal(G, normal_closure(G, [x]), seed)
        if N.is_abelian():
            p = min(_prime_factors(N.order()))
            N = minimal_normal_in_elementary(G, N, p)
        if not any(N == M for M in found):
            found.append(N)
    found = [N for N in found if not any(M.order() < N.order() and M.is_subgroup_of(N) for M in found)]
    found.sort(key=lambda N: N.order())
    return found


@dataclass
class ChiefFactor:
    order: int
    abelian: bool
    simple: str
    k: int
    components: list = field(default_factory=list)

    @property
    def name(self):
        return self.simple if self.k == 1 else f"{self.simple}^{self.k}"

    def as_dict(self):
        return {"order": self.order, "abelian": self.abelian, "simple": self.simple,
                "k": self.k, "name": self.name}


@dataclass
class ChiefSeries:
    """terms[0] = G > terms[1] > ... > terms[-1] = 1; factors[i] = terms[i]/terms[i+1]."""

    terms: list
    factors: list

    def __len__(self):
        return len(self.factors)

    def names(self):
        return [f.name for f in self.factors]


def _describe_factor(G, N, seed):
    o = N.order()
    if N.is_abelian():
        p = min(_prime_factors(o))
        k = 0
        while o > 1:
            o //= p
            k += 1
        return ChiefFactor(N.order(), True, f"C{p}", k, [])
    comps = _components(G, N, seed)
    k = len(comps)
    T = comps[0]
    if T.order() ** k != N.order():
        raise AssertionError("normal subgroup is not a direct power of its components")
    sample = {order(x) for x in T.random_elements(200, seed)}
    name = simple_group_name(T.order(), sample) or f"Simple[{T.order()}]"
    return ChiefFactor(N.order(), False, name, k, comps)


def chief_series(G, limit=10**9, seed=SEED):
    """A chief series of G, refined through successive quotients by minimal normal subgroups."""
    if G.order() > limit:
        raise TooLarge(f"group of order {G.order()} exceeds the chief-series bound")
    if G.is_trivial():
        return ChiefSeries([G], [])
    N = minimal_normal(G, seed)
    fac = _describe_factor(G, N, seed)
    if N.order() == G.order():
        return ChiefSeries([G, trivial_group(G.degree)], [fac])
    act = CosetAction(G, N, check_normal=False)
    top = chief_series(act.image, limit, seed)
    terms = [act.preimage(T) for T in top.terms[:-1]] + [N, trivial_group(G.degree)]
    factors = []
    for f in top.factors:
        comps = [act.preimage(C) for C in f.components]
        factors.append(ChiefFactor(f.order, f.abelian, f.simple, f.k, comps))
    return ChiefSeries(terms, factors + [fac])


# ---------------------------------------------------------------------------
# induced automorphism groups


def _small_generating_set(A, B, tries=40, seed=SEED):
    """Two or three elements generating A modulo B (falls back to all generators)."""
    target = A.order()
    rng = random.Random(seed)
    for size in (1, 2, 3):
        for _ in range(tries):
            xs = [A.random_element(rng) for _ in range(size)]
            if PermGroup(A.degree, list(B.gens) + xs, check=False).order() == target:
                return xs
    return list(A.gens)


class InducedAction:
    """H acting by conjugation on A/B through the orbit of a generating set."""

    def __init__(self, H, A, B, seed=SEED, limit=10**5):
        from .errors import PreconditionViolated

        for h in H.gens:
            for X in (A, B):
                if not all(X.contains(conj(x, h)) for x in X.gens):
                    raise PreconditionViolated("H does not normalize both A and B")
        if not all(B.contains(conj(b, a)) for b in B.gens for a in A.gens):
            raise PreconditionViolated("B is not normal in A")
        self.H, self.A, self.B = H, A, B
        gens = _small_generating_set(A, B, seed=seed)
        points = []
        where = {}
        for x in gens:
            c = canonical_coset_rep(B, x)
            if c not in where:
                where[c] = len(points)
                points.append(c)
        images = [[None] * 0 for _ in H.gens]
        i = 0
        while i < len(points):
            x = points[i]
            for hi, h in enumerate(H.gens):
                c = canonical_coset_rep(B, conj(x, h))
                j = where.get(c)
                if j is None:
                    if len(points) >= limit:
                        raise TooLarge("induced action orbit too large")
                    j = len(points)
                    where[c] = j
                    points.append(c)
                images[hi].append(j)
            i += 1
        self.points = points
        self._where = where
        self.image = PermGroup(len(points), [tuple(im) for im in images], check=False)

    def __call__(self, h):
        return tuple(self._where[canonical_coset_rep(self.B, conj(x, h))] for x in self.points)


def induced_autos(H, A, B=None):
    """Aut_H(A/B) as a faithful permutation group on a generating orbit of A/B."""
    if B is None:
        B = trivial_group(A.degree)
    return InducedAction(H, A, B).image


# ---------------------------------------------------------------------------
# element tables and the brute-force subgroup oracle


class ElementTable:
    """Cayley table of a small group, with subgroups handled as index arrays."""

    def __init__(self, G, limit=None):
        limit = ENUM_BOUND if limit is None else limit
        if G.order() > limit:
            raise TooLarge(f"group of order {G.order()} exceeds the enumeration bound {limit}")
        self.G = G
        elems = G.elements()
        elems.sort()
        self.elems = elems
        n = len(elems)
        self.n = n
        E = np.array(elems, dtype=np.int64)
        base = G.base or [0]
        B = E[:, base]
        deg = G.degree
        weights = deg ** np.arange(len(base), dtype=np.int64)
        keys = B @ weights
        order_idx = np.argsort(keys)
        sorted_keys = keys[order_idx]
        self._lookup = (sorted_keys, order_idx, base, weights)
        self.index = {g: i for i, g in enumerate(elems)}
        table = np.empty((n, n), dtype=np.int32)
        for j in range(n):
            prod_keys = E[j][B] @ weights
            table[:, j] = order_idx[np.searchsorted(sorted_keys, prod_keys)]
        self.table = table
        ident = self.index[identity(G.degree)]
        self.e = ident
        self.inv = np.argmax(table == ident, axis=1).astype(np.int32)
        self.orders = np.array([order(g) for g in elems], dtype=np.int64)

    def idx(self, g):
        return self.index[tuple(g)]

    def closure(self, gens, start=None):
        """Subgroup generated by element indices gens (optionally containing start)."""
        gens = np.asarray(list(gens), dtype=np.int64)
        H = np.array([self.e], dtype=np.int64) if start is None else np.asarray(start, dtype=np.int64)
        if gens.size == 0:
            return np.unique(H)
        H = np.unique(np.concatenate([H, gens]))
        while True:
            new = np.unique(np.concatenate([H, self.table[np.ix_(H, gens)].ravel()]))
            if new.size == H.size:
                return new
            H = new

    def mask(self, H):
        m = np.zeros(self.n, dtype=bool)
        m[H] = True
        return m

    def key(self, H):
        return np.packbits(self.mask(H)).tobytes()

    def conjugate(self, H, g):
        return np.sort(self.table[self.table[self.inv[g], H], g])

    def normalizer(self, H):
        """Indices of N_G(H), by testing every element."""
        m = self.mask(H)
        T = self.table
        # h^g = g^-1 h g for all g at once: rows of T[inv[g]] then column g
        conj = T[T[self.inv][:, H], np.arange(self.n)[:, None]]
        ok = m[conj].all(axis=1)
        return np.nonzero(ok)[0]

    def is_nilpotent(self, H):
        """A finite group is nilpotent iff it has exactly |H|_p elements of p-power order for all p."""
        size = len(H)
        ords = self.orders[H]
        for p in _prime_factors(size):
            pp = p_part(size, p)
            count = int(np.sum(pp % ords == 0))
            if count != pp:
                return False
        return True

    def to_group(self, H, name=None):
        gens = self._generators(H)
        return PermGroup(self.G.degree, [self.elems[i] for i in gens], order=len(H),
                         name=name, check=False)

    def _generators(self, H):
        """A short generating list for the subgroup H (greedy, largest order first)."""
        H = np.asarray(H)
        cand = sorted(H.tolist(), key=lambda i: (-self.orders[i], self.elems[i]))
        gens = []
        cur = np.array([self.e])
        for i in cand:
            if len(cur) == len(H):
                break
            if i in set(cur.tolist()):
                continue
            gens.append(i)
            cur = self.closure(gens)
        return gens

    def normal_closure(self, gens):
        return self.normal_closure_in([self.idx(g) for g in self.G.gens], gens)

    def classes(self):
        """Conjugacy classes as sorted index arrays."""
        T = self.table
        all_g = np.arange(self.n)
        seen = np.zeros(self.n, dtype=bool)
        out = []
        for x in range(self.n):
            if seen[x]:
                continue
            cls = np.unique(T[T[self.inv, x], all_g])
            seen[cls] = True
            out.append(cls)
        return out

    def normal_subgroups(self):
        """All normal subgroups, as joins of normal closures of classes."""
        base = []
        keys = set()
        for cls in self.classes():
            N = self.normal_closure([int(cls[0])])
            k = self.key(N)
            if k not in keys:
                keys.add(k)
                base.append(N)
        found = {self.key(N): N for N in base}
        frontier = list(base)
        while frontier:
            nxt = []
            for N in frontier:
                for M in base:
                    J = self.closure(M, start=N)
                    k = self.key(J)
                    if k not in found:
                        found[k] = J
                        nxt.append(J)
            frontier = nxt
        return sorted(found.values(), key=lambda N: (len(N), N.tolist()))

    def minimal_normals(self):
        normals = [N for N in self.normal_subgroups() if len(N) > 1]
        masks = [self.mask(N) for N in normals]
        out = []
        for i, N in enumerate(normals):
            if not any(len(normals[j]) < len(N) and masks[i][normals[j]].all() for j in range(len(normals))):
                out.append(self.to_group(N))
        return out

    def enumerate(self, only_nilpotent=False):
        """Conjugacy-class representatives of subgroups (index arrays), by cyclic extension.

        Every subgroup H has a chain 1 = H_0 < ... < H_r = H with each H_i normal of
        prime index in H_(i+1), down to its solvable residual, so extending by
        prime-order cosets in the normalizer reaches all subgroups once the
        perfect subgroups are seeded. Restricting to nilpotent extensions stays
        within nilpotent subgroups, which are all reached the same way.
        """
        reps = []
        seen = set()
        queue = []

        def register(V):
            k = self.key(V)
            if k in seen:
                return
            N = self.normalizer(V)
            Nm = self.mask(N)
            covered = np.zeros(self.n, dtype=bool)
            for g in range(self.n):
                if covered[g]:
                    continue
                covered[self.table[N, g]] = True
                seen.add(self.key(self.conjugate(V, g)))
            reps.append(V)
            queue.append((V, N, Nm))

        register(np.array([self.e]))
        if not only_nilpotent:
            for P in self._perfect_subgroups():
                register(P)
        qi = 0
        while qi < len(queue):
            U, N, _ = queue[qi]
            qi += 1
            Um = self.mask(U)
            done = Um.copy()
            for g in N:
                if done[g]:
                    continue
                # the order of gU in N/U; use a power of prime order
                k, x = 1, g
                while not Um[x]:
                    x = self.table[x, g]
                    k += 1
                for p in _prime_factors(k):
                    y = g
                    for _ in range(k // p - 1):
                        y = self.table[y, g]
                    if done[y] and y != g:
                        continue
                    V = self._extend(U, y, p)
                    done[self.table[U, y]] = True
                    if only_nilpotent and not self.is_nilpotent(V):
                        continue
                    register(V)
                done[self.table[U, g]] = True
        return sorted(reps, key=lambda H: (len(H), H.tolist()))

    def _extend(self, U, y, p):
        parts = [U]
        cur = U
        for _ in range(p - 1):
            cur = self.table[cur, y]
            parts.append(cur)
        return np.unique(np.concatenate(parts))

    def _perfect_subgroups(self):
        """Non-trivial perfect subgroups generated by an involution x and one more element y.

        y only matters up to conjugation by C_G(x) and inversion.
        """
        if self.n % 2:
            return []
        T = self.table
        invols = [int(c[0]) for c in self.classes() if self.orders[c[0]] == 2]
        out = {}
        all_g = np.arange(self.n)
        for x in invols:
            C = np.nonzero(T[T[self.inv, x], all_g] == x)[0]
            done = self.orders < 3
            for y in range(self.n):
                if done[y]:
                    continue
                done[T[T[self.inv[C], y], C]] = True
                done[T[T[self.inv[C], self.inv[y]], C]] = True
                H = self.closure([x, y])
                # non-trivial perfect groups are non-solvable: three primes, and 12 | |H|
                if len(H) % 12 or len(_prime_factors(len(H))) < 3:
                    continue
                k = self.key(H)
                if k in out:
                    continue
                # for H = <x, y>, the derived subgroup is the normal closure of [x, y]
                c = int(T[T[self.inv[x], self.inv[y]], T[x, y]])
                if len(self.normal_closure_in([x, y], [c])) == len(H):
                    out[k] = H
        return list(out.values())

    def normal_closure_in(self, hgens, gens):
        """Normal closure of gens under conjugation by the elements hgens."""
        T = self.table
        hgens = np.asarray(list(hgens), dtype=np.int64)
        N = self.closure(gens)
        if hgens.size == 0:
            return N
        while True:
            conjs = np.unique(T[T[self.inv[hgens]][:, N], hgens[:, None]].ravel())
            m = self.mask(N)
            if m[conjs].all():
                return N
            N = self.closure(conjs, start=N)


def enumerate_subgroups(G, order_bound=None, only_nilpotent=False):
    """Conjugacy-class representatives of all (or all nilpotent) subgroups of G."""
    table = ElementTable(G, limit=order_bound)
    return [table.to_group(H) for H in table.enumerate(only_nilpotent=only_nilpotent)]
