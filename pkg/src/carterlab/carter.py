"""Carter subgroups: nilpotent self-normalizing subgroups of finite groups.

Four procedures are provided: a brute-force oracle over the subgroup lattice,
the classical construction for solvable groups, the Sylow 2-subgroup method
for groups with N_G(Q) = Q C_G(Q), and the chief-series existence criterion (E).
``carter_auto`` dispatches between them.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from dataclasses import field as dc_field

from . import perm
from .errors import ESyl2Fails, NotASubgroup, NotSolvable, TooLarge, UnrecognizedFactor
from .perm import (
    CosetAction,
    ElementTable,
    PermGroup,
    center,
    centralizer,
    chief_series,
    hall,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    minimal_normal_solvable,
    normalizer,
    power_witness,
    sylow,
)

DEFAULT_BRUTE_BOUND = 5000


def brute_bound():
    """Subgroup-enumeration cap; CARTER_BRUTE_BOUND overrides the default."""
    val = os.environ.get("CARTER_BRUTE_BOUND")
    return int(val) if val else DEFAULT_BRUTE_BOUND


def _say(progress, msg):
    if progress:
        print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------------------
# results and certificates


@dataclass
class CarterCertificate:
    """Nilpotency witness (lower central series orders) and N_G(K) order."""

    order: int
    lower_central: list
    normalizer_order: int

    @property
    def nilpotent(self):
        return self.lower_central[-1] == 1

    @property
    def self_normalizing(self):
        return self.normalizer_order == self.order

    def __bool__(self):
        return self.nilpotent and self.self_normalizing

    def as_dict(self):
        return {"order": self.order, "lower_central_series": self.lower_central,
                "normalizer_order": self.normalizer_order,
                "nilpotent": self.nilpotent, "self_normalizing": self.self_normalizing}


@dataclass
class CarterResult:
    exists: bool | None
    representatives: list = dc_field(default_factory=list)
    certificates: list = dc_field(default_factory=list)
    path: str = ""
    detail: dict = dc_field(default_factory=dict)

    @property
    def undecided(self):
        return self.exists is None

    @property
    def order(self):
        return self.representatives[0].order() if self.representatives else None

    @property
    def classes(self):
        return len(self.representatives)

    def as_dict(self):
        return {
            "exists": self.exists,
            "path": self.path,
            "classes": self.classes,
            "orders": [K.order() for K in self.representatives],
            "generators": [[perm.cycle_str(g) for g in K.gens] for K in self.representatives],
            "certificates": [c.as_dict() for c in self.certificates],
            **({"detail": self.detail} if self.detail else {}),
        }


def is_carter(G, K):
    """Certificate that is truthy iff K is nilpotent and N_G(K) = K."""
    if not K.is_subgroup_of(G):
        raise NotASubgroup("K is not contained in G")
    lcs = [H.order() for H in lower_central_series(K)]
    N = normalizer(G, K)
    return CarterCertificate(K.order(), lcs, N.order())


def _result(G, K, path, detail=None):
    if K is None:
        return CarterResult(False, [], [], path, detail or {})
    return CarterResult(True, [K], [is_carter(G, K)], path, detail or {})


# ---------------------------------------------------------------------------
# brute force


def carter_brute(G, bound=None):
    """All conjugacy classes of Carter subgroups, by nilpotent-subgroup enumeration."""
    bound = brute_bound() if bound is None else bound
    if G.order() > bound:
        raise TooLarge(f"|G| = {G.order()} exceeds the brute-force bound {bound}")
    T = ElementTable(G, limit=bound)
    reps = [H for H in T.enumerate(only_nilpotent=True) if len(T.normalizer(H)) == len(H)]
    groups = [T.to_group(H) for H in reps]
    return CarterResult(bool(groups), groups, [is_carter(G, K) for K in groups], "brute")


# ---------------------------------------------------------------------------
# solvable groups


def _carter_solvable(G):
    if is_nilpotent(G):
        return G
    Y = minimal_normal_solvable(G)
    p = min(perm._prime_factors(Y.order()))
    act = CosetAction(G, Y, check_normal=False)
    Kbar = _carter_solvable(act.image)
    K1 = act.preimage(Kbar)
    if is_nilpotent(K1):
        return K1
    primes = set(perm._prime_factors(K1.order())) - {p}
    Q = hall(K1, primes)
    return normalizer(K1, Q)


def carter_solvable(G):
    """The Carter subgroup of a solvable group (unique up to conjugacy)."""
    if not is_solvable(G):
        raise NotSolvable("carter_solvable needs a solvable group")
    K = _carter_solvable(G)
    K = PermGroup(G.degree, K.gens, order=K.order(), name="K", check=False)
    return _result(G, K, "solvable")


# ---------------------------------------------------------------------------
# the Sylow 2-subgroup method


def _esyl2_data(G):
    Q = sylow(G, 2)
    if Q.is_trivial() or Q.order() == G.order():
        return Q, G, G if Q.is_trivial() else center(Q), True
    N = normalizer(G, Q)
    C = centralizer(G, Q)
    Z = center(Q)
    return Q, N, C, N.order() * Z.order() == Q.order() * C.order()


def esyl2(G):
    """N_G(Q) = Q C_G(Q) for a Sylow 2-subgroup Q."""
    return _esyl2_data(G)[3]


def _odd_part(C):
    odd = {p for p in perm._prime_factors(C.order()) if p != 2}
    gens = [perm._pi_part_element(g, odd) for g in C.gens]
    gens = [g for g in gens if not perm.is_identity(g)]
    return PermGroup(C.degree, gens, check=False)


def carter_syl2(G):
    """K = Q x K(O(C_G(Q))) when N_G(Q) = Q C_G(Q)."""
    Q, N, C, ok = _esyl2_data(G)
    if not ok:
        raise ESyl2Fails("N_G(Q) != Q C_G(Q)")
    O = _odd_part(C)
    K1 = _carter_solvable(O) if not O.is_trivial() else O
    gens = list(Q.gens) + list(K1.gens)
    K = PermGroup(G.degree, gens, order=Q.order() * K1.order(), name="K", check=False)
    return _result(G, K, "syl2", {"sylow2_order": Q.order(), "odd_centralizer_order": O.order()})


# ---------------------------------------------------------------------------
# self-normalizing Sylow normalizers


def _sylow_candidate(G):
    """A nilpotent self-normalizing N_G(P) for some Sylow P, or None."""
    for p in sorted(perm._prime_factors(G.order()), reverse=True):
        P = sylow(G, p)
        N = normalizer(G, P)
        if is_nilpotent(N) and normalizer(G, N).order() == N.order():
            return N
    return None


# ---------------------------------------------------------------------------
# criterion (E)


@dataclass
class Verdict:
    exists: bool | None
    source: str  # "computed:<path>" or "catalog"
    order: int | None = None
    detail: dict = dc_field(default_factory=dict)

    def as_dict(self):
        return {"exists": self.exists, "source": self.source, "order": self.order,
                **({"detail": self.detail} if self.detail else {})}


@dataclass
class FactorRecord:
    component: int
    induced_order: int
    verdict: Verdict

    def as_dict(self):
        return {"component": self.component, "induced_order": self.induced_order,
                "verdict": self.verdict.as_dict()}


@dataclass
class LevelRecord:
    level: int
    factor: str
    kbar_order: int | None
    k_order: int | None
    components: list = dc_field(default_factory=list)
    passed: bool = True

    def as_dict(self):
        return {"level": self.level, "factor": self.factor, "Kbar_order": self.kbar_order,
                "K_order": self.k_order, "passed": self.passed,
                "components": [c.as_dict() for c in self.components]}


@dataclass
class ECertificate:
    series: object
    levels: list = dc_field(default_factory=list)
    failure: dict | None = None
    undecided: str | None = None

    @property
    def catalog_sourced(self):
        return any(c.verdict.source == "catalog" for lv in self.levels for c in lv.components)

    def as_dict(self):
        return {"chief_factors": self.series.names(),
                "levels": [lv.as_dict() for lv in self.levels],
                "failure": self.failure, "undecided": self.undecided,
                "catalog_sourced": self.catalog_sourced}


def _component_stabilizer(P, comps, j):
    """N_P(comps[j]) for P permuting the components by conjugation (Schreier generators)."""
    if len(comps) == 1:
        return P
    marks = []
    for A in comps:
        # an element of A outside the other components identifies A
        marks.append(next(g for g in A.gens if not any(C.contains(g) for C in comps if C is not A)))

    def image(k, g):
        y = perm.conj(marks[k], g)
        return next(i for i, A in enumerate(comps) if A.contains(y))

    trans = {j: perm.identity(P.degree)}
    queue = [j]
    while queue:
        k = queue.pop()
        for g in P.gens:
            m = image(k, g)
            if m not in trans:
                trans[m] = perm.mul(trans[k], g)
                queue.append(m)
    gens = []
    for k, u in trans.items():
        for g in P.gens:
            m = image(k, g)
            s = perm.mul(perm.mul(u, g), perm.inv(trans[m]))
            if not perm.is_identity(s) and s not in gens:
                gens.append(s)
    return PermGroup(P.degree, gens, order=P.order() // len(trans), check=False)


def _restriction(H, support):
    pts = sorted(support)
    where = {p: i for i, p in enumerate(pts)}
    gens = [tuple(where[g[p]] for p in pts) for g in H.gens]
    return PermGroup(len(pts), gens, check=False)


def induced_group(H, A, B):
    """Aut_H(A/B) as a permutation group, on a small faithful domain when one is found."""
    act = perm.InducedAction(H, A, B)
    target = act.image.order()
    if B.is_trivial():
        support = {p for g in A.gens for p in range(A.degree) if g[p] != p}
        R = _restriction(H, support)
        if R.order() == target and _restriction(A, support).order() == A.order():
            return R
    return act.image


def _almost_simple_verdict(A, factor, catalog_hook, bound, progress):
    """Does the induced group A (with non-abelian simple socle) contain a Carter subgroup?"""
    if is_solvable(A):
        return Verdict(True, "computed:solvable", _carter_solvable(A).order())
    Q, N, C, ok = _esyl2_data(A)
    if ok:
        return Verdict(True, "computed:syl2", carter_syl2(A).order)
    if A.order() <= bound:
        res = carter_brute(A, bound)
        return Verdict(res.exists, "computed:brute", res.order)
    K = _sylow_candidate(A)
    if K is not None:
        return Verdict(True, "computed:sylow-candidate", K.order())
    if catalog_hook is None:
        from .catalog import catalog_hook as default_hook

        catalog_hook = default_hook
    ans = catalog_hook(A, factor)
    if ans is None:
        raise UnrecognizedFactor(f"induced group of order {A.order()} on {factor.simple} "
                                 "is neither computable nor catalogued")
    _say(progress, f"  catalog verdict for {factor.simple}: {ans}")
    return Verdict(ans["exists"], "catalog", None, {"row": ans.get("row")})


def _construct(X, bound):
    """(K or None, path) for the group X; K None with path 'undecided' if unknown."""
    if is_solvable(X):
        return _carter_solvable(X), "solvable"
    if esyl2(X):
        return carter_syl2(X).representatives[0], "syl2"
    if X.order() <= bound:
        res = carter_brute(X, bound)
        return (res.representatives[0] if res.exists else None), "brute"
    K = _sylow_candidate(X)
    if K is not None:
        return K, "sylow-candidate"
    return None, "undecided"


def satisfies_E(G, catalog_hook=None, bound=None, progress=False):
    """Walk the existence criterion along one chief series; returns (bool or None, ECertificate).

    Level i has factor G_i/G_(i+1) = T_(i,1) x ... x T_(i,k). With K_i the preimage of
    a Carter subgroup of G/G_i, each non-abelian T_(i,j) must have Aut_(K_i)(T_(i,j))
    containing a Carter subgroup. A missing Carter subgroup of G/G_i counts as failure.
    """
    bound = brute_bound() if bound is None else bound
    series = chief_series(G)
    cert = ECertificate(series)
    terms = series.terms
    n = len(series.factors)
    P = G  # preimage in G of the Carter subgroup of G/G_i
    for i, fac in enumerate(series.factors):
        Gi, Gi1 = terms[i], terms[i + 1]
        rec = LevelRecord(i, fac.name, P.order() // Gi.order(), P.order() // Gi1.order())
        cert.levels.append(rec)
        _say(progress, f"level {i}: factor {fac.name}, |Kbar| = {rec.kbar_order}")
        if not fac.abelian:
            for j in range(len(fac.components)):
                H = _component_stabilizer(P, fac.components, j)
                A = induced_group(H, fac.components[j], Gi1)
                v = _almost_simple_verdict(A, fac, catalog_hook, bound, progress)
                rec.components.append(FactorRecord(j, A.order(), v))
                if not v.exists:
                    rec.passed = False
                    cert.failure = {"level": i, "component": j, "factor": fac.simple,
                                    "induced_order": A.order(), "source": v.source}
                    return False, cert
        if i + 1 == n:
            break
        if Gi1.is_trivial():
            X, act = P, None
        else:
            act = CosetAction(P, Gi1, check_normal=False)
            X = act.image
        K, path = _construct(X, bound)
        if K is None:
            if path == "undecided":
                cert.undecided = f"Carter subgroup of G/G_{i + 1} not constructed"
                return None, cert
            rec.passed = False
            cert.failure = {"level": i + 1, "component": None, "factor": None,
                            "reason": "no Carter subgroup in the quotient"}
            return False, cert
        P = act.preimage(K) if act is not None else K
    return True, cert


# ---------------------------------------------------------------------------
# dispatcher


def carter_auto(G, catalog_hook=None, bound=None, progress=False):
    """solvable -> syl2 -> criterion (E) -> brute -> Sylow-normalizer candidates -> undecided."""
    bound = brute_bound() if bound is None else bound
    if is_solvable(G):
        _say(progress, "solvable path")
        return carter_solvable(G)
    _say(progress, "testing ESyl2")
    if esyl2(G):
        return carter_syl2(G)
    _say(progress, "walking criterion (E)")
    ok, cert = satisfies_E(G, catalog_hook, bound, progress)
    if ok is False:
        return CarterResult(False, [], [], "criterion", {"criterion": cert.as_dict()})
    if G.order() <= bound:
        res = carter_brute(G, bound)
        res.detail = {"criterion": cert.as_dict()}
        return res
    K = _sylow_candidate(G)
    if K is not None:
        return _result(G, K, "sylow-candidate", {"criterion": cert.as_dict()})
    return CarterResult(None, [], [], "undecided", {"criterion": cert.as_dict()})


# ---------------------------------------------------------------------------
# property checks


def quotient_checks(G, K, max_index=10**4, bound=None):
    """For each normal N of index <= max_index: KN/N is Carter in G/N.

    Since KN/N is nilpotent, this is N_G(KN) = KN, tested on the element table.
    Returns a list of (|N|, passed).
    """
    T = ElementTable(G, limit=bound or max(brute_bound(), G.order()))
    Kidx = T.closure([T.idx(g) for g in K.gens])
    out = []
    for N in T.normal_subgroups():
        if T.n // len(N) > max_index:
            continue
        KN = T.closure(Kidx, start=N)
        out.append((len(N), len(T.normalizer(KN)) == len(KN)))
    return out


def image_in_quotient(G, K, N):
    """(G/N, KN/N) as permutation groups on the cosets of N."""
    act = CosetAction(G, N)
    return act.image, act.image_of(K)


def property_suite(G, res, max_index=10**4, bound=None):
    """Homomorphic images, power-conjugacy of central prime-order elements, class count."""
    if not res.exists:
        raise ValueError("property_suite needs an existing Carter subgroup")
    K = res.representatives[0]
    quot = quotient_checks(G, K, max_index, bound)
    Z = center(K)
    powers = []
    seen = set()
    for z in Z.elements():
        o = perm.order(z)
        if o > 1 and len(perm._prime_factors(o)) == 1 and o == min(perm._prime_factors(o)):
            if z in seen:
                continue
            seen.update(perm.power(z, k) for k in range(1, o))
            powers.append((perm.cycle_str(z), power_witness(G, z)))
    return {
        "quotients": [{"normal_order": n, "carter_image": ok} for n, ok in quot],
        "quotients_pass": all(ok for _, ok in quot),
        "central_power_witnesses": [{"z": z, "witness": w} for z, w in powers],
        "powers_pass": all(w is None for _, w in powers),
        "classes": res.classes,
        "classes_pass": res.classes <= 1,
    }


def conjugate_in_table(G, H1, H2, bound=None):
    """Whether two subgroups are conjugate in G (element-table test)."""
    T = ElementTable(G, limit=bound or max(brute_bound(), G.order()))
    a = T.closure([T.idx(g) for g in H1.gens])
    b = T.closure([T.idx(g) for g in H2.gens])
    if len(a) != len(b):
        return False
    kb = T.key(b)
    return any(T.key(T.conjugate(a, g)) == kb for g in range(T.n))


__all__ = [
    "CarterCertificate", "CarterResult", "ECertificate", "Verdict", "brute_bound",
    "carter_auto", "carter_brute", "carter_solvable", "carter_syl2", "conjugate_in_table",
    "esyl2", "image_in_quotient", "induced_group", "is_carter", "property_suite",
    "quotient_checks", "satisfies_E",
]
