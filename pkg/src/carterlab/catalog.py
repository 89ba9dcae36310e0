"""Classification of Carter subgroups in almost simple groups, as queryable data.

Rows live in ``data/catalog.json`` (CARTER_CATALOG overrides the path). A
query names a socle S (e.g. ``A1(27)``, ``PSL(2,7)``, ``Alt(6)``, ``2B2(8)``) and
flags describing A with S <= A <= Aut(S):

    S                 A = S
    Aut               A = Aut(S)
    Ghat              A contains the inner-diagonal group
    field=k           A induces field automorphisms of order k
    graph=k           A contains a graph automorphism of order k
    graph_field       A contains a graph-field automorphism zeta g
    phi2prime         A <= Ghat x <phi_2'> and contains phi_2' g
    centralizer=X     C_(A cap Ghat)(phi_2') is X (PGU3(2) or PSU3(2))

Flags are comma separated. A socle matching some rows but none of their
conditions means A has no Carter subgroup.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from dataclasses import field as dc_field
from functools import lru_cache
from importlib import resources

from sympy import integer_nthroot

from .errors import AmbiguousDescriptor, BadParameters, OutOfRange
from .matgrp import prime_power

SPORADIC = ["M11", "M12", "M22", "M23", "M24", "J1", "J2", "J3", "J4", "HS", "McL", "Suz",
            "Co1", "Co2", "Co3", "He", "Ru", "O'N", "Fi22", "Fi23", "Fi24'", "Ly", "Th", "HN",
            "B", "M"]
MATRIX_NAMES = ["SL(2,3)", "Sp(2,3)", "2.SU(2,3)", "GU(3,2)", "PGU(3,2)"]


def catalog_path():
    env = os.environ.get("CARTER_CATALOG")
    if env:
        return env
    return str(resources.files("carterlab").joinpath("data/catalog.json"))


@lru_cache(maxsize=8)
def _load(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return data


def load_catalog(path=None):
    return _load(path or catalog_path())


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Socle:
    family: str  # "Alt", "sporadic", "matrix", or a Lie label like "A", "2A", "G2", "2B2"
    rank: int | None = None
    q: int | None = None
    degree: int | None = None
    name: str | None = None

    @property
    def p(self):
        return prime_power(self.q)[0] if self.q else None

    @property
    def f(self):
        return prime_power(self.q)[1] if self.q else None

    def label(self):
        if self.family == "Alt":
            return f"Alt({self.degree})"
        if self.family in ("sporadic", "matrix"):
            return self.name
        if self.family in _RANKED:
            return f"{self.family}{self.rank}({self.q})"
        return f"{self.family}({self.q})"


_RANKED = {"A", "2A", "B", "C", "D", "2D"}
_EXCEPTIONAL = {"G2": 2, "F4": 4, "E6": 6, "2E6": 6, "E7": 7, "E8": 8, "3D4": 4,
                "2B2": 2, "2F4": 4, "2G2": 2}


def parse_socle(text):
    """Socle descriptor from a name such as 'A1(27)', 'PSL(2,7)', 'Alt(6)', 'J1'."""
    if isinstance(text, Socle):
        return text
    t = text.strip()
    if t in SPORADIC:
        return Socle("sporadic", name=t)
    if t in MATRIX_NAMES:
        return Socle("matrix", name=t)
    m = re.fullmatch(r"Alt\((\d+)\)", t)
    if m:
        return Socle("Alt", degree=int(m.group(1)))
    m = re.fullmatch(r"PS(L|U|p)\((\d+),(\d+)\)", t)
    if m:
        kind, n, q = m.group(1), int(m.group(2)), int(m.group(3))
        if kind == "L":
            return Socle("A", n - 1, q)
        if kind == "U":
            return Socle("2A", n - 1, q)
        if n % 2:
            raise BadParameters(f"symplectic dimension must be even: {t}")
        return Socle("C", n // 2, q)
    m = re.fullmatch(r"Sz\((\d+)\)", t)
    if m:
        return Socle("2B2", 2, int(m.group(1)))
    m = re.fullmatch(r"(2F4)\(2\)'", t)
    if m:
        return Socle("2F4", 4, 2)
    m = re.fullmatch(r"([23]?)([A-G])(\d+)\((\d+)\)", t)
    if m:
        tw, typ, r, q = m.group(1), m.group(2), int(m.group(3)), int(m.group(4))
        fam = tw + typ
        if fam in _RANKED:
            return Socle(fam, r, q)
        fam = f"{tw}{typ}{r}"
        if fam in _EXCEPTIONAL:
            return Socle(fam, _EXCEPTIONAL[fam], q)
    raise BadParameters(f"unrecognized socle descriptor {text!r}")


@dataclass(frozen=True)
class ADescriptor:
    aut: bool = False
    inner_diagonal: bool = False
    field_order: int = 1
    graph_order: int = 1
    graph_field: bool = False
    phi2prime: bool = False
    centralizer: str | None = None

    def label(self):
        parts = []
        if self.aut:
            parts.append("Aut")
        if self.inner_diagonal:
            parts.append("Ghat")
        if self.field_order > 1:
            parts.append(f"field={self.field_order}")
        if self.graph_order > 1:
            parts.append(f"graph={self.graph_order}")
        if self.graph_field:
            parts.append("graph_field")
        if self.phi2prime:
            parts.append("phi2prime")
        if self.centralizer:
            parts.append(f"centralizer={self.centralizer}")
        return ",".join(parts) or "S"


def parse_a(text):
    if isinstance(text, ADescriptor):
        return text
    kw = {}
    for part in (p.strip() for p in (text or "S").split(",")):
        if part in ("", "S", "A=S"):
            continue
        if part in ("Aut", "A=Aut(S)", "Aut(S)"):
            kw["aut"] = True
        elif part in ("Ghat", "inner_diagonal"):
            kw["inner_diagonal"] = True
        elif part == "graph_field":
            kw["graph_field"] = True
        elif part == "phi2prime":
            kw["phi2prime"] = True
        elif part.startswith("field="):
            kw["field_order"] = int(part[6:])
        elif part.startswith("graph="):
            kw["graph_order"] = int(part[6:])
        elif part.startswith("centralizer="):
            kw["centralizer"] = part[12:]
        else:
            raise BadParameters(f"unknown A flag {part!r}")
    return ADescriptor(**kw)


# ---------------------------------------------------------------------------
# matching


def _num_ok(spec, value):
    if spec is None:
        return True
    if value is None:
        return False
    if "eq" in spec and value != spec["eq"]:
        return False
    if "min" in spec and value < spec["min"]:
        return False
    return True


def _socle_matches(spec, S):
    fam = spec["family"]
    fams = fam if isinstance(fam, list) else [fam]
    if S.family not in fams:
        return False
    if "names" in spec and S.name not in spec["names"]:
        return False
    if "exclude" in spec and S.name in spec["exclude"]:
        return False
    if not _num_ok(spec.get("degree"), S.degree):
        return False
    if not _num_ok(spec.get("rank"), S.rank):
        return False
    if not _num_ok(spec.get("q"), S.q):
        return False
    ch = spec.get("char")
    if ch is not None:
        if ch == "odd" and S.p % 2 == 0:
            return False
        if isinstance(ch, int) and S.p != ch:
            return False
    if "q_mod8" in spec and S.q % 8 not in spec["q_mod8"]:
        return False
    e = spec.get("exp")
    if e:
        f = S.f
        if e.get("odd") and f % 2 == 0:
            return False
        if e.get("even") and f % 2:
            return False
        if "min" in e and f < e["min"]:
            return False
        if "not_div" in e and f % e["not_div"] == 0:
            return False
        if "half_not_div" in e and (f // 2) % e["half_not_div"] == 0:
            return False
    if "exp_min_rank1" in spec and S.rank == 1 and S.f < spec["exp_min_rank1"]:
        return False
    return True


def _condition_holds(row, S, A):
    c = row["condition"]
    if c == "none":
        return True
    if c == "aut":
        return A.aut
    if c == "inner_diagonal":
        return A.aut or A.inner_diagonal
    if c == "field_full":
        return A.aut or A.field_order == S.f
    if c == "field_full_no_diagonal":
        return not A.aut and not A.inner_diagonal and A.field_order == S.f
    if c == "graph_field":
        # S < A <= S : <zeta>: no diagonal part, field part inside <zeta^2>
        return (A.graph_field and not A.aut and not A.inner_diagonal
                and (S.f // 2) % A.field_order == 0 and A.centralizer == row.get("centralizer"))
    if c == "field_2prime":
        # S < A <= Ghat : <phi_2'>: odd field part only
        return (A.phi2prime and not A.aut and A.field_order % 2 == 1
                and A.centralizer == row.get("centralizer"))
    raise BadParameters(f"unknown condition tag {c!r}")


@dataclass
class QueryResult:
    exists: bool
    row: str | None
    structure: str | None
    order_rule: object = None
    table: str | None = None
    socle_rows: list = dc_field(default_factory=list)

    def as_dict(self):
        return {"exists": self.exists, "row": self.row, "structure": self.structure,
                "order_rule": self.order_rule, "table": self.table,
                "socle_rows": self.socle_rows}


def catalog_query(socle, a="S", catalog=None):
    """The unique row whose socle pattern and condition match, or a no-Carter answer."""
    S = parse_socle(socle)
    A = parse_a(a)
    data = catalog or load_catalog()
    socle_rows = [r for r in data["rows"] if _socle_matches(r["socle"], S)]
    hits = [r for r in socle_rows if _condition_holds(r, S, A)]
    if len(hits) > 1:
        raise AmbiguousDescriptor(f"{S.label()} with A={A.label()} matches rows "
                                  + ", ".join(r["id"] for r in hits))
    ids = [r["id"] for r in socle_rows]
    if not hits:
        return QueryResult(False, None, None, None, None, ids)
    r = hits[0]
    return QueryResult(r["exists"], r["id"], r["structure"], r.get("order_rule"), r["table"], ids)


# ---------------------------------------------------------------------------
# hook for the existence criterion


def describe_almost_simple(A, factor):
    """(socle, A-descriptor) for an induced group A whose socle is named by factor, or None."""
    try:
        S = parse_socle(factor.simple)
    except BadParameters:
        return None
    s_order, exact = integer_nthroot(factor.order, factor.k)
    if not exact:
        return None
    if A.order() % s_order:
        return None
    out = A.order() // s_order
    if out == 1:
        return S, ADescriptor()
    if S.family == "Alt" and S.degree != 6 and out == 2:
        return S, ADescriptor(aut=True)
    if S.family == "A" and S.rank == 1 and S.p % 2 and out % 2 and S.f % out == 0:
        return S, ADescriptor(field_order=out)
    return None


def catalog_hook(A, factor):
    """Verdict for the criterion walk: {'exists', 'row'} or None if not describable."""
    desc = describe_almost_simple(A, factor)
    if desc is None:
        return None
    S, D = desc
    res = catalog_query(S, D)
    return {"exists": res.exists, "row": res.row, "socle": S.label(), "A": D.label()}


# ---------------------------------------------------------------------------
# cross-checks against computation


@dataclass
class InstanceProbe:
    socle: str
    a: str
    group_order: int
    row: str | None
    catalog_exists: bool
    computed_exists: bool | None
    computed_order: int | None
    expected_order: int | None
    path: str
    catalog_sourced: bool
    verdict: str

    def as_dict(self):
        return dict(self.__dict__)


def build_instance(socle, a="S"):
    """(A, S) as permutation groups for a constructible (socle, A) pair."""
    from .matgrp import classical_group, semilinear_extend
    from .perm import alternating_group, symmetric_group

    S = parse_socle(socle)
    D = parse_a(a)
    if S.family == "Alt":
        if D == ADescriptor():
            G = alternating_group(S.degree)
            return G, G
        if D == ADescriptor(aut=True) and S.degree != 6:
            return symmetric_group(S.degree), alternating_group(S.degree)
        raise OutOfRange(f"A={D.label()} not constructed for {S.label()}")
    if S.family == "matrix":
        m = re.fullmatch(r"(P?GU|SL|Sp)\((\d+),(\d+)\)", S.name)
        if not m:
            raise OutOfRange(f"{S.name} not constructed")
        G = classical_group(m.group(1), int(m.group(2)), int(m.group(3))).perm
        return G, G
    if D.graph_order > 1 or D.graph_field or D.phi2prime or D.aut:
        raise OutOfRange("only inner-diagonal and field extensions are constructed")
    fam = {"A": ("PSL", "PGL", 1), "2A": ("PSU", "PGU", 1), "C": ("PSp", None, 2),
           "B": ("PSp", None, 2)}.get(S.family)
    if fam is None or (S.family == "B" and S.rank != 2):
        raise OutOfRange(f"{S.label()} not constructed")
    n = (S.rank + 1) if fam[2] == 1 else 2 * S.rank
    simple = classical_group(fam[0], n, S.q)
    if D.inner_diagonal:
        if fam[1] is None:
            raise OutOfRange(f"inner-diagonal extension of {S.label()} not constructed")
        inst = classical_group(fam[1], n, S.q)
    else:
        inst = simple
    if D.field_order > 1:
        f = S.f if S.family != "2A" else 2 * S.f
        if f % D.field_order:
            raise BadParameters("field order must divide the field degree")
        inst = semilinear_extend(inst, f // D.field_order)
    return inst.perm, simple.perm


def _expected_order(rule, A, S, socle):
    from .perm import normalizer, p_part, sylow

    if rule is None:
        return None
    if isinstance(rule, int):
        return rule
    if rule == "p2(A)":
        return p_part(A.order(), 2)
    if rule == "N_A(P_2(S))":
        return normalizer(A, sylow(S, 2)).order()
    if rule == "3^{t_3}*t":
        t = socle.f
        return 3 ** p_part(t, 3) * t
    raise BadParameters(f"unknown order rule {rule!r}")


def catalog_crosscheck(socle, a="S", progress=False):
    """Run carter_auto on a constructed (S, A) and compare with the catalog."""
    from .carter import carter_auto

    S = parse_socle(socle)
    D = parse_a(a)
    q = catalog_query(S, D)
    A, Sg = build_instance(S, D)
    res = carter_auto(A, progress=progress)
    crit = res.detail.get("criterion", {}) if res.detail else {}
    exp = _expected_order(q.order_rule, A, Sg, S) if q.exists else None
    if res.exists is None:
        verdict = "out-of-range"
    elif res.exists != q.exists:
        verdict = "disagree"
    elif exp is not None and res.order != exp:
        verdict = "disagree"
    else:
        verdict = "agree"
    return InstanceProbe(S.label(), D.label(), A.order(), q.row, q.exists, res.exists,
                         res.order, exp, res.path, bool(crit.get("catalog_sourced")), verdict)


__all__ = ["ADescriptor", "InstanceProbe", "QueryResult", "Socle", "build_instance",
           "catalog_crosscheck", "catalog_hook", "catalog_path", "catalog_query",
           "describe_almost_simple", "load_catalog", "parse_a", "parse_socle"]
