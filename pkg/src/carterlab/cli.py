"""Command-line front end: group-spec parsing, dispatch and JSON output.

Group specs:

    Sym(5)  Alt(6)  Cyclic(4)  Dihedral(5)
    PSL(2,7)  GU(3,2)  PSp(4,3)  ...           classical constructors
    PSL(2,27):phi^1                            adjoin a Frobenius power
    perm deg=4 gens=(0 1),(0 1 2 3)            cycle notation, 0-based points
    matrix q=3 n=2 [projective]                matrix block, one generator per
    1 1                                        group of rows, separated by ';'
    0 1                                        or blank lines; entries are
    ;                                          field-element indices
    0 2
    1 0

Each run prints one JSON document. Exit status: 0 success, 2 crosscheck
disagreement, 1 error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from dataclasses import dataclass, field

from .errors import BadParameters, CarterError, ParseError, UnknownCommand
from .matgrp import FAMILIES, classical_group, matrix_group, semilinear_extend
from .perm import (
    PermGroup,
    chief_series,
    cycle_str,
    cyclic_group,
    dihedral_group,
    is_nilpotent,
    is_solvable,
    parse_cycles,
    power_witness,
    sylow,
)

# ---------------------------------------------------------------------------
# group specs


@dataclass
class GroupSpec:
    kind: str  # "named", "perm", "matrix"
    text: str
    name: str = ""
    args: tuple = ()
    frob: int = 0
    degree: int = 0
    gens: list = field(default_factory=list)
    q: int = 0
    n: int = 0
    projective: bool = False
    matrices: list = field(default_factory=list)

    def build(self):
        """(PermGroup, labels) for the described group."""
        if self.kind == "perm":
            return PermGroup(self.degree, self.gens), {}
        if self.kind == "matrix":
            inst = matrix_group(self.q, self.n, self.matrices, projective=self.projective)
            return inst.perm, inst.labels
        if self.name == "Cyclic":
            return cyclic_group(*self.args), {}
        if self.name == "Dihedral":
            return dihedral_group(*self.args), {}
        inst = classical_group(self.name, *self.args)
        if self.frob:
            inst = semilinear_extend(inst, self.frob)
        return inst.perm, inst.labels


def _loc(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


_NAMED = re.compile(r"\s*([A-Za-z]+)\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*(?::\s*phi\^(\d+)\s*)?$")


def parse_group_spec(text):
    """Parse a group spec; ParseError carries line and column."""
    if not text or not text.strip():
        raise ParseError("empty group spec", 1, 1)
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    if stripped.startswith("perm"):
        return _parse_perm(text, offset)
    if stripped.startswith("matrix"):
        return _parse_matrix(text, offset)
    m = _NAMED.match(text)
    if not m:
        line, col = _loc(text, offset)
        raise ParseError(f"unrecognized group spec {text.strip()!r}", line, col)
    name = m.group(1)
    known = set(FAMILIES) | {"Cyclic", "Dihedral"}
    if name not in known:
        line, col = _loc(text, m.start(1))
        raise ParseError(f"unknown constructor {name!r}", line, col)
    args = (int(m.group(2)),) if m.group(3) is None else (int(m.group(2)), int(m.group(3)))
    if name in ("Sym", "Alt", "Cyclic", "Dihedral") and len(args) != 1:
        line, col = _loc(text, m.start(3))
        raise ParseError(f"{name} takes one argument", line, col)
    if name not in ("Sym", "Alt", "Cyclic", "Dihedral") and len(args) != 2:
        line, col = _loc(text, m.end(2))
        raise ParseError(f"{name} takes dimension and field size", line, col)
    frob = int(m.group(4)) if m.group(4) else 0
    if frob and len(args) != 2:
        line, col = _loc(text, m.start(4))
        raise ParseError("field automorphisms need a matrix group", line, col)
    return GroupSpec("named", text, name=name, args=args, frob=frob)


def _split_generators(text, start):
    """Split 'a,b,c' at commas outside parentheses; yields (piece, position)."""
    depth = 0
    piece_start = start
    out = []
    for i in range(start, len(text)):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", *_loc(text, i))
        elif ch == "," and depth == 0:
            out.append((text[piece_start:i], piece_start))
            piece_start = i + 1
    if depth:
        raise ParseError("unclosed '('", *_loc(text, len(text)))
    out.append((text[piece_start:], piece_start))
    return out


def _parse_perm(text, offset):
    m = re.compile(r"perm\s+deg\s*=\s*(\d+)\s+gens\s*=\s*").match(text, offset)
    if not m:
        raise ParseError("expected 'perm deg=N gens=...'", *_loc(text, offset))
    deg = int(m.group(1))
    gens = []
    for piece, pos in _split_generators(text.rstrip(), m.end()):
        lead = len(piece) - len(piece.lstrip())
        if not piece.strip():
            raise ParseError("empty generator", *_loc(text, pos))
        if not re.fullmatch(r"\s*(\(\s*\d+(\s+\d+)*\s*\)\s*)+|\s*\(\s*\)\s*", piece):
            raise ParseError(f"bad cycle notation {piece.strip()!r}", *_loc(text, pos + lead))
        try:
            gens.append(parse_cycles(deg, piece))
        except (CarterError, ValueError, IndexError) as exc:
            raise ParseError(f"bad generator {piece.strip()!r}: {exc}", *_loc(text, pos + lead))
    return GroupSpec("perm", text, degree=deg, gens=gens)


def _parse_matrix(text, offset):
    lines = text[offset:].split("\n")
    base_line = text.count("\n", 0, offset) + 1
    head = lines[0]
    m = re.fullmatch(r"\s*matrix\s+q\s*=\s*(\d+)\s+n\s*=\s*(\d+)(\s+projective)?\s*", head)
    if not m:
        raise ParseError("expected 'matrix q=Q n=N [projective]'", base_line, 1)
    q, n = int(m.group(1)), int(m.group(2))
    mats, cur = [], []
    for k, line in enumerate(lines[1:], start=1):
        s = line.strip()
        if s in ("", ";"):
            if cur:
                mats.append(cur)
                cur = []
            continue
        try:
            row = [int(x) for x in s.split()]
        except ValueError:
            raise ParseError("matrix entries must be integers", base_line + k, 1)
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", base_line + k, 1)
        if any(x < 0 or x >= q for x in row):
            raise ParseError(f"entries must lie in 0..{q - 1}", base_line + k, 1)
        cur.append(row)
        if len(cur) == n:
            mats.append(cur)
            cur = []
    if cur:
        raise ParseError("incomplete matrix", base_line + len(lines) - 1, 1)
    if not mats:
        raise ParseError("no generators", base_line, 1)
    return GroupSpec("matrix", text, q=q, n=n, projective=bool(m.group(3)), matrices=mats)


# ---------------------------------------------------------------------------
# commands


def _subgroup_dict(K):
    return {"order": K.order(), "generators": [cycle_str(g) for g in K.gens]}


def _group_required(spec):
    if spec is None:
        raise BadParameters("this command needs a group spec")
    G, labels = parse_group_spec(spec).build()
    return G, labels


def _parse_element(G, labels, text):
    if text in labels:
        return labels[text]
    return parse_cycles(G.degree, text)


def _parse_root(text):
    return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))


def run(command, spec=None, flags=None, progress=False):
    """Execute one command; returns (record dict, exit status)."""
    from . import carter, catalog, chevalley, rootsys

    flags = flags or {}
    out = {}
    status = 0
    if command == "order":
        G, _ = _group_required(spec)
        out = {"order": G.order(), "degree": G.degree}
    elif command == "nilpotent":
        G, _ = _group_required(spec)
        out = {"nilpotent": is_nilpotent(G), "solvable": is_solvable(G), "order": G.order()}
    elif command == "sylow":
        G, _ = _group_required(spec)
        p = flags.get("p")
        if not p:
            raise BadParameters("sylow needs -p")
        out = {"p": p, "sylow": _subgroup_dict(sylow(G, p))}
    elif command == "carter":
        G, _ = _group_required(spec)
        method = flags.get("method") or "auto"
        if method == "auto":
            res = carter.carter_auto(G, progress=progress)
        elif method == "solvable":
            res = carter.carter_solvable(G)
        elif method == "syl2":
            res = carter.carter_syl2(G)
        elif method == "brute":
            res = carter.carter_brute(G)
        elif method == "criterion":
            ok, cert = carter.satisfies_E(G, progress=progress)
            res = carter.CarterResult(ok, [], [], "criterion", {"criterion": cert.as_dict()})
        else:
            raise BadParameters(f"unknown method {method!r}")
        out = res.as_dict()
    elif command == "esyl2":
        G, _ = _group_required(spec)
        out = {"esyl2": carter.esyl2(G)}
    elif command == "criterion-e":
        G, _ = _group_required(spec)
        ok, cert = carter.satisfies_E(G, progress=progress)
        out = {"satisfies_E": ok, "certificate": cert.as_dict()}
    elif command == "chief-series":
        G, _ = _group_required(spec)
        cs = chief_series(G)
        out = {"factors": [f.as_dict() for f in cs.factors],
               "term_orders": [T.order() for T in cs.terms]}
    elif command == "conj-power":
        G, labels = _group_required(spec)
        if not flags.get("x"):
            raise BadParameters("conj-power needs -x")
        x = _parse_element(G, labels, flags["x"])
        from .perm import conjugacy_class, order

        out = {"element": cycle_str(x), "order": order(x),
               "class_size": len(conjugacy_class(G, x)), "power_witness": power_witness(G, x)}
    elif command == "weyl":
        Phi = rootsys.root_system(_need(flags, "type"))
        if flags.get("e6_order3_check"):
            if Phi.type_label != "E6":
                raise BadParameters("the order-3 check is defined for E6")
            orders = rootsys.order3_centralizer_orders("E6")
            out = {"pass": 3 not in orders, "centralizer_orders": orders}
        elif flags.get("w0"):
            w0 = rootsys.longest_element(Phi)
            out = {"length": rootsys.length(w0), "order": w0.order(),
                   "minus_one": rootsys.minus_one_test(Phi)}
        else:
            out = {"order": rootsys.weyl_group(Phi).order()}
        out["type"] = Phi.type_label
    elif command == "subsystems":
        Phi = rootsys.root_system(_need(flags, "type"))
        bds = rootsys.borel_de_siebenthal(Phi)
        out = {"type": Phi.type_label, "bds": [d.label for d in bds]}
        if flags.get("oracle"):
            orc = rootsys.closed_subsystems_oracle(Phi)
            inside, full = rootsys.bds_vs_oracle(Phi)
            out.update({"oracle": [d.label for d in orc], "bds_in_oracle": inside,
                        "full_rank_in_bds": full})
    elif command == "chevalley":
        label = _need(flags, "type")
        q = int(_need(flags, "q"))
        if flags.get("verify_tables"):
            rep = chevalley.verify_unipotent_table(label, q)
            out = json.loads(json.dumps(rep, default=str))
        elif flags.get("hartley_shute"):
            r, s = flags["hartley_shute"]
            out = chevalley.hartley_shute_witness(label, q, _parse_root(r), int(s))
        else:
            fails, total = chevalley.commutator_suite(label, q)
            out = {"type": label, "q": q, "jacobi_failures": chevalley.jacobi_check(label),
                   "commutator_failures": fails, "commutator_cases": total,
                   "additivity_failures": chevalley.additivity_check(label, q),
                   "torus_square_failures": chevalley.torus_square_check(label, q)}
    elif command == "catalog":
        a = flags.get("a") or "S"
        if flags.get("query"):
            out = catalog.catalog_query(flags["query"], a).as_dict()
        elif flags.get("crosscheck"):
            probe = catalog.catalog_crosscheck(flags["crosscheck"], a, progress=progress)
            out = probe.as_dict()
            if probe.verdict == "disagree":
                status = 2
        else:
            data = catalog.load_catalog()
            out = {"path": catalog.catalog_path(), "version": data.get("version"),
                   "rows": [r["id"] for r in data["rows"]]}
    else:
        raise UnknownCommand(f"unknown command {command!r}")
    return out, status


def _need(flags, key):
    if not flags.get(key):
        raise BadParameters(f"--{key} is required")
    return flags[key]


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """Argument errors become CarterErrors so they reach the JSON error path."""

    def error(self, message):
        if "invalid choice" in message and "command" in message:
            raise UnknownCommand(message)
        raise BadParameters(message)


def build_parser():
    ap = _Parser(prog="carterlab", description="Carter subgroup toolkit")
    ap.add_argument("--progress", action="store_true", help="progress messages on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_group(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("group", nargs="?", help="group spec (or use --spec-file)")
        p.add_argument("--spec-file", help="read the group spec from a UTF-8 file")
        return p

    with_group("order")
    with_group("nilpotent")
    p = with_group("sylow")
    p.add_argument("-p", type=int, required=True)
    p = with_group("carter")
    p.add_argument("--method", choices=["auto", "solvable", "syl2", "brute", "criterion"],
                   default="auto")
    with_group("esyl2")
    with_group("criterion-e")
    with_group("chief-series")
    p = with_group("conj-power")
    p.add_argument("-x", required=True, help="element in cycle notation or a generator label")
    p = sub.add_parser("weyl")
    p.add_argument("--type", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--w0", action="store_true")
    g.add_argument("--order", action="store_true")
    g.add_argument("--e6-order3-check", action="store_true")
    p = sub.add_parser("subsystems")
    p.add_argument("--type", required=True)
    p.add_argument("--oracle", action="store_true")
    p = sub.add_parser("chevalley")
    p.add_argument("--type", required=True)
    p.add_argument("-q", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--verify-tables", action="store_true")
    g.add_argument("--commutators", action="store_true")
    g.add_argument("--hartley-shute", nargs=2, metavar=("ROOT", "S"))
    p = sub.add_parser("catalog")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--query", metavar="SOCLE")
    g.add_argument("--crosscheck", metavar="SOCLE")
    p.add_argument("--a", default="S", help="flags describing A (see catalog docs)")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except CarterError as exc:
        json.dump({"command": None, "error": {"code": exc.code, "message": str(exc)}},
                  sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
        return 1
    spec = getattr(args, "group", None)
    if getattr(args, "spec_file", None):
        with open(args.spec_file, encoding="utf-8") as fh:
            spec = fh.read()
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "group", "spec_file")}
    record = {"command": args.command}
    if spec is not None:
        record["input"] = spec
        record["input_digest"] = hashlib.sha256(spec.encode("utf-8")).hexdigest()[:16]
    t0 = time.perf_counter()
    try:
        out, status = run(args.command, spec, flags, progress=args.progress)
        record.update(out)
    except CarterError as exc:
        record["error"] = {"code": exc.code, "message": str(exc)}
        if isinstance(exc, ParseError):
            record["error"].update({"line": exc.line, "column": exc.column})
        status = 1
    record["timing_s"] = round(time.perf_counter() - t0, 3)
    json.dump(record, sys.stdout, sort_keys=True, default=_json_default)
    sys.stdout.write("\n")
    return status


def _json_default(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "item"):
        return x.item()
    return str(x)


if __name__ == "__main__":
    sys.exit(main())
