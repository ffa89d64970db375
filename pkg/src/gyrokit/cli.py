"""Command-line interface: ``gyro <command> ...``.

Every command builds a JSON-serialisable payload first; the human-readable
output is rendered from that payload alone, so ``--json`` and the default
output always carry the same information.

Exit codes: 0 on pass or list output, 1 on a failed check, 2 on usage or
parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import catalog
from .core import construct, is_degenerate, verify_axioms
from .doubling import base_normals, check_corollary, classify_normal, classify_subgyrogroup, double
from .errors import (
    CapExceeded,
    GyroError,
    InvalidGyrogroup,
    NoGoldenData,
    NotASubgyrogroup,
    ParseError,
    UnknownFixture,
)
from .fileformat import parse_document, parse_gyrations, parse_subset, serialize_table
from .subalgebra import (
    SCAN_LIMIT,
    _normality_failure,
    enumerate_subgyrogroups,
    induced,
    is_normal,
    is_subgyrogroup,
    quotient,
    subgyrogroups_by_generators,
)

PASS, FAIL, LIST = "pass", "fail", "list"


@dataclass
class RunReport:
    command: list
    outcome: str
    payload: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 1 if self.outcome == FAIL else 0

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "outcome": self.outcome, "payload": self.payload},
            indent=2,
            sort_keys=True,
        ) + "\n"


class UsageError(Exception):
    pass


# -- input helpers ---------------------------------------------------------

def _load_source(args):
    """Returns (table, labels, description) for FILE or --fixture."""
    if getattr(args, "fixture", None):
        fx = catalog.fixture(args.fixture)
        G = fx.gyrogroup
        return G.table, G.labels, args.fixture
    if not getattr(args, "file", None):
        raise UsageError("give a table FILE or --fixture NAME")
    doc = parse_document(_read(args.file))
    return doc.table, doc.labels, args.file


def _load_gyrogroup(args):
    table, labels, desc = _load_source(args)
    return construct(table, labels=labels), desc


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _sets(subsets):
    return [list(S.elements()) for S in subsets]


def _nondegenerate(G, subsets):
    return [not is_degenerate(induced(G, S)) for S in subsets]


def _subgyrogroups(G, generators):
    if generators is None and G.order <= SCAN_LIMIT:
        return enumerate_subgyrogroups(G), True, "scan"
    found, complete = subgyrogroups_by_generators(G, generators or 3)
    return found, complete, "generators"


# -- commands --------------------------------------------------------------

def cmd_verify(args) -> RunReport:
    table, labels, desc = _load_source(args)
    report = verify_axioms(table)
    payload = {"source": desc, "order": table.order, **report.to_dict()}
    ok = report.valid
    if ok:
        G = construct(table, labels=labels)
        payload["identity"] = G.identity
        payload["degenerate"] = is_degenerate(G)
        payload["distinct_gyrations"] = [list(p.images) for p in G.distinct_gyrations]
    if args.expect_gyr:
        expected = parse_gyrations(_read(args.expect_gyr), table.order)
        if ok:
            bad = np.argwhere((expected != G.gyr_array).any(axis=2))
            payload["gyration_mismatches"] = [[int(a), int(b)] for a, b in bad]
            ok = not len(bad)
        else:
            payload["gyration_mismatches"] = None
    return RunReport(["verify", desc], PASS if ok else FAIL, payload)


def _read_phi(path, n):
    tokens = [t for line in _read(path).splitlines() if not line.strip().startswith("#") for t in line.split()]
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"phi file {path} must hold {n} integers") from None


def cmd_double(args) -> RunReport:
    H, desc = _load_gyrogroup(args)
    phi = _read_phi(args.phi, H.order) if args.phi else None
    D = double(H, phi)
    payload = {
        "source": desc,
        "order": D.whole.order,
        "phi": list(D.phi),
        "table": D.whole.table.rows(),
    }
    if args.gyr:
        payload["gyrations"] = D.whole.gyr_array.tolist()
    return RunReport(["double", desc], PASS, payload)


def cmd_subs(args) -> RunReport:
    G, desc = _load_gyrogroup(args)
    found, complete, mode = _subgyrogroups(G, args.generators)
    payload = {
        "source": desc,
        "mode": mode,
        "complete": complete,
        "sets": _sets(found),
        "nondegenerate": _nondegenerate(G, found),
    }
    return RunReport(["subs", desc], LIST, payload)


def cmd_normals(args) -> RunReport:
    G, desc = _load_gyrogroup(args)
    found, complete, mode = _subgyrogroups(G, args.generators)
    normals = [S for S in found if _normality_failure(G, S) is None]
    payload = {
        "source": desc,
        "mode": mode,
        "complete": complete,
        "sets": _sets(normals),
        "nondegenerate": _nondegenerate(G, normals),
    }
    outcome = LIST
    if args.golden:
        gold = catalog.golden_normals(args.golden)
        got = {tuple(s) for s in payload["sets"]}
        want = {S.elements() for S in gold.sets}
        payload["golden"] = args.golden
        payload["missing"] = [list(s) for s in sorted(want - got, key=lambda s: (len(s), s))]
        payload["unexpected"] = [list(s) for s in sorted(got - want, key=lambda s: (len(s), s))]
        flags_ok = payload["sets"] == _sets(gold.sets) and payload["nondegenerate"] == list(gold.nondegenerate)
        outcome = PASS if flags_ok else FAIL
    return RunReport(["normals", desc], outcome, payload)


def cmd_quotient(args) -> RunReport:
    G, desc = _load_gyrogroup(args)
    N = parse_subset(args.by, G.order)
    payload = {"source": desc, "by": list(N.elements())}
    if not is_subgyrogroup(G, N):
        payload["error"] = "not a subgyrogroup"
        return RunReport(["quotient", desc], FAIL, payload)
    if not is_normal(G, N):
        payload["error"] = "not normal"
        payload["witness"] = list(_normality_failure(G, N))
        return RunReport(["quotient", desc], FAIL, payload)
    Q, proj = quotient(G, N)
    payload.update(
        {
            "order": Q.order,
            "labels": list(Q.labels),
            "cosets": [[x for x in range(G.order) if proj(x) == i] for i in range(Q.order)],
            "table": Q.table.rows(),
            "degenerate": is_degenerate(Q),
        }
    )
    return RunReport(["quotient", desc], PASS, payload)


def cmd_classify(args) -> RunReport:
    H, desc = _load_gyrogroup(args)
    D = double(H)
    G = D.whole
    payload = {"source": desc, "order": G.order}
    if args.set:
        S = parse_subset(args.set, G.order)
        try:
            if is_subgyrogroup(G, S) and is_normal(G, S):
                rows = [{"kind": "normal", **classify_normal(D, S).to_dict()}]
            else:
                rows = [{"kind": "subgyrogroup", **classify_subgyrogroup(D, S).to_dict()}]
        except NotASubgyrogroup:
            payload["error"] = f"{S} is not a subgyrogroup of the doubled gyrogroup"
            return RunReport(["classify", desc], FAIL, payload)
    elif args.subs:
        found, _, _ = _subgyrogroups(G, None)
        rows = [{"kind": "subgyrogroup", **classify_subgyrogroup(D, S).to_dict()} for S in found]
    else:
        found, _, _ = _subgyrogroups(G, None)
        rows = [
            {"kind": "normal", **classify_normal(D, S).to_dict()}
            for S in found
            if _normality_failure(G, S) is None
        ]
    payload["classifications"] = rows
    return RunReport(["classify", desc], LIST, payload)


def cmd_corollary(args) -> RunReport:
    H, desc = _load_gyrogroup(args)
    D = double(H)
    report = check_corollary(D, base_normals(D))
    payload = {"source": desc, "order": D.whole.order, **report.to_dict()}
    return RunReport(["corollary", desc], PASS if report.passed else FAIL, payload)


def cmd_fixture(args) -> RunReport:
    fx = catalog.fixture(args.name)
    G = fx.gyrogroup
    payload = {
        "name": fx.name,
        "order": G.order,
        "identity": G.identity,
        "provenance": fx.provenance,
        "degenerate": is_degenerate(G),
    }
    if args.emit:
        payload["table"] = G.table.rows()
    if args.gyr:
        payload["gyrations"] = G.gyr_array.tolist()
    return RunReport(["fixture", args.name], LIST, payload)


# -- human rendering (from payloads only) ----------------------------------

_WITNESS_KEYS = ("M", "B", "N+", "A+", "L-", "L+", "N-", "A-")


def _fmt_set(elems, mark=False):
    return "{" + ",".join(map(str, elems)) + "}" + ("*" if mark else "")


def _gyr_listing(gyrations) -> str:
    n = len(gyrations)
    return "".join(
        f"{a} {b}: " + " ".join(map(str, gyrations[a][b])) + "\n" for a in range(n) for b in range(n)
    )


def render(report: RunReport) -> str:
    cmd, p = report.command[0], report.payload
    if cmd == "verify":
        lines = [f"verify {p['source']}: {report.outcome}", f"order {p['order']}"]
        if "identity" in p:
            lines.append(f"identity {p['identity']}")
            lines.append("degenerate (a group)" if p["degenerate"] else "nondegenerate")
            lines.append(f"distinct gyrations {len(p['distinct_gyrations'])}")
        for v in p["violations"]:
            lines.append(f"violation {v['axiom']} {tuple(v['witness'])}")
        if "gyration_mismatches" in p:
            mm = p["gyration_mismatches"]
            if mm is None:
                lines.append("gyrations: not compared (table invalid)")
            elif mm:
                lines.append(f"gyrations: {len(mm)} mismatching pair(s), first {tuple(mm[0])}")
            else:
                lines.append("gyrations: match")
        return "\n".join(lines) + "\n"
    if cmd in ("double", "fixture"):
        out = ""
        if cmd == "fixture" and "table" not in p and "gyrations" not in p:
            kind = "degenerate" if p["degenerate"] else "nondegenerate"
            out += f"{p['name']}: order {p['order']}, identity {p['identity']}, {kind}, {p['provenance']}\n"
        if "table" in p:
            out += serialize_table(p["table"])
        if "gyrations" in p:
            out += _gyr_listing(p["gyrations"])
        return out
    if cmd in ("subs", "normals"):
        out = format_set_list_payload(p["sets"], p["nondegenerate"])
        if not p["complete"]:
            out += "# generator-closure mode: list may be incomplete\n"
        if "golden" in p:
            for s in p["missing"]:
                out += "missing " + _fmt_set(s) + "\n"
            for s in p["unexpected"]:
                out += "unexpected " + _fmt_set(s) + "\n"
            out += f"golden {p['golden']}: {report.outcome}\n"
        return out
    if cmd == "quotient":
        if "error" in p:
            return f"quotient by {_fmt_set(p['by'])}: {p['error']}\n"
        out = "".join(f"coset {lab}: {_fmt_set(c)}\n" for lab, c in zip(p["labels"], p["cosets"]))
        return out + serialize_table(p["table"], p["labels"])
    if cmd == "classify":
        if "error" in p:
            return p["error"] + "\n"
        out = []
        for row in p["classifications"]:
            parts = [_fmt_set(row["subset"]), row["kind"], "clauses=" + ",".join(row["clauses"])]
            for clause, pieces in row["witnesses"].items():
                keys = sorted(pieces, key=_WITNESS_KEYS.index)
                parts.append(f"[{clause}] " + " ".join(f"{k}={_fmt_set(pieces[k])}" for k in keys))
            parts.extend(f"! {d}" for d in row["discrepancies"])
            out.append("  ".join(parts))
        return "\n".join(out) + "\n"
    if cmd == "corollary":
        out = []
        for c in p["checks"]:
            line = f"{'pass' if c['passed'] else 'FAIL'} {c['name']} {_fmt_set(c['subset'])}"
            if c["witness"] is not None:
                line += f" witness {tuple(c['witness'])}"
            out.append(line)
        out.append(f"corollary: {report.outcome}")
        return "\n".join(out) + "\n"
    raise AssertionError(cmd)


def format_set_list_payload(sets, marks) -> str:
    return "".join(_fmt_set(s, m) + "\n" for s, m in zip(sets, marks))


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gyro", description="Finite gyrogroup toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        p.add_argument("file", nargs="?", help="table file in 'gyro 1' format")
        p.add_argument("--fixture", metavar="NAME", help="built-in fixture such as K1 or K2")
        p.add_argument("--json", action="store_true", help="print the JSON report")

    p = sub.add_parser("verify", help="check the gyrogroup axioms")
    source(p)
    p.add_argument("--expect-gyr", metavar="FILE", help="golden gyration listing to compare against")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("double", help="emit the doubled gyrogroup table")
    source(p)
    p.add_argument("--phi", metavar="FILE", help="images of 0..n-1 in [n, 2n)")
    p.add_argument("--gyr", action="store_true", help="also emit the gyration listing")
    p.set_defaults(func=cmd_double)

    for name, func, help_ in (
        ("subs", cmd_subs, "enumerate subgyrogroups"),
        ("normals", cmd_normals, "enumerate normal subgyrogroups"),
    ):
        p = sub.add_parser(name, help=help_)
        source(p)
        p.add_argument("--generators", type=int, metavar="K", help="closure of at most K generators instead of a full scan")
        if name == "normals":
            p.add_argument("--golden", metavar="NAME", help="diff against the golden list for NAME")
        p.set_defaults(func=func)

    p = sub.add_parser("quotient", help="quotient by a normal subgyrogroup")
    source(p)
    p.add_argument("--by", required=True, metavar="SET", help="comma-separated elements, e.g. 0,1")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("classify", help="clause report for subsets of the doubled gyrogroup")
    source(p)
    p.add_argument("--set", metavar="SET", help="classify one subset of the double")
    p.add_argument("--subs", action="store_true", help="classify every subgyrogroup instead of the normals")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("corollary", help="normality of the plus copy and of embedded base normals")
    source(p)
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("fixture", help="show a built-in fixture")
    p.add_argument("name")
    p.add_argument("--emit", action="store_true", help="print the table in 'gyro 1' format")
    p.add_argument("--gyr", action="store_true", help="print the gyration listing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fixture)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except (UsageError, ParseError, UnknownFixture, CapExceeded, NoGoldenData) as exc:
        err.write(f"gyro: error: {exc}\n")
        return 2
    except InvalidGyrogroup as exc:
        err.write(f"gyro: input is not a gyrogroup: {exc}\n")
        return 1
    except GyroError as exc:
        err.write(f"gyro: {type(exc).__name__}: {exc}\n")
        return 1
    out.write(report.to_json() if args.json else render(report))
    return report.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
