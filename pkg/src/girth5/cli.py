"""Command-line entry point: ``girth5 <command> ...``.

Exit codes: 0 success, 1 a verification or decision failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import suites
from .catalog import (
    ChainSpec, make_chain, make_exceptional, make_mycielski, narrow_cylinder_instances,
)
from .coloring import ColoringError, extends, is_phi_critical, is_ring_critical
from .embedding import EmbeddedGraph, EmbeddingError, emit_document, parse_document
from .enumeration import BudgetExceeded, SearchSpec, enumerate_critical
from .topology import cycle_class
from .weights import face_weight, graph_weight


class UsageError(Exception):
    pass


def _frac(x):
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _load(path: str) -> EmbeddedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_document(text)


def _phi(G: EmbeddedGraph, spec: str | None) -> dict:
    if not spec:
        return dict(G.precoloring)
    out = {}
    for item in spec.split(","):
        try:
            v, c = item.split("=")
            out[int(v)] = int(c)
        except ValueError:
            raise UsageError(f"bad --phi entry {item!r}, expected v=c") from None
    return out


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands -----------------------------------------------------------------------------


def cmd_color(args) -> int:
    G = _load(args.file)
    phi = _phi(G, args.phi)
    psi = extends(G, phi)
    payload = {"extends": psi is not None, "coloring": {str(v): c for v, c in sorted((psi or {}).items())}}
    text = "no extension" if psi is None else "extends: " + " ".join(f"{v}={c}" for v, c in sorted(psi.items()))
    _emit(args, payload, text)
    return 0 if psi is not None else 1


def cmd_critical(args) -> int:
    G = _load(args.file)
    if args.phi:
        ok = is_phi_critical(G, _phi(G, args.phi))
        _emit(args, {"phi_critical": ok}, f"phi-critical: {ok}")
        return 0 if ok else 1
    rep = is_ring_critical(G)
    wit = {str(e): {str(v): c for v, c in sorted(phi.items())} for e, phi in sorted(rep.witnesses.items())}
    lines = [f"ring-critical: {rep.critical}" + (f" ({rep.reason})" if rep.reason else "")]
    for e, phi in sorted(rep.witnesses.items()):
        u, v = G.edges[e]
        lines.append(f"  edge {e} ({u}-{v}): " + " ".join(f"{x}={c}" for x, c in sorted(phi.items())))
    _emit(args, {"critical": rep.critical, "reason": rep.reason, "witnesses": wit}, "\n".join(lines))
    return 0 if rep.critical else 1


def cmd_weigh(args) -> int:
    G = _load(args.file)
    rows = []
    for f in G.faces:
        if f.is_ring_face:
            continue
        rows.append({"face": f.index, "length": f.length, "open_2cell": f.open_2cell,
                     "weight": _frac(face_weight(f))})
    total = graph_weight(G)
    lines = [f"w(G,R) = {_frac(total)}"]
    lines += [f"  face {r['face']}: length {r['length']} {'2-cell' if r['open_2cell'] else 'non-2-cell'}"
              f" weight {r['weight']}" for r in rows]
    _emit(args, {"weight": _frac(total), "faces": rows}, "\n".join(lines))
    return 0


def cmd_classify_cycle(args) -> int:
    G = _load(args.file)
    try:
        C = [int(x) for x in args.cycle.split(",")]
    except ValueError:
        raise UsageError("--cycle takes comma-separated vertex ids") from None
    cls = cycle_class(G, C)
    _emit(args, cls.to_json(), str(cls))
    return 0


def _abstract_document(A) -> EmbeddedGraph:
    rot = {v: sorted(ns) for v, ns in A.adj.items()}
    return EmbeddedGraph.from_neighbor_rotation(rot)


def cmd_catalog(args) -> int:
    fam, params = args.family, args.params
    try:
        if fam == "chain":
            ch = make_chain(ChainSpec(int(params[0]), args.embedding))
            G = ch.graph if args.embedding != "abstract" else _abstract_document(ch.graph)
        elif fam == "exceptional":
            att = [int(x) for x in args.attachment.split(",")] if args.attachment else None
            G = make_exceptional(params[0], int(params[1]), att)
        elif fam == "mycielski":
            G = _abstract_document(make_mycielski(int(params[0])))
        elif fam == "narrow":
            table = dict(narrow_cylinder_instances())
            if params[0] not in table:
                raise UsageError(f"unknown instance {params[0]!r}; known: {', '.join(table)}")
            G = table[params[0]]
        else:
            raise UsageError(f"unknown family {fam!r}")
    except (IndexError, ValueError) as e:
        raise UsageError(f"bad parameters for {fam}: {e}") from None
    doc = emit_document(G)
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return 0


def cmd_enumerate(args) -> int:
    rings = tuple(int(x) for x in args.ring.split(","))
    spec = SearchSpec(args.topology, rings, args.girth, args.max_internal,
                      not args.allow_contractible_short, args.induced_ring, args.free_cuff)
    found = enumerate_critical(spec)
    index = {"spec": {"topology": spec.topology, "rings": list(rings), "girth": spec.girth_floor,
                      "max_internal": spec.max_internal_vertices, "induced_ring": spec.induced_ring,
                      "free_cuff": spec.free_cuff},
             "count": len(found), "instances": []}
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for i, G in enumerate(found):
        rep = is_ring_critical(G)
        name = f"instance-{i:03d}.graph"
        index["instances"].append({
            "file": name, "vertices": len(G.vertices), "edges": len(G.edges),
            "certificate": {str(e): {str(v): c for v, c in sorted(phi.items())}
                            for e, phi in sorted(rep.witnesses.items())},
        })
        if out:
            (out / name).write_text(emit_document(G), encoding="utf-8")
    if out:
        (out / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n")
    _emit(args, index, f"{len(found)} critical graph(s)" + (f" written to {out}" if out else ""))
    return 0


def _parse_budgets(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"bad --budget {item!r}, expected key=value")
        k, v = item.split("=", 1)
        out[k] = v
    return out


def cmd_verify(args) -> int:
    over = _parse_budgets(args.budget)
    if args.n is not None:
        over["grotzsch.n"] = args.n
    if args.trials is not None:
        over["grotzsch.trials"] = args.trials
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    try:
        suites.merge_budgets(over)
    except suites.SuiteError as e:
        raise UsageError(str(e)) from None
    reports = []
    for name in names:
        rep = suites.run_suite(name, over)
        reports.append(rep)
        if not args.json:
            print(rep.summary(), flush=True)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            Path(args.out, f"{name}.json").write_text(rep.dumps() + "\n")
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    return 0 if all(r.ok for r in reports) else 1


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="girth5", description="Embedded graphs with rings, 3-coloring extension "
                                "and exhaustive checks for girth-five graphs on surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("color", help="extend a ring precoloring"))
    sp.add_argument("file")
    sp.add_argument("--phi", help="precoloring v=c,... (default: the document's precoloring line)")
    sp.set_defaults(func=cmd_color)

    sp = common(sub.add_parser("critical", help="ring- or phi-criticality with witnesses"))
    sp.add_argument("file")
    sp.add_argument("--phi")
    sp.set_defaults(func=cmd_critical)

    sp = common(sub.add_parser("weigh", help="face weights and w(G,R)"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_weigh)

    sp = common(sub.add_parser("classify-cycle", help="topological class of a cycle"))
    sp.add_argument("file")
    sp.add_argument("--cycle", required=True)
    sp.set_defaults(func=cmd_classify_cycle)

    cat = sub.add_parser("catalog", help="named graph families")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    sp = csub.add_parser("emit", help="write a family member as a graph document")
    sp.add_argument("family", choices=["chain", "exceptional", "mycielski", "narrow"])
    sp.add_argument("params", nargs="+")
    sp.add_argument("--embedding", default="abstract", choices=["abstract", "canonical-klein", "broken-cylinder"])
    sp.add_argument("--attachment")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_catalog)

    sp = common(sub.add_parser("enumerate", help="exhaustive search for ring-critical graphs"))
    sp.add_argument("--topology", required=True, choices=["disk", "cylinder"])
    sp.add_argument("--ring", required=True, help="ring lengths, comma separated")
    sp.add_argument("--girth", type=int, default=5)
    sp.add_argument("--max-internal", type=int, default=4)
    sp.add_argument("--induced-ring", action="store_true")
    sp.add_argument("--free-cuff", action="store_true")
    sp.add_argument("--allow-contractible-short", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = common(sub.add_parser("verify", help="run a verification suite"))
    sp.add_argument("suite", help="suite name or 'all': " + ", ".join(suites.SUITES))
    sp.add_argument("--budget", action="append", metavar="KEY=VALUE")
    sp.add_argument("--n", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, EmbeddingError, ColoringError, BudgetExceeded, ValueError) as e:
        print(f"girth5: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
