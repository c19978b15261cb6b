"""Command-line driver.

Every invocation prints a single JSON document on stdout (or a plain table
with --format=text) with the envelope

    {"command": ..., "params": ..., "results": [...], "complete": bool,
     "notes": [...]}

Graphs are always emitted as canonical graph6.  Exit codes: 0 on success,
1 on usage errors, 2 when a search budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceededError, MultiedgeError
from .perm import DEFAULT_ELEMENT_CAP, abelian_invariants
from .graphs import Graph, graph6_decode, graph6_encode, lcf_parse, parse_edge_list
from .fp import (DEFAULT_MAX_COSETS, DEFAULT_NODE_LIMIT, feasibility)
from .analyze import (automorphism_group, canonical_graph, local_action,
                      s_arc_profile)
from .cover import (CoverBuild, CoverSpec, base_graph, build_cover_data,
                    dedupe_by_isomorphism, is_prime, root_candidates,
                    structure_report)

GRAPH_RESTRICTIVE_BOUND = 48  # largest vertex stabilizer, cubic symmetric case


@dataclass(frozen=True)
class Budgets:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_nodes: int = DEFAULT_NODE_LIMIT
    element_cap: int = DEFAULT_ELEMENT_CAP


@dataclass(frozen=True)
class ClassifyConfig:
    k: int
    p: int
    d: int = 3
    c_local: int = GRAPH_RESTRICTIVE_BOUND
    budgets: Budgets = field(default_factory=Budgets)

    @property
    def complete_threshold(self) -> int:
        return self.c_local * self.k


@dataclass(frozen=True)
class CoverReportRow:
    graph6: str
    order: int
    s: int
    aut_order: int


@dataclass(frozen=True)
class ClassifyReport:
    feasible: bool
    covers: tuple[CoverReportRow, ...]
    complete: bool
    notes: tuple[str, ...]


def _analyzed_row(graph: Graph) -> CoverReportRow:
    aut = automorphism_group(graph)
    profile = s_arc_profile(graph, aut)
    return CoverReportRow(graph6=graph6_encode(canonical_graph(graph)),
                          order=graph.n, s=profile.s_max_transitive,
                          aut_order=aut.order())


def classify_order(cfg: ClassifyConfig) -> ClassifyReport:
    """Connected symmetric cubic graphs of order k*p via the cover route.

    Above the stabilizer-bound threshold p >= 48k the list is provably
    complete; below it the same construction runs where its preconditions
    allow, with a note that exceptional graphs are possible.  Every
    reported cover is re-checked structurally (normal semiregular Sylow,
    covering projection, C6 abelianization).
    """
    if not is_prime(cfg.p):
        raise ValueError("%d is not prime" % cfg.p)
    if cfg.k < 2:
        raise ValueError("k must be at least 2")
    if cfg.d != 3:
        raise ValueError("only valency 3 classification is implemented")
    notes: list[str] = []
    complete = cfg.p >= cfg.complete_threshold
    if not complete:
        notes.append("below threshold: exceptional graphs possible, consult census")
    feasible, witnesses = feasibility(cfg.k, cfg.budgets.max_nodes)
    rows: list[CoverReportRow] = []
    if cfg.p % 6 != 1:
        notes.append("p is not 1 mod 6: the cover construction yields nothing")
    elif (3 * cfg.k) % cfg.p == 0:
        notes.append("p divides 3k: the cover construction does not apply")
    elif feasible:
        builds = [build_cover_data(CoverSpec(base=base, prime=cfg.p, root=root))
                  for base in witnesses
                  for root in root_candidates(cfg.p, base.valency)]
        distinct: dict[str, CoverBuild] = {}
        for build in builds:
            cert = graph6_encode(canonical_graph(build.graph))
            distinct.setdefault(cert, build)
        for cert in sorted(distinct, key=lambda c: (len(c), c)):
            build = distinct[cert]
            aut = automorphism_group(build.graph)
            profile = s_arc_profile(build.graph, aut)
            rows.append(CoverReportRow(graph6=cert, order=build.graph.n,
                                       s=profile.s_max_transitive,
                                       aut_order=aut.order()))
            report = structure_report(build.group, build.graph)
            if not report.all_passed or \
                    list(report.abelianization) != [2 * cfg.d]:
                notes.append("structure check failed for %s" % cert)
    return ClassifyReport(feasible=feasible, covers=tuple(rows),
                          complete=complete, notes=tuple(notes))


def feasibility_scan(k_min: int, k_max: int,
                     budgets: Budgets = Budgets()) -> list[dict]:
    """Per-k feasibility over a range; budget errors are recorded per row
    and the scan continues."""
    if not 2 <= k_min <= k_max:
        raise ValueError("need 2 <= k_min <= k_max")
    rows = []
    for k in range(k_min, k_max + 1):
        try:
            feasible, witnesses = feasibility(k, budgets.max_nodes)
            rows.append({"k": k, "feasible": feasible,
                         "witness_count": len(witnesses)})
        except BudgetExceededError as exc:
            rows.append({"k": k, "feasible": None, "error": str(exc)})
    return rows


# ---------------------------------------------------------------------------
# argument handling and output
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="arcgraphs",
                     description="symmetric cubic graphs of order k*p")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    parser.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_LIMIT)
    parser.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("feasibility", help="is there an infinite cubic family"
                                           " of order k*p for this k?")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--range", type=str, metavar="A..B")

    p = sub.add_parser("enumerate-base", help="arc-regular quotient groups of"
                                              " order 3k with their base graphs")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("covers", help="cyclic covers of order k*p")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--zeta", type=int, default=None,
                   help="use one specific root of unity")

    p = sub.add_parser("analyze", help="analyze a graph from a file")
    p.add_argument("--in", dest="infile", type=str, required=True)
    fmt = p.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--graph6", action="store_true")
    fmt.add_argument("--lcf", action="store_true")
    fmt.add_argument("--edges", action="store_true")

    p = sub.add_parser("census-verify", help="recompute named-graph properties")
    p.add_argument("--id", type=str, default=None)

    p = sub.add_parser("classify", help="classify symmetric cubic graphs of"
                                        " order k*p")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    return parser


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, separators=(", ", ": ")))
        return
    print("command: %s" % doc["command"])
    for key, val in sorted(doc["params"].items()):
        print("  %s = %s" % (key, val))
    for row in doc["results"]:
        print("  " + "  ".join("%s=%s" % kv for kv in row.items()))
    print("complete: %s" % doc["complete"])
    for note in doc["notes"]:
        print("note: %s" % note)


def _cmd_feasibility(args, budgets: Budgets) -> dict:
    if args.k is not None:
        lo = hi = args.k
    else:
        lo_s, _, hi_s = args.range.partition("..")
        lo, hi = int(lo_s), int(hi_s)
    rows = feasibility_scan(lo, hi, budgets)
    return {"results": rows, "complete": all("error" not in r for r in rows)}


def _cmd_enumerate_base(args, budgets: Budgets) -> dict:
    from .fp import enumerate_arc_regular_quotients
    rows = []
    for marked in enumerate_arc_regular_quotients(args.k, 3, budgets.max_nodes):
        row = {
            "k": args.k,
            "group_order": marked.group.order(),
            "abelian_invariants": abelian_invariants(marked.group),
            "degenerate": marked.degenerate,
        }
        if not marked.degenerate:
            try:
                row["base_graph6"] = graph6_encode(
                    canonical_graph(base_graph(marked)))
            except MultiedgeError:
                row["base_graph6"] = None
        rows.append(row)
    return {"results": rows, "complete": True}


def _cmd_covers(args, budgets: Budgets) -> dict:
    feasible, witnesses = feasibility(args.k, budgets.max_nodes)
    notes = []
    graphs = []
    for base in witnesses:
        roots = ([args.zeta] if args.zeta is not None
                 else root_candidates(args.p, base.valency))
        for root in roots:
            spec = CoverSpec(base=base, prime=args.p, root=root)
            graphs.append(build_cover_data(spec).graph)
    rows = []
    for graph in dedupe_by_isomorphism(graphs):
        row = _analyzed_row(graph)
        rows.append({"k": args.k, "p": args.p, "graph6": row.graph6,
                     "order": row.order, "s": row.s,
                     "aut_order": row.aut_order})
    if not feasible:
        notes.append("no feasible base group of order %d" % (3 * args.k))
    return {"results": rows, "complete": True, "notes": notes}


def _load_graph(args) -> Graph:
    text = Path(args.infile).read_text()
    if args.graph6:
        return graph6_decode(text.strip().splitlines()[0])
    if args.lcf:
        return lcf_parse(text.strip())
    return parse_edge_list(text)


def _cmd_analyze(args, budgets: Budgets) -> dict:
    graph = _load_graph(args)
    aut = automorphism_group(graph)
    row = {
        "order": graph.n,
        "edges": graph.num_edges(),
        "connected": graph.is_connected(),
        "regular_degree": graph.regular_degree(),
        "aut_order": aut.order(),
        "graph6": graph6_encode(canonical_graph(graph)),
    }
    notes = []
    degree = graph.regular_degree()
    if graph.is_connected() and degree is not None and degree >= 3:
        profile = s_arc_profile(graph, aut)
        row["s"] = profile.s_max_transitive
        row["arc_regular"] = (profile.s_max_transitive >= 1 and
                              profile.row(1).regular)
        if aut.is_transitive():
            row["local_action"] = local_action(graph, aut, 0).name
    else:
        notes.append("transitivity profile needs a connected graph of"
                     " valency >= 3")
    return {"results": [row], "complete": True, "notes": notes}


def _cmd_census_verify(args, budgets: Budgets) -> dict:
    from .census import REGISTRY, verify_named
    ids = [args.id] if args.id else sorted(REGISTRY)
    rows = []
    ok = True
    for gid in ids:
        report = verify_named(gid)
        ok &= report.passed
        rows.append({"id": gid, "order": REGISTRY[gid].order,
                     "s": report.computed_s,
                     "aut_order": report.computed_aut_order,
                     "pass": report.passed})
    return {"results": rows, "complete": ok}


def _cmd_classify(args, budgets: Budgets) -> dict:
    cfg = ClassifyConfig(k=args.k, p=args.p, budgets=budgets)
    report = classify_order(cfg)
    rows = [{"k": args.k, "p": args.p, "graph6": row.graph6,
             "order": row.order, "s": row.s, "aut_order": row.aut_order}
            for row in report.covers]
    return {"results": rows, "complete": report.complete,
            "notes": list(report.notes),
            "feasible": report.feasible}


_COMMANDS = {
    "feasibility": _cmd_feasibility,
    "enumerate-base": _cmd_enumerate_base,
    "covers": _cmd_covers,
    "analyze": _cmd_analyze,
    "census-verify": _cmd_census_verify,
    "classify": _cmd_classify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    budgets = Budgets(max_cosets=args.max_cosets, max_nodes=args.max_nodes,
                      element_cap=args.element_cap)
    params = {key: val for key, val in vars(args).items()
              if key not in ("command", "format") and val is not None}
    try:
        body = _COMMANDS[args.command](args, budgets)
    except BudgetExceededError as exc:
        _emit({"command": args.command, "params": params, "results": [],
               "complete": False, "notes": ["budget exceeded: %s" % exc]},
              args.format)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    doc = {"command": args.command, "params": params,
           "results": body.get("results", []),
           "complete": body.get("complete", True),
           "notes": body.get("notes", [])}
    for key, val in body.items():
        if key not in doc:
            doc[key] = val
    _emit(doc, args.format)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
