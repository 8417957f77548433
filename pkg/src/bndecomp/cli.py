"""Command-line interface.

Exit codes: 0 success, 1 unreadable or invalid input, 2 method infeasible,
3 checked property does not hold, 4 tau does not realise d, 5 a reduction
claim failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import heur
from .elim import is_chordal
from .errors import DecompError, InfeasibleError
from .hardness import EdsMismatch, verify_reduction
from .hyper import graham_acyclic, parse_hypergraph, reduce, running_intersection_ordering
from .model import Ordering, UndirectedGraph, format_graph, moral_graph, parse_graph, \
    parse_network, random_graph
from .optimize import (AnnealConfig, Decomposition, anneal, compare_report,
                       criterion_scores, exact_optimal)

METHODS = ("min-degree", "min-deficiency", "lex", "mcs", "anneal", "exact")
CRITERIA = ("mtns", "max-clique", "fill-in")

EXIT_INPUT, EXIT_INFEASIBLE, EXIT_FALSE, EXIT_EDS, EXIT_CLAIM = 1, 2, 3, 4, 5


@dataclass
class Report:
    input: str
    method: str
    ordering: list[str]
    fill_edges: list[list[str]]
    cliques: list[list[str]]
    metrics: dict
    seed: int | None = None
    config: dict = field(default_factory=dict)

    @classmethod
    def from_decomposition(cls, g: UndirectedGraph, dec: Decomposition,
                           seed: int | None = None, config: dict | None = None) -> Report:
        idx = g.index
        return cls(
            input=dec.source,
            method=dec.method,
            ordering=list(dec.ordering.nodes),
            fill_edges=[list(e) for e in sorted(dec.fill_edges,
                                                key=lambda e: (idx[e[0]], idx[e[1]]))],
            cliques=[sorted(c, key=idx.__getitem__) for c in dec.cliques],
            metrics={
                "mtns": dec.mtns,
                "max_clique_states": dec.max_clique_states,
                "max_clique_size": dec.max_clique_size,
                "fillin_count": dec.fillin_count,
                "delay_levels": dec.delay_levels,
                "clique_sizes": dec.clique_sizes,
            },
            seed=seed,
            config=config or {},
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def verify(self, g: UndirectedGraph, arities=None) -> bool:
        """Recompute every metric from (input graph, ordering) alone."""
        dec = criterion_scores(g, Ordering(tuple(self.ordering)), arities,
                               method=self.method, source=self.input)
        again = Report.from_decomposition(g, dec, self.seed, self.config)
        return again == self


def load_input(path: str):
    """``(graph, arities)`` from a ``.bn`` network (moralised) or ``.ug`` graph."""
    text = Path(path).read_text(encoding="utf-8")
    kind = Path(path).suffix.lower()
    if kind not in (".bn", ".ug"):
        first = next((ln.split()[0] for ln in text.splitlines()
                      if ln.split() and not ln.lstrip().startswith("#")), "")
        kind = ".bn" if first in ("var", "cpt", "marg") else ".ug"
    if kind == ".bn":
        net = parse_network(text)
        return moral_graph(net), net.arities
    g = parse_graph(text)
    return g, {v: 2 for v in g.nodes}


def run_method(g, arities, method, criterion, seed, source) -> tuple[Decomposition, dict]:
    if method in heur.HEURISTICS:
        return criterion_scores(g, heur.HEURISTICS[method](g), arities,
                                method=method, source=source), {"criterion": criterion}
    if method == "exact":
        dec = exact_optimal(g, arities, criterion, source=source)
        return dec, dict(dec.info)
    dec = anneal(g, arities, criterion, AnnealConfig(seed=seed), source=source)
    cfg = dict(dec.info["config"])
    return dec, {"criterion": criterion, "start": dec.info["start"], **cfg}


def _print_report(rep: Report, out) -> None:
    mt = rep.metrics
    print(f"input      {rep.input}", file=out)
    print(f"method     {rep.method}" + (f" (seed {rep.seed})" if rep.seed is not None else ""),
          file=out)
    print(f"ordering   {' '.join(rep.ordering)}", file=out)
    print(f"fill-in    {mt['fillin_count']}: "
          + (", ".join(f"{u}-{v}" for u, v in rep.fill_edges) or "none"), file=out)
    print(f"cliques    {len(rep.cliques)}", file=out)
    for c in rep.cliques:
        print(f"  {{{', '.join(c)}}}", file=out)
    print(f"mtns       {mt['mtns']}", file=out)
    print(f"max clique {mt['max_clique_size']} nodes, {mt['max_clique_states']} states",
          file=out)
    print(f"delay      {mt['delay_levels']}", file=out)


def cmd_decompose(args, out) -> int:
    g, ar = load_input(args.file)
    dec, config = run_method(g, ar, args.method, args.criterion, args.seed, args.file)
    seed = args.seed if args.method == "anneal" else None
    rep = Report.from_decomposition(g, dec, seed, config)
    if args.format == "json":
        print(rep.to_json(), file=out)
    else:
        _print_report(rep, out)
    return 0


def cmd_compare(args, out) -> int:
    g, ar = load_input(args.file)
    rows = compare_report(g, ar, seed=args.seed, criterion=args.criterion, source=args.file)
    reps = []
    for dec in rows:
        seed = args.seed if dec.method == "anneal" else None
        cfg = dict(dec.info.get("config", {})) if dec.method == "anneal" else {}
        reps.append(Report.from_decomposition(g, dec, seed, cfg))
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reps], indent=2), file=out)
        return 0
    head = ("method", "fill-in", "max clique", "max states", "mtns", "delay")
    table = [head] + [
        (r.method, str(r.metrics["fillin_count"]), str(r.metrics["max_clique_size"]),
         str(r.metrics["max_clique_states"]), str(r.metrics["mtns"]),
         str(r.metrics["delay_levels"])) for r in reps]
    widths = [max(len(row[k]) for row in table) for k in range(len(head))]
    for row in table:
        print("  ".join(cell.ljust(w) if k == 0 else cell.rjust(w)
                        for k, (cell, w) in enumerate(zip(row, widths))), file=out)
    return 0


def cmd_check(args, out) -> int:
    if args.chordal:
        g, _ = load_input(args.file)
        peo = is_chordal(g)
        if peo is None:
            print("no", file=out)
            return EXIT_FALSE
        print("yes", file=out)
        print("peo " + " ".join(peo.nodes), file=out)
        return 0
    h = reduce(parse_hypergraph(Path(args.file).read_text(encoding="utf-8")))
    if args.acyclic_hypergraph:
        ok, trace = graham_acyclic(h)
        print("yes" if ok else "no", file=out)
        for step in trace:
            if step[0] == "node":
                print(f"  drop node {step[1]} from edge {step[2]}", file=out)
            elif step[2] is None:
                print(f"  drop empty edge {step[1]}", file=out)
            else:
                print(f"  drop edge {step[1]} (inside edge {step[2]})", file=out)
        return 0 if ok else EXIT_FALSE
    seq = running_intersection_ordering(h)
    if seq is None:
        print("none", file=out)
        return EXIT_FALSE
    print("yes", file=out)
    for i in seq:
        print("  " + " ".join(sorted(h.hyperedges[i], key=h.nodes.index)), file=out)
    return 0


def cmd_reduce_eds(args, out) -> int:
    g, _ = load_input(args.file)
    tau = Ordering(tuple(args.tau.split(",")))
    d = [int(x) for x in args.d.split(",")]
    tau.check(g)
    try:
        rep = verify_reduction(g, tau, d)
    except EdsMismatch as exc:
        print(f"eds check failed: {exc}", file=sys.stderr)
        return EXIT_EDS
    if args.format == "json":
        print(json.dumps({
            "input": args.file,
            "tau": list(tau.nodes),
            "d": list(rep.degrees),
            "fillin_count": len(rep.fill),
            "clique_sizes": rep.clique_sizes,
            "mtns": rep.mtns,
            "bound": rep.bound,
            "delay_levels": rep.delay,
            "checks": [{"name": n, "passed": ok, "detail": det} for n, ok, det in rep.checks],
            "passed": rep.passed,
        }, indent=2), file=out)
    else:
        for name, ok, detail in rep.checks:
            print(f"{'pass' if ok else 'FAIL'}  {name:<14} {detail}", file=out)
        print(f"fill-in {len(rep.fill)}  cliques {rep.clique_sizes}  mtns {rep.mtns}  "
              f"delay {rep.delay}", file=out)
    return 0 if rep.passed else EXIT_CLAIM


def cmd_random(args, out) -> int:
    text = format_graph(random_graph(args.nodes, args.edge_prob, args.seed))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bndecomp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose one network or graph")
    d.add_argument("file")
    d.add_argument("--method", choices=METHODS, default="min-degree")
    d.add_argument("--criterion", choices=CRITERIA, default="mtns")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.set_defaults(func=cmd_decompose)

    c = sub.add_parser("check", help="test chordality or hypergraph acyclicity")
    c.add_argument("file")
    what = c.add_mutually_exclusive_group(required=True)
    what.add_argument("--chordal", action="store_true")
    what.add_argument("--acyclic-hypergraph", action="store_true")
    what.add_argument("--running-intersection", action="store_true")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("compare", help="all methods side by side")
    m.add_argument("file")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--criterion", choices=CRITERIA, default="mtns")
    m.add_argument("--format", choices=("text", "json"), default="text")
    m.set_defaults(func=cmd_compare)

    r = sub.add_parser("reduce-eds", help="verify the EDS reduction on one instance")
    r.add_argument("file")
    r.add_argument("--tau", required=True)
    r.add_argument("--d", required=True)
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.set_defaults(func=cmd_reduce_eds)

    g = sub.add_parser("random", help="write a seeded G(n, p) graph")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--edge-prob", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_random)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DecompError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
