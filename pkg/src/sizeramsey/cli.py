"""Command-line entry point.

Exit codes: 0 when the verdict holds, 1 when it fails (a witness is
reported), 2 on bad input, exhausted budgets or generator failures.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from itertools import combinations

from . import io
from .arrowing import Colouring, arrows
from .embedder import EmbeddingFailed, embed_A_graph
from .errors import SizeRamseyError, TraceError, TreeOrderError
from .expander import (equipartition, has_cross_edge_property, is_bipartite_eps_expander,
                       is_eps_expander, is_expanding, random_expander)
from .hypercore.graph import Graph
from .hypercore.hypertrees import random_hypergraph_tree, tree_parents
from .hypercore.operators import (complete_bipartite, complete_graph, cycle_graph, path_graph,
                                  tight_path, tight_path_power)
from .hypercore.traces import random_A_graph, verify_trace
from .reduction import reduce_pipeline
from .skeleton import initial_skeleton, iterate
from .trimming import is_proper_edge_colouring, vizing_colouring

OK, FAIL, ERROR = 0, 1, 2


def _budget(text: str) -> int:
    value = float(text)
    if value < 0 or value != int(value):
        raise argparse.ArgumentTypeError(f"bad budget {text!r}")
    return int(value)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number {text!r}") from exc


def _report(args, operation, inputs, verdict, witness=None, detail=None, started=None):
    timings = None
    if args.timings and started is not None:
        timings = {"seconds": round(time.perf_counter() - started, 6)}
    doc = io.report_doc(operation, inputs, verdict, witness, detail, timings)
    return doc, OK if verdict else FAIL


# gen --------------------------------------------------------------------------


def cmd_gen(args):
    kind = args.kind
    if kind == "tight-path":
        return io.hypergraph_doc(tight_path(args.n, args.r)), OK
    if kind == "tight-path-power":
        return io.hypergraph_doc(tight_path_power(args.n, args.r, args.t)), OK
    if kind == "path":
        return io.graph_doc(path_graph(args.n)), OK
    if kind == "cycle":
        return io.graph_doc(cycle_graph(args.n)), OK
    if kind == "complete":
        return io.graph_doc(complete_graph(args.n)), OK
    if kind == "complete-bipartite":
        return io.graph_doc(complete_bipartite(args.n, args.m or args.n)), OK
    if kind == "star":
        return io.graph_doc(Graph.from_edges(args.n + 1, [(0, i) for i in range(1, args.n + 1)])), OK
    if kind == "expander":
        g, cert = random_expander(args.n, args.eps, args.seed)
        if not cert.verdict:
            raise SizeRamseyError("no certified expander found within the retries")
        return io.graph_doc(g), OK
    if kind == "a-graph":
        _, trace = random_A_graph(args.n, args.d, args.l, args.seed)
        return io.trace_doc(trace), OK
    if kind == "hypertree":
        tree = random_hypergraph_tree(args.n, args.r, args.d, args.seed)
        return io.hypertree_doc(tree.hypergraph.n, tree.hypergraph.r, tree.order), OK
    raise SizeRamseyError(f"unknown generator {kind}")


# check ------------------------------------------------------------------------


def cmd_check(args):
    started = time.perf_counter()
    what = args.what
    if what == "expansion":
        g = io.load_graph(io.read(args.graph))
        if args.type == "eps":
            cert = is_eps_expander(g, args.eps, cap=args.budget or 18)
        elif args.type == "bip-eps":
            cert = is_bipartite_eps_expander(g, equipartition(g.n), args.eps, cap=args.budget or 18)
        elif args.type == "cross":
            cert = has_cross_edge_property(g, equipartition(g.n), args.m)
        else:
            cert = is_expanding(g, args.m, args.d, cap=args.budget or 2_000_000)
        witness = [list(w) for w in cert.witness] if cert.witness else None
        return _report(args, f"check-expansion-{args.type}", io.graph_doc(g), cert.verdict,
                       witness, {"params": cert.params, "certified": cert.certified}, started)
    if what == "trace":
        doc = io.read(args.trace)
        try:
            trace = io.load_trace(doc)
            verify_trace(trace)
        except TraceError as exc:
            return _report(args, "check-trace", doc, False, str(exc), None, started)
        return _report(args, "check-trace", doc, True, None, {"n": trace.n}, started)
    if what == "tree-order":
        doc = io.read(args.tree)
        n, r, order = io.load_hypertree(doc)
        try:
            parents = tree_parents(order, r)
        except TreeOrderError as exc:
            return _report(args, "check-tree-order", doc, False, str(exc), None, started)
        return _report(args, "check-tree-order", doc, True, parents, None, started)
    raise SizeRamseyError(f"unknown check {what}")


# module commands ----------------------------------------------------------------


def cmd_embed(args):
    started = time.perf_counter()
    host = io.load_graph(io.read(args.host))
    tdoc = io.read(args.trace)
    trace = io.load_trace(tdoc)
    inputs = [io.graph_doc(host), tdoc, args.m, args.d, args.good_m, args.start]
    try:
        e = embed_A_graph(host, trace, args.m, args.d, good_m=args.good_m, start=args.start)
    except EmbeddingFailed as exc:
        return _report(args, "embed", inputs, False, None,
                       {"failed_step": exc.step, "reason": str(exc)}, started)
    return _report(args, "embed", inputs, True, list(e.phi), {"good_m": e.m}, started)


def cmd_trim(args):
    started = time.perf_counter()
    g = io.load_graph(io.read(args.graph))
    col = vizing_colouring(g)
    edges = g.sorted_edges()
    c = Colouring(tuple(edges), tuple(col[e] for e in edges))
    used = len(set(c.colours))
    ok = is_proper_edge_colouring(g, col) and used <= g.max_degree + 1
    return _report(args, "trim-edge-colouring", io.graph_doc(g), ok, io.colouring_doc(c),
                   {"colours": used, "max_degree": g.max_degree}, started)


def _random_colouring(n: int, r: int, colours: int, seed: int, cap: int = 200_000) -> dict:
    rng = random.Random(seed)
    out = {}
    for e in combinations(range(n), r):
        out[e] = rng.randrange(colours)
        if len(out) > cap:
            raise SizeRamseyError("too many r-sets for a random colouring")
    return out


def cmd_skeleton(args):
    started = time.perf_counter()
    g = io.load_graph(io.read(args.graph))
    if args.colouring:
        colouring = io.load_colouring(io.read(args.colouring)).as_dict()
    else:
        colouring = _random_colouring(g.n, args.r, args.colours, args.seed)
    sk = initial_skeleton(g, args.k)
    final, reports = iterate(sk, colouring, args.path_len, args.t, args.r, args.arities,
                             max_steps=args.max_steps)
    steps = [{"level": rep.level, "case": rep.case} for rep in reports]
    found = any(rep.case == "monochromatic-path" for rep in reports)
    witness = None
    if found:
        lift = reports[-1].detail
        witness = {"colour": repr(lift.colour), "image": list(lift.image.image)}
    inputs = [io.graph_doc(g), sorted([list(e), c] for e, c in colouring.items()), args.k,
              args.t, args.r, args.arities, args.path_len]
    return _report(args, "skeleton", inputs, found, witness,
                   {"steps": steps, "level": final.j, "roots": len(final.trees)}, started)


def cmd_reduce(args):
    started = time.perf_counter()
    tdoc = io.read(args.trace)
    trace = io.load_trace(tdoc)
    H = verify_trace(trace)
    res = reduce_pipeline(H, trace, args.d, args.t, args.l)
    p = res.params
    params = {"s": p.s, "ells": list(p.ells), "ds": [str(x) for x in p.ds],
              "bs": [str(x) for x in p.bs], "D": str(p.D), "L": str(p.L), "T": str(p.T)}
    witness = {"F": io.graph_doc(res.F), "F_minus": io.graph_doc(res.F_minus),
               "rho": list(res.rho.image), "T_actual": res.T_actual,
               "embedding": list(res.embedding)}
    inputs = [tdoc, args.d, args.t, args.l]
    if args.emit_witness:
        io.write(io.report_doc("reduce-witness", inputs, True, witness), args.emit_witness)
    return _report(args, "reduce", inputs, True, witness if not args.emit_witness else None,
                   {"params": params, "T_actual": res.T_actual}, started)


def cmd_arrow(args):
    started = time.perf_counter()
    host = io.load_hypergraph(io.read(args.host))
    targets = [io.load_hypergraph(io.read(t)) for t in args.targets]
    if args.colours and len(targets) == 1:
        targets = targets * args.colours
    verdict = arrows(host, targets, budget=args.budget)
    inputs = [io.hypergraph_doc(host)] + [io.hypergraph_doc(t) for t in targets]
    witness = io.colouring_doc(verdict.witness) if verdict.witness else None
    return _report(args, "arrow", inputs, verdict.verdict, witness, {"nodes": verdict.nodes}, started)


def cmd_report(args):
    docs = [io.read(p) for p in args.inputs]
    for d in docs:
        io.check_schema(d, "report")
    rows = [{"operation": d["operation"], "verdict": d["verdict"],
             "inputs_digest": d["inputs_digest"]} for d in docs]
    verdict = all(d["verdict"] for d in docs)
    return _report(args, "summary", rows, verdict, None, {"reports": rows})


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_budget, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--timings", action="store_true",
                        help="add wall-clock timings to reports (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="sizeramsey", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a graph, hypergraph or trace")
    gen.add_argument("kind", choices=["tight-path", "tight-path-power", "path", "cycle", "complete",
                                      "complete-bipartite", "star", "expander", "a-graph",
                                      "hypertree"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--r", type=int, default=2)
    gen.add_argument("--t", type=int, default=1)
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--l", type=int, default=1)
    gen.add_argument("--eps", type=_frac, default=Fraction(1, 2))
    gen.set_defaults(func=cmd_gen)

    check = sub.add_parser("check", parents=[common], help="check a property")
    check.add_argument("what", choices=["expansion", "trace", "tree-order"])
    check.add_argument("--kind", dest="type", choices=["eps", "bip-eps", "md", "cross"], default="md")
    check.add_argument("--graph")
    check.add_argument("--trace")
    check.add_argument("--tree")
    check.add_argument("--eps", type=_frac, default=Fraction(1, 2))
    check.add_argument("--m", type=int, default=1)
    check.add_argument("--d", type=_frac, default=Fraction(1))
    check.set_defaults(func=cmd_check)

    embed = sub.add_parser("embed", parents=[common], help="embed a traced graph into a host")
    embed.add_argument("--host", required=True)
    embed.add_argument("--trace", required=True)
    embed.add_argument("--m", type=int, required=True)
    embed.add_argument("--d", type=int, required=True)
    embed.add_argument("--good-m", type=int, default=None)
    embed.add_argument("--start", type=int, default=0)
    embed.set_defaults(func=cmd_embed)

    trim = sub.add_parser("trim", parents=[common], help="proper edge colouring with at most max degree + 1 colours")
    trim.add_argument("--graph", required=True)
    trim.set_defaults(func=cmd_trim)

    sk = sub.add_parser("skeleton", parents=[common], help="run the tree-skeleton iteration")
    sk.add_argument("--graph", required=True)
    sk.add_argument("--colouring", default=None)
    sk.add_argument("--colours", type=int, default=2, help="random colouring when no file is given")
    sk.add_argument("--k", type=int, nargs="+", required=True)
    sk.add_argument("--t", type=int, default=1)
    sk.add_argument("--r", type=int, default=2)
    sk.add_argument("--arities", type=int, nargs="+", default=[2])
    sk.add_argument("--path-len", type=int, default=2)
    sk.add_argument("--max-steps", type=int, default=3)
    sk.set_defaults(func=cmd_skeleton)

    red = sub.add_parser("reduce", parents=[common], help="place a power of a traced graph in a blowup")
    red.add_argument("--trace", required=True)
    red.add_argument("--d", type=int, required=True)
    red.add_argument("--t", type=int, required=True)
    red.add_argument("--l", type=int, required=True)
    red.add_argument("--emit-witness", default=None)
    red.set_defaults(func=cmd_reduce)

    arrow = sub.add_parser("arrow", parents=[common], help="decide arrowing by exhaustive search")
    arrow.add_argument("--host", required=True)
    arrow.add_argument("--targets", nargs="+", required=True)
    arrow.add_argument("--colours", type=int, default=None,
                       help="with a single target, the number of colours")
    arrow.set_defaults(func=cmd_arrow)

    rep = sub.add_parser("report", parents=[common], help="combine report files")
    rep.add_argument("inputs", nargs="+")
    rep.set_defaults(func=cmd_report)
    return parser


def _normalise_argv(argv: list[str]) -> list[str]:
    # "check-expansion" is accepted as "check expansion"
    if argv and argv[0].startswith("check-"):
        return ["check", argv[0][len("check-"):]] + argv[1:]
    return argv


def main(argv: list[str] | None = None) -> int:
    argv = _normalise_argv(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        doc, code = args.func(args)
    except (SizeRamseyError, ValueError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    text = io.write(doc, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
