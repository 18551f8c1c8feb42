"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 input error, 4 capacity cap.
Commands needing a connected graph work on the largest component.
"""

import argparse
import sys
import time

import numpy as np

from . import exact, graph, hyperbolicity, ranges, trees
from .evaluate import emit_profile_csv, evaluate

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4


def _load_graph(path):
    if path == "-":
        g, _ = graph.load_edge_list(sys.stdin.buffer)
        return g
    if path.endswith(".hogr"):
        return graph.load_graph(path)
    g, _ = graph.load_edge_list(path)
    return g


def _load_connected(path):
    g, _ = graph.largest_component(_load_graph(path))
    return g


def _write_graph(g, out):
    if out is None or out == "-":
        graph.write_edge_list(g, sys.stdout)
    elif out.endswith(".hogr"):
        graph.save_graph(g, out)
    else:
        with open(out, "w") as f:
            graph.write_edge_list(g, f)


def _open_out(out):
    return sys.stdout if out is None or out == "-" else open(out, "w")


def cmd_load_stats(args):
    s = graph.graph_stats(_load_graph(args.graph))
    print(f"n={s.n} m={s.m} avg_deg={s.avg_degree:.2f} "
          f"max_deg={s.max_degree} max_deg_node={s.max_degree_node}")


def cmd_gen(args):
    if args.family == "flatgrid":
        g = graph.gen_flat_grid(args.k)
    else:
        g = graph.gen_hyper_grid(args.rings)
    _write_graph(g, args.out)


def cmd_delta(args):
    g = _load_connected(args.graph)
    est = hyperbolicity.estimate_delta(g, args.nodes, args.quadruples, args.seed)
    print(est.csv_row())


def cmd_build(args):
    g = _load_connected(args.graph)
    oracle = trees.build_oracle(g, args.kind, k=args.k, strategy=args.strategy,
                                seed=args.seed, increasing_degree=args.increasing)
    trees.save_oracle(oracle, args.out)
    print(f"built {oracle.k} {oracle.kind} trees over n={oracle.n} "
          f"in {oracle.meta['build_time']:.2f}s -> {args.out}", file=sys.stderr)


def cmd_query(args):
    oracle = trees.load_oracle(args.oracle)
    print(oracle.query(args.x, args.y))


def cmd_query_batch(args):
    oracle = trees.load_oracle(args.oracle)
    xs, ys = [], []
    with open(args.pairs) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("x"):
                continue
            parts = line.replace(",", " ").split()
            xs.append(int(parts[0]))
            ys.append(int(parts[1]))
    out = oracle.query_many(np.array(xs, np.int32), np.array(ys, np.int32))
    for x, y, d in zip(xs, ys, out):
        print(f"{x},{y},{d}")


def cmd_eval(args):
    g = _load_connected(args.graph)
    oracle = trees.load_oracle(args.oracle)
    pairs = exact.sample_pairs(g, args.pairs, args.seed)
    profile = evaluate(g, oracle, pairs)
    sink = _open_out(args.out)
    try:
        emit_profile_csv(profile, sink)
    finally:
        if sink is not sys.stdout:
            sink.close()


def cmd_range(args):
    g = _load_connected(args.graph)
    hyper = trees.build_oracle(g, trees.KIND_HYPERBFS, k=args.kh,
                               strategy=args.strategy, seed=args.seed)
    gromov = trees.build_oracle(g, trees.KIND_GROMOV, k=args.kg,
                                strategy=args.strategy, seed=args.seed)
    if args.delta is not None:
        delta = args.delta
    else:
        est = hyperbolicity.estimate_delta(g, args.delta_nodes,
                                           args.delta_quadruples, args.seed)
        delta = est.max_delta
        print(f"# sampled delta={delta}; containment is statistical only",
              file=sys.stderr)
    oracle = ranges.RangeOracle(hyper=hyper, gromov=gromov, delta=delta, n=g.n)
    pairs = exact.sample_pairs(g, args.pairs, args.seed)
    report = ranges.range_width_report(oracle, pairs)
    sink = _open_out(args.out)
    try:
        report.to_csv(sink)
    finally:
        if sink is not sys.stdout:
            sink.close()


def _median_of_three(fn):
    fn()  # warm-up excluded
    samples = []
    for _ in range(3):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return sorted(samples)[1]


def cmd_bench(args):
    t0 = time.perf_counter()
    g = _load_connected(args.graph)
    load_sec = time.perf_counter() - t0

    pi = trees.degree_ordering(g)
    build_sec = _median_of_three(lambda: trees.build_hyper_bfs(g, pi))

    oracle = trees.build_oracle(g, trees.KIND_HYPERBFS, k=args.k, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    xs = rng.integers(0, g.n, size=args.queries).astype(np.int32)
    ys = rng.integers(0, g.n, size=args.queries).astype(np.int32)
    query_sec = _median_of_three(lambda: oracle.query_many(xs, ys))

    print("load_graph_sec,build_tree_sec,query_batch_sec,queries")
    print(f"{load_sec:.3f},{build_sec:.3f},{query_sec:.3f},{args.queries}")


def build_parser():
    p = argparse.ArgumentParser(prog="hogr",
                                description="Tree-based graph distance oracles")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("load-stats", help="print graph size statistics")
    s.add_argument("graph", help="edge list path, .hogr binary, or - for stdin")
    s.set_defaults(fn=cmd_load_stats)

    s = sub.add_parser("gen", help="generate a synthetic graph")
    fam = s.add_subparsers(dest="family", required=True)
    f = fam.add_parser("flatgrid")
    f.add_argument("--k", type=int, required=True, help="side length")
    f.add_argument("--out", help="output path (default stdout edge list)")
    f.set_defaults(fn=cmd_gen)
    f = fam.add_parser("hypergrid")
    f.add_argument("--rings", type=int, required=True)
    f.add_argument("--out")
    f.set_defaults(fn=cmd_gen)

    s = sub.add_parser("delta", help="sampled 4-point hyperbolicity estimate")
    s.add_argument("graph")
    s.add_argument("--nodes", type=int, default=64)
    s.add_argument("--quadruples", type=int, default=1_000_000)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(fn=cmd_delta)

    s = sub.add_parser("build", help="build a tree oracle")
    s.add_argument("kind", choices=[trees.KIND_HYPERBFS, trees.KIND_GROMOV,
                                    trees.KIND_STEINER])
    s.add_argument("graph")
    s.add_argument("--k", type=int, default=trees.DEFAULT_TREES)
    s.add_argument("--strategy", choices=trees.STRATEGIES, default="degree")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--increasing", action="store_true",
                   help="ascending-degree push order (ablation)")
    s.add_argument("--out", required=True)
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("query", help="one oracle query")
    s.add_argument("oracle")
    s.add_argument("x", type=int)
    s.add_argument("y", type=int)
    s.set_defaults(fn=cmd_query)

    s = sub.add_parser("query-batch", help="query pairs from a file")
    s.add_argument("oracle")
    s.add_argument("pairs", help="file of 'x,y' or 'x y' lines")
    s.set_defaults(fn=cmd_query_batch)

    s = sub.add_parser("eval", help="distortion profile against ground truth")
    s.add_argument("graph")
    s.add_argument("oracle")
    s.add_argument("--pairs", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("range", help="approximation-range report")
    s.add_argument("graph")
    s.add_argument("--kh", type=int, default=10)
    s.add_argument("--kg", type=int, default=20)
    s.add_argument("--delta", type=float,
                   help="hyperbolicity constant; sampled when omitted")
    s.add_argument("--delta-nodes", type=int, default=64)
    s.add_argument("--delta-quadruples", type=int, default=1_000_000)
    s.add_argument("--strategy", choices=trees.STRATEGIES, default="degree")
    s.add_argument("--pairs", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_range)

    s = sub.add_parser("bench", help="load/build/query timings")
    s.add_argument("graph")
    s.add_argument("--k", type=int, default=trees.DEFAULT_TREES)
    s.add_argument("--queries", type=int, default=1_000_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_USAGE
    try:
        args.fn(args)
    except exact.CapExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (graph.GraphError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
