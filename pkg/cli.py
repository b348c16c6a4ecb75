"""
Command line entry point.

    python cli.py color graph.col [--algorithm auto|a|b|greedy] [--json] [--trace]
    python cli.py verify graph.col coloring.txt
    python cli.py gen --kind regular --n 64 --d 3 --seed 7
    python cli.py chromatic graph.col
    python cli.py bench --sizes 64,256,1024 --delta 3 --repeats 3
    python cli.py trace --case pair-removal

Exit codes: 0 success, 1 verification failure, 2 input error,
3 algorithm failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import statistics
import sys
import time

import config
from brooks_dfs import color_regular_dfs
from brooks_repair import color_regular_repair
from coloring_core import ColoringError, Ok, Uncolored, colors_used, parse_coloring, \
    validate_coloring
from dispatcher import AlgoChoice, AlgorithmFailure, ColorOptions, IllegalAlgorithm, color_graph
from graph_core import GraphError, read_graph, write_dimacs, write_edgelist
from instrumentation import InternalAssertion, Trace
from testkit import CASE_BRANCHES, BudgetExceeded, GenRetryExhausted, GenSpec, SearchExhausted, \
    UnknownName, case_instance, chromatic_number, generate, random_regular_graph, stream

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_FAILURE = 3

BENCH_HEADER = ['n', 'm', 'delta', 'algorithm', 'wall_time_ns', 'edges_examined',
                'path_edge_examinations', 'valid']


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _load(args):
    return read_graph(args.graph, fmt=args.format, dedupe=args.dedupe)


def cmd_color(args) -> int:
    g = _load(args)
    options = ColorOptions(trace=args.trace, debug=True if args.debug else None)
    if args.seed is not None:
        logger.debug("Seed %d accepted; the coloring algorithms are deterministic", args.seed)
    result = color_graph(g, AlgoChoice(args.algorithm), options)
    if args.json:
        print(result.to_json())
        return EXIT_OK
    print(f"c palette {result.palette}")
    for i, report in enumerate(result.components):
        print(f"c component {i} class={report.graph_class.value} "
              f"colors_used={report.colors_used} algorithm={report.algorithm}")
    if result.fallbacks:
        print(f"c fallbacks {result.fallbacks}")
    sys.stdout.write(result.coloring.to_lines())
    if args.trace:
        for line in result.trace_lines():
            print(line, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args)
    with open(args.coloring, 'rb') as handle:
        coloring = parse_coloring(handle.read(), n=g.n)
    verdict = validate_coloring(g, coloring, require_total=True)
    if isinstance(verdict, Ok):
        print(f"ok colors_used={colors_used(coloring)} max_degree={g.max_degree}")
        return EXIT_OK
    if isinstance(verdict, Uncolored):
        print(f"uncolored {verdict.vertex}")
    else:
        print(f"violation {verdict.edge[0]} {verdict.edge[1]}")
    return EXIT_INVALID


def cmd_gen(args) -> int:
    seed = config.DEFAULT_SEED if args.seed is None else args.seed
    spec = GenSpec(kind=args.kind, n=args.n, p=args.p, d=args.d, name=args.name, seed=seed)
    if spec.kind == 'exhaustive':
        print(sum(1 for _ in stream(spec)))
        return EXIT_OK
    g = generate(spec)
    writer = write_dimacs if args.out_format == 'dimacs' else write_edgelist
    sys.stdout.write(writer(g).decode('utf-8'))
    return EXIT_OK


def cmd_chromatic(args) -> int:
    g = _load(args)
    budget = args.budget if args.budget is not None else config.ORACLE_BUDGET
    chi, witness = chromatic_number(g, budget)
    print(f"chromatic {chi}")
    if args.witness:
        sys.stdout.write(witness.to_lines())
    return EXIT_OK


def cmd_bench(args) -> int:
    seed = config.DEFAULT_SEED if args.seed is None else args.seed
    sizes = [int(tok) for tok in args.sizes.split(',') if tok.strip()]
    algo = AlgoChoice(args.algorithm)
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(BENCH_HEADER)
    for n in sizes:
        runs = []
        for r in range(args.repeats):
            try:
                g = random_regular_graph(n, args.delta, seed + r)
            except (GenRetryExhausted, ValueError) as e:
                logger.warning("Skipping n=%d repeat %d: %s", n, r, e)
                print(f"# gen-failed n={n} repeat={r}: {e}", file=sys.stderr)
                continue
            start = time.perf_counter_ns()
            result = color_graph(g, algo)
            elapsed = time.perf_counter_ns() - start
            verdict = validate_coloring(g, result.coloring, require_total=True)
            if not verdict:
                _err(f"invalid coloring at n={n} repeat={r}: {verdict}; bench aborted")
                return EXIT_INVALID
            counters = result.instrumentation
            row = [g.n, g.m, g.max_degree, algo.value, elapsed, counters.edges_examined,
                   counters.path_edge_examinations, True]
            writer.writerow(row)
            runs.append(row)
        if runs:
            writer.writerow([
                runs[0][0], runs[0][1], runs[0][2], f"{algo.value}:median",
                int(statistics.median(row[4] for row in runs)),
                int(statistics.median(row[5] for row in runs)),
                int(statistics.median(row[6] for row in runs)),
                all(row[7] for row in runs),
            ])
    return EXIT_OK


def cmd_trace(args) -> int:
    seed = config.DEFAULT_SEED if args.seed is None else args.seed
    inst = case_instance(args.case, seed=seed, budget=args.budget)
    g, start = inst.graph, inst.start
    trace = Trace(enabled=True)
    status = EXIT_OK
    try:
        if CASE_BRANCHES[args.case] == 'A':
            result = color_regular_repair(g, range(g.n), trace=trace, debug=True, start=start)
        else:
            result = color_regular_dfs(g, range(g.n), trace=trace, debug=True)
    except InternalAssertion as e:
        logger.warning("Traced run failed: %s", e)
        result = None
        status = EXIT_FAILURE
    if args.json:
        print(json.dumps({
            'case': args.case,
            'n': g.n,
            'edges': [list(edge) for edge in g.edges()],
            'start': start.colors if start is not None else None,
            'branches': sorted(trace.counters.branches),
            'colors': result.coloring.colors if result else None,
            'trace': [event.as_dict() for event in trace.events],
        }))
        return status
    comments = [f"case {args.case}"]
    if start is not None:
        comments.append("start " + " ".join(map(str, start.colors)))
    sys.stdout.write(write_dimacs(g, comments=comments).decode('utf-8'))
    for line in trace.lines():
        print(f"c trace {line}")
    if result is not None:
        print(f"c palette {result.palette}")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='brooks',
        description="Color graphs with at most max-degree colors",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def graph_input(p):
        p.add_argument('graph', help="graph file, or '-' for stdin")
        p.add_argument('--format', choices=['dimacs', 'edgelist'], default=None,
                       help="input format (default: from extension)")
        p.add_argument('--dedupe', action='store_true', help="coalesce duplicate edges")

    p = sub.add_parser('color', help="color a graph")
    graph_input(p)
    p.add_argument('--algorithm', '--algo', dest='algorithm',
                   choices=[a.value for a in AlgoChoice], default='auto')
    p.add_argument('--json', action='store_true', help="print the full result as JSON")
    p.add_argument('--trace', action='store_true', help="record proof-step events")
    p.add_argument('--debug', action='store_true', help="validate after every step")
    p.add_argument('--seed', type=int, default=None,
                   help="accepted for scripting; coloring does not depend on it")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser('verify', help="check a coloring against a graph")
    graph_input(p)
    p.add_argument('coloring', help="coloring file: JSON or 's v c' lines")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('gen', help="generate a graph")
    p.add_argument('--kind', choices=['gnp', 'regular', 'named', 'exhaustive'], required=True)
    p.add_argument('--n', type=int, default=0)
    p.add_argument('--p', type=float, default=0.0)
    p.add_argument('--d', type=int, default=0)
    p.add_argument('--name', default='')
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--out-format', choices=['dimacs', 'edgelist'], default='dimacs')
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('chromatic', help="exact chromatic number (small graphs)")
    graph_input(p)
    p.add_argument('--budget', type=int, default=None, help="search node budget")
    p.add_argument('--witness', action='store_true', help="print an optimal coloring")
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser('bench', help="time colorings of random regular graphs (CSV)")
    p.add_argument('--sizes', default='64,256,1024')
    p.add_argument('--delta', '--degree', dest='delta', type=int, default=3)
    p.add_argument('--repeats', type=int, default=3)
    p.add_argument('--algorithm', '--algo', dest='algorithm',
                   choices=[a.value for a in AlgoChoice], default='auto')
    p.add_argument('--seed', type=int, default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser('trace', help="find an instance for a proof branch and trace it")
    p.add_argument('--case', choices=sorted(CASE_BRANCHES), required=True)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--budget', type=int, default=None)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        format='%(asctime)s %(name)s %(levelname)s %(message)s',
        stream=sys.stderr,
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (GraphError, ColoringError, UnknownName, IllegalAlgorithm) as e:
        _err(str(e))
        return EXIT_INPUT
    except OSError as e:
        _err(f"cannot read input: {e}")
        return EXIT_INPUT
    except (AlgorithmFailure, SearchExhausted, BudgetExceeded, GenRetryExhausted) as e:
        _err(str(e))
        return EXIT_FAILURE
    except ValueError as e:
        _err(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
