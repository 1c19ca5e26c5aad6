"""Command-line front end.

Subcommands: solve, gen, phase, scaling, export-cnf, export-tsp, oracle.
Exit codes for solve: 0 = cycle found, 1 = no cycle, 2 = budget exceeded;
usage errors exit 64 and instance parse errors exit 65.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import rows_to_csv, run_phase, run_scaling
from .cnf import arc_map_comments, build_dap_cnf, export_dimacs
from .graph import DirectedGraph, GraphParseError, arcs_for_c, gen_random, read_graph, write_graph
from .oracle import brute_force_oracle
from .reduction import to_tsplib, two_point_reduction
from .solver import Verdict, ap_sat_solve, enumerate_all

EXIT_USAGE = 64
EXIT_PARSE = 65

_VERDICT_EXIT = {Verdict.HC_FOUND: 0, Verdict.NO_HC: 1, Verdict.BUDGET_EXCEEDED: 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_graph(path: str) -> DirectedGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return read_graph(fh)
    except GraphParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_r(text: str, n: int) -> int:
    shorthands = {"n": n, "n/2": n // 2, "2n": 2 * n}
    if text in shorthands:
        return shorthands[text]
    try:
        value = int(text)
    except ValueError:
        raise SystemExit(EXIT_USAGE)
    if value < 0:
        raise SystemExit(EXIT_USAGE)
    return value


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_solve(args) -> int:
    g = _load_graph(args.input)
    r = _parse_r(args.r, g.n) if args.r is not None else None
    if args.all:
        hcs, report = enumerate_all(g, r=r, time_limit=args.time_limit)
    else:
        hcs = None
        report = ap_sat_solve(g, r=r, time_limit=args.time_limit)

    if args.json:
        payload = report.to_dict()
        payload["n"] = g.n
        payload["m"] = g.m
        if hcs is not None:
            payload["hamiltonian_cycles"] = [list(h) for h in hcs]
            payload["complete"] = report.verdict is not Verdict.BUDGET_EXCEEDED
        print(json.dumps(payload))
    else:
        print(f"verdict: {report.verdict.value}")
        if report.witness is not None:
            print("cycle: " + " ".join(map(str, report.witness)))
        if hcs is not None:
            print(f"cycles found: {len(hcs)}" + (
                " (incomplete: budget exceeded)" if report.verdict is Verdict.BUDGET_EXCEEDED else ""
            ))
            for h in hcs:
                print("  " + " ".join(map(str, h)))
        print(
            f"calls: ap={report.ap_calls} ksp={report.ksp_calls} sat={report.sat_calls}"
            f"  (r={report.r_used})"
        )
        print(
            f"times: ap={report.ap_time:.3f}s ksp={report.ksp_time:.3f}s"
            f" sat={report.sat_time:.3f}s"
        )
    return _VERDICT_EXIT[report.verdict]


def _cmd_gen(args) -> int:
    if (args.c is None) == (args.m is None):
        print("gen: exactly one of --c / --m is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        m = args.m if args.m is not None else arcs_for_c(args.n, args.c)
        g = gen_random(args.n, m, args.seed)
    except ValueError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    import io

    buf = io.StringIO()
    write_graph(g, buf)
    _write_out(buf.getvalue(), args.out)
    return 0


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _cmd_phase(args) -> int:
    c_list = _parse_float_list(args.c_list)
    if args.n < 3 or args.samples < 1 or any(c <= 0 for c in c_list):
        print("phase: need n >= 3, samples >= 1, every c > 0", file=sys.stderr)
        return EXIT_USAGE
    rows, _ = run_phase(
        args.n, c_list, args.samples, args.seed,
        time_limit=args.time_limit, workers=args.workers,
    )
    _write_out(rows_to_csv(rows), args.out)
    return 0


def _cmd_scaling(args) -> int:
    sizes = _parse_int_list(args.sizes)
    if not sizes or sorted(sizes) != sizes or args.c <= 0 or args.samples < 1:
        print("scaling: sizes must be ascending, c > 0, samples >= 1", file=sys.stderr)
        return EXIT_USAGE
    rows, _ = run_scaling(
        sizes, args.c, args.samples, args.seed,
        time_limit=args.time_limit, workers=args.workers,
    )
    _write_out(rows_to_csv(rows), args.out)
    return 0


def _cmd_export_cnf(args) -> int:
    g = _load_graph(args.input)
    model = build_dap_cnf(g)
    comments = "".join(line + "\n" for line in arc_map_comments(model))
    _write_out(comments + export_dimacs(model), args.out)
    return 0


def _cmd_export_tsp(args) -> int:
    g = _load_graph(args.input)
    if g.n < 2:
        print("export-tsp: instance needs at least two vertices", file=sys.stderr)
        return EXIT_USAGE
    name = Path(args.input).stem
    _write_out(to_tsplib(two_point_reduction(g), name=name), args.out)
    return 0


def _cmd_oracle(args) -> int:
    g = _load_graph(args.input)
    try:
        result = brute_force_oracle(g)
    except ValueError as exc:
        print(f"oracle: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"hamiltonian: {'yes' if result.is_hamiltonian else 'no'}")
    print(f"hamiltonian cycles: {result.hc_count}")
    print(f"cycle covers: {result.cover_count}")
    return 0


_DENSITY_HELP = (
    "degree parameter c; arc count is ceil(c * n * (ln n + ln ln n)) "
    "with natural logarithms, clamped to n*(n-1)"
)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apsat", description="Exact directed Hamiltonian cycle solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("input", help="instance file (edge-list format)")
    p.add_argument("--all", action="store_true", help="enumerate every Hamiltonian cycle")
    p.add_argument("--r", default=None, help="assignment/patching rounds: an integer or 0, n/2, n, 2n (default n)")
    p.add_argument("--time-limit", type=float, default=None, help="wall-clock budget in seconds")
    p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--c", type=float, default=None, help=_DENSITY_HELP)
    p.add_argument("--m", type=int, default=None, help="explicit arc count (alternative to --c)")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("phase", help="Hamiltonicity fraction sweep over c values")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c-list", required=True, help="comma-separated degree parameters; " + _DENSITY_HELP)
    p.add_argument("--samples", type=int, default=200, help="instances per c value")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=None, help="per-instance budget in seconds")
    p.add_argument("--workers", type=int, default=1, help="parallel sample workers")
    p.add_argument("--out", default=None, help="CSV output file (default stdout)")
    p.set_defaults(func=_cmd_phase)

    p = sub.add_parser("scaling", help="mean solve time against instance size")
    p.add_argument("--sizes", required=True, help="comma-separated ascending sizes")
    p.add_argument("--c", type=float, default=0.9, help=_DENSITY_HELP + " (default 0.9, the hard region)")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=None, help="per-instance budget in seconds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV output file (default stdout)")
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("export-cnf", help="write the cycle-cover CNF in DIMACS form")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export_cnf)

    p = sub.add_parser("export-tsp", help="write the doubled symmetric TSP instance (TSPLIB)")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export_tsp)

    p = sub.add_parser("oracle", help="exhaustive counts for small instances (n <= 12)")
    p.add_argument("input")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return code


if __name__ == "__main__":
    sys.exit(main())
