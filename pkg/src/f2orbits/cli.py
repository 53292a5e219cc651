"""Command-line front end.

Subcommands: census, verify, graph, patterns, arf.  Exit codes: 0 on
success or a passing verification, 1 on a verification diff, 2 on usage
or parse errors, 3 when a resource guard refuses the job.  Given the
same arguments, output files are byte-identical run to run regardless
of the worker count.
"""

from __future__ import annotations

import argparse
import sys
import time

from .f2la import F2Vector, arf, value_counts_brute, value_counts_closed
from .actions import ActionKind, ActionSpec
from .classify import verify
from .lattice import (NonspecialityUnknown, build, hex_lattice_graph,
                      parse_graph_file, predict_census_nonspecial)
from .orbits import EnumerationGuardError, OrbitCensus, enumerate_orbits, enumerate_stratum
from .tri import hex_graph, pattern_E, pattern_P, pattern_Ptilde, pattern_R

EXIT_OK = 0
EXIT_DIFF = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _census_table(census: OrbitCensus) -> str:
    rows = ["representative_hex  cardinality  height_bits  type_label"]
    for r in census.records:
        rows.append("{:<18}  {:>11}  {:<11}  {}".format(
            format(r.representative.bits, "x"), r.cardinality,
            r.height.to_string() if r.height is not None else "-",
            r.type_label or "-"))
    return "\n".join(rows) + "\n"


def _render(census: OrbitCensus, fmt: str) -> str:
    if fmt == "json":
        return census.to_json()
    if fmt == "csv":
        return census.to_csv()
    return _census_table(census)


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_census(args) -> int:
    spec = ActionSpec(args.n, ActionKind.parse(args.action))
    t0 = time.perf_counter()
    if args.height is not None:
        height = F2Vector.from_string(args.height)
        census = enumerate_stratum(spec, height, workers=args.threads)
    else:
        census = enumerate_orbits(spec, workers=args.threads)
    elapsed = time.perf_counter() - t0
    _emit(_render(census, args.format), args.out)
    print(f"orbits={census.orbit_count} states={census.total_states} elapsed={elapsed:.2f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    kind = ActionKind.parse(args.action)
    report = verify(args.n, kind, workers=args.threads)
    text = report.to_json() if args.format == "json" else report.to_text()
    _emit(text, args.out)
    if args.out:
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_DIFF


def cmd_graph(args) -> int:
    try:
        with open(args.input) as fh:
            spec = parse_graph_file(fh.read())
    except OSError as exc:
        print(f"cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    census = enumerate_orbits(spec, workers=args.threads)
    elapsed = time.perf_counter() - t0
    _emit(_render(census, args.format), args.out)
    print(f"orbits={census.orbit_count} states={census.total_states} elapsed={elapsed:.2f}")
    try:
        pred = predict_census_nonspecial(spec)
    except NonspecialityUnknown:
        print("prediction: not licensed (no induced E6 in the generating subset's graph)")
        return EXIT_OK
    same = ([(r.representative.bits, r.cardinality) for r in pred.records]
            == [(r.representative.bits, r.cardinality) for r in census.records])
    print(f"prediction: {pred.orbit_count} orbits (2^kappa+2); "
          f"{'matches enumeration' if same else 'MISMATCH'}")
    return EXIT_OK if same else EXIT_DIFF


def cmd_patterns(args) -> int:
    n = args.n
    out = []
    for i in range(1, n + 1):
        out.append(f"E_{i} (n={n}):")
        out.append(pattern_E(n, i).grid())
    for i in range(1, n + 1):
        out.append(f"R_{i} (n={n}):")
        out.append(pattern_R(n, i).grid())
    if n >= 3:
        k = n // 2
        for i in range(1, k + 1):
            out.append(f"P_{i} (order {n - 1}):")
            out.append(pattern_P(n, i).grid())
        for i in range(1, k + 1):
            out.append(f"~P_{i} (order {n - 1}):")
            out.append(pattern_Ptilde(n, i).grid())
        graph = hex_graph(n)
        degs: dict[int, int] = {}
        for v in range(graph.vertex_count):
            d = graph.degree(v)
            degs[d] = degs.get(d, 0) + 1
        deg_s = ", ".join(f"{cnt} of degree {d}" for d, cnt in sorted(degs.items()))
        out.append(f"neighbor graph of the order-{n - 1} shape: "
                   f"{graph.vertex_count} vertices, {len(graph.edges)} edges ({deg_s})")
    _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


def cmd_arf(args) -> int:
    n = args.n
    spec = build(hex_lattice_graph(n))
    space = spec.qspace
    cls = arf(space)
    c0, c1 = value_counts_closed(space)
    out = [
        f"quadratic space of the order-{n - 1} neighbor graph "
        f"(dim {space.dim}, m={space.m}, kernel dim {space.kappa})",
        f"arf class: {cls.value}",
        f"value counts (closed form): |q^-1(0)|={c0} |q^-1(1)|={c1}",
    ]
    if space.dim <= 24:
        b0, b1 = value_counts_brute(space)
        out.append(f"value counts (brute force): |q^-1(0)|={b0} |q^-1(1)|={b1} "
                   f"({'match' if (b0, b1) == (c0, c1) else 'MISMATCH'})")
    _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="f2orbits",
        description="Orbit censuses of transvection-style actions on F2 triangular spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, action=True, n_required=True):
        if action:
            p.add_argument("--action", default="first",
                           choices=[k.value for k in ActionKind])
        p.add_argument("--n", type=int, required=n_required)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", default="table", choices=["json", "csv", "table"])
        p.add_argument("--threads", type=int, default=None,
                       help="worker count (default: available parallelism)")

    p_census = sub.add_parser("census", help="enumerate a full census or one stratum")
    common(p_census)
    p_census.add_argument("--height", default=None,
                          help="height bits (restricts to one stratum)")
    p_census.set_defaults(func=cmd_census)

    p_verify = sub.add_parser("verify", help="diff enumeration against the closed form")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_graph = sub.add_parser("graph", help="census of a transvection group from a graph file")
    p_graph.add_argument("--input", required=True)
    p_graph.add_argument("--out", default=None)
    p_graph.add_argument("--format", default="table", choices=["json", "csv", "table"])
    p_graph.add_argument("--threads", type=int, default=None)
    p_graph.set_defaults(func=cmd_graph)

    p_pat = sub.add_parser("patterns", help="dump the invariant patterns as 0/1 grids")
    p_pat.add_argument("--n", type=int, required=True)
    p_pat.add_argument("--out", default=None)
    p_pat.set_defaults(func=cmd_patterns)

    p_arf = sub.add_parser("arf", help="kernel dim, Arf class and value counts "
                                       "of the neighbor-graph quadratic space")
    p_arf.add_argument("--n", type=int, required=True)
    p_arf.add_argument("--out", default=None)
    p_arf.set_defaults(func=cmd_arf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
