"""Command-line surface: batch solving, certificate checking, reports.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 unknowns
present.  CUBIC3DEC_SEED seeds the heuristic restarts.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from collections import defaultdict

from . import decomp, pipeline, sat
from .decomp import BudgetExceeded, DecompositionError
from .extend import check_compatibility
from .graphs import Graph6Error, parse_graph6, write_graph6
from .templates import builtin_pairs

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3


def _seed() -> int:
    return int(os.environ.get("CUBIC3DEC_SEED", "0"))


def _out_stream(path):
    return open(path, "w", encoding="ascii") if path else sys.stdout


def _read_corpus(path) -> list[tuple[int, str]]:
    records = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if line:
                records.append((lineno, line))
    return records


def _solve_record(args):
    line, mode, budget, seed = args
    try:
        g = parse_graph6(line)
    except Graph6Error as exc:
        return ("parse-error", str(exc))
    if not g.is_cubic():
        return ("skip", "not cubic")
    if not g.is_connected():
        return ("skip", "not connected")
    try:
        if mode == "reduce":
            d, _trace = pipeline.solve_via_reduction(g, budget=budget, seed=seed)
        else:
            d = decomp.solve(g, budget=budget, seed=seed)
    except BudgetExceeded:
        return ("unknown", "budget exceeded")
    if d is None:
        return ("none", "no 3-decomposition exists")
    ok, why = decomp.verify(g, d)
    if not ok:
        return ("invalid", why)
    return ("ok", decomp.format_certificate(g, d))


def cmd_batch(args) -> int:
    try:
        records = _read_corpus(args.corpus)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    jobs = [(line, args.mode, args.budget, _seed()) for _, line in records]
    t0 = time.time()
    if args.jobs > 1:
        from multiprocessing import Pool
        with Pool(args.jobs) as pool:
            results = pool.map(_solve_record, jobs)
    else:
        results = [_solve_record(job) for job in jobs]
    per_order = defaultdict(lambda: [0, 0])
    unknown = []
    failures = 0
    out = _out_stream(args.out)
    try:
        for (lineno, line), (status, payload) in zip(records, results):
            if status == "ok":
                out.write(payload)
                n = parse_graph6(line).n
                per_order[n][0] += 1
                per_order[n][1] += 1
            elif status in ("skip", "parse-error"):
                print(f"line {lineno}: skipped ({payload})", file=sys.stderr)
            elif status == "unknown":
                unknown.append(line)
                per_order[parse_graph6(line).n][0] += 1
            else:
                failures += 1
                print(f"line {lineno}: {status}: {payload}", file=sys.stderr)
    finally:
        if out is not sys.stdout:
            out.close()
    elapsed = time.time() - t0
    for n in sorted(per_order):
        done, cert = per_order[n][0], per_order[n][1]
        print(f"n={n}: {done} processed, {cert} certified", file=sys.stderr)
    print(f"mode={args.mode} total={len(records)} unknown={len(unknown)} "
          f"time={elapsed:.1f}s", file=sys.stderr)
    for line in unknown:
        print(f"unknown: {line}", file=sys.stderr)
    if failures:
        return EXIT_VERIFY
    if unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        g = parse_graph6(args.graph)
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        d = decomp.solve(g, budget=args.budget, seed=_seed())
    except BudgetExceeded:
        print("unknown: budget exceeded", file=sys.stderr)
        return EXIT_UNKNOWN
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if d is None:
        print("no 3-decomposition exists", file=sys.stderr)
        return EXIT_VERIFY
    out = _out_stream(args.out)
    out.write(decomp.format_certificate(g, d))
    if out is not sys.stdout:
        out.close()
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        g = parse_graph6(args.graph)
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        d, trace = pipeline.solve_via_reduction(g, budget=args.budget, seed=_seed())
    except BudgetExceeded:
        print("unknown: budget exceeded", file=sys.stderr)
        return EXIT_UNKNOWN
    ok, why = decomp.verify(g, d)
    if not ok:
        print(f"verification failed: {why}", file=sys.stderr)
        return EXIT_VERIFY
    out = _out_stream(args.out)
    out.write(pipeline.render_trace(trace))
    out.write(decomp.format_certificate(g, d))
    if out is not sys.stdout:
        out.close()
    return EXIT_OK


def _load_certificates(path) -> dict[str, frozenset]:
    certs = {}
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    lines = [ln for ln in lines if ln.strip()]
    for i in range(0, len(lines) - 1, 2):
        g, tree = decomp.parse_certificate(lines[i] + "\n" + lines[i + 1])
        certs[write_graph6(g)] = tree
    return certs


def cmd_check(args) -> int:
    try:
        records = _read_corpus(args.corpus)
        certs = _load_certificates(args.certs)
    except (OSError, DecompositionError, Graph6Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    bad = 0
    for lineno, line in records:
        try:
            g = parse_graph6(line)
        except Graph6Error as exc:
            print(f"line {lineno}: parse error: {exc}")
            bad += 1
            continue
        key = write_graph6(g)
        if key not in certs:
            print(f"line {lineno}: FAIL missing certificate")
            bad += 1
            continue
        ok, why = decomp.check_certificate(g, certs[key])
        print(f"line {lineno}: {'pass' if ok else 'FAIL ' + why}")
        if not ok:
            bad += 1
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_compat(args) -> int:
    pairs = builtin_pairs()
    if args.pair not in pairs:
        print(f"error: unknown pair {args.pair!r}; choices: {', '.join(sorted(pairs))}",
              file=sys.stderr)
        return EXIT_INPUT
    pair = pairs[args.pair]
    report = check_compatibility(pair)
    out = _out_stream(args.out)
    edges = pair.x.edges()
    out.write(f"pair: {pair.name}\n")
    out.write(f"forests: {len(report.naive) + len(report.manual) + len(report.incomplete)}\n")
    for fx, witness in report.naive:
        labs = "".join(fx.edge_label(e).lower() for e in edges)
        wit = " ".join(f"{u}-{v}" for u, v in sorted(witness.tree_edges))
        out.write(f"naive {labs} witness {wit}\n")
    for fx, rule in report.manual:
        labs = "".join(fx.edge_label(e).lower() for e in edges)
        out.write(f"manual {labs} rule {rule}\n")
    for fx in report.incomplete:
        labs = "".join(fx.edge_label(e).lower() for e in edges)
        out.write(f"INCOMPLETE {labs}\n")
    out.write(f"manual: {report.manual_class_count()}\n")
    if out is not sys.stdout:
        out.close()
    return EXIT_OK if report.is_complete() else EXIT_VERIFY


def cmd_sat_gadget(args) -> int:
    try:
        with open(args.cnf, "r", encoding="ascii") as fh:
            formula = sat.parse_dimacs(fh.read())
    except (OSError, sat.FormulaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    padded = sat.pad_balanced(formula)
    template, assignment = sat.sat_to_template(padded)
    realizable = sat.is_realizable(template, assignment)
    satisfiable = sat.brute_force_sat(padded) is not None
    out = _out_stream(args.out)
    out.write(f"variables: {formula.num_vars}\n")
    out.write(f"clauses: {len(formula.clauses)} (padded to {len(padded.clauses)})\n")
    out.write(f"template vertices: {template.graph.n}\n")
    out.write(f"outer assignment: {''.join(assignment)}\n")
    out.write(f"realizable: {'yes' if realizable else 'no'}\n")
    out.write(f"satisfiable (brute force): {'yes' if satisfiable else 'no'}\n")
    out.write(f"agreement: {'yes' if realizable == satisfiable else 'NO'}\n")
    if out is not sys.stdout:
        out.close()
    return EXIT_OK if realizable == satisfiable else EXIT_VERIFY


def cmd_hist_reduce(args) -> int:
    try:
        records = _read_corpus(args.corpus)
        certs = _load_certificates(args.certs)
    except (OSError, DecompositionError, Graph6Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = _out_stream(args.out)
    bad = 0
    for lineno, line in records:
        g = parse_graph6(line)
        key = write_graph6(g)
        if key not in certs:
            out.write(f"line {lineno}: missing certificate\n")
            bad += 1
            continue
        d = decomp.from_tree(g, certs[key])
        terminal, steps = decomp.hist_reduce(g, d)
        kinds = ",".join(s.kind for s in steps) or "-"
        out.write(f"line {lineno}: steps={len(steps)} [{kinds}] "
                  f"terminal_order={len(terminal.vertices)} matching={len(terminal.matching_edges())}\n")
    if out is not sys.stdout:
        out.close()
    return EXIT_VERIFY if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubic3dec",
                                 description="3-decompositions of cubic graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decompose one graph6 record")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("batch", help="certify a graph6 corpus")
    p.add_argument("corpus")
    p.add_argument("--mode", choices=("solve", "reduce"), default="solve")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("check", help="verify certificates against a corpus")
    p.add_argument("corpus")
    p.add_argument("certs")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="reduction pipeline with trace for one record")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("compat", help="compatibility report for a builtin pair")
    p.add_argument("pair")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compat)

    p = sub.add_parser("sat-gadget", help="build and test the 3CNF gadget")
    p.add_argument("cnf")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sat_gadget)

    p = sub.add_parser("hist-reduce", help="run HIST reductions over certificates")
    p.add_argument("corpus")
    p.add_argument("certs")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hist_reduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
