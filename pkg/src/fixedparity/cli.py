"""Command-line entry point: ``fixedparity <group> <command> [options]``.

Every run prints one report (JSON by default, CSV with ``--format csv``)
and exits 0 on pass, 1 on a failed verification, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import apps, orient, parity, subgraph, verify
from .graphs import GraphError, read_graph
from .pmf import FLOAT, RATIONAL, Pmf, to_scalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


# Argument helpers ----------------------------------------------------------------------


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _number_list(text: str) -> list[Fraction]:
    return [_number(x) for x in text.split(",") if x.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--backend", choices=(FLOAT, RATIONAL), default=FLOAT)
    g.add_argument("--tol", type=float, default=None, help="verdict tolerance (default 0 exact, 1e-9 float)")
    g.add_argument("--cap", type=int, default=orient.DEFAULT_CAP, help="largest edge count enumerated exactly")
    g.add_argument("--samples", type=int, default=100_000, help="Monte Carlo draws above the cap")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="fixedparity", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    pmf = groups.add_parser("pmf", help="Bernoulli-sum distributions").add_subparsers(dest="command", required=True)
    c = leaf(pmf, "poisson-binomial", "law of a sum of independent coins")
    c.add_argument("--params", type=_number_list, required=True, help="comma-separated biases")
    c = leaf(pmf, "parity-conditioned", "coin sum conditioned on its parity")
    c.add_argument("--params", type=_number_list, help="comma-separated biases")
    c.add_argument("--n", type=int, help="number of identical coins (with --p)")
    c.add_argument("--p", type=_number)
    c.add_argument("--parity", choices=("even", "odd"), required=True)
    c = leaf(pmf, "fixed-parity", "even-sum or odd-sum toss")
    c.add_argument("--params", type=_number_list)
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=_number)
    c.add_argument("--weights", type=_number_list, help="die weights (default uniform)")
    c.add_argument("--parity", choices=("even", "odd"), required=True)
    c = leaf(pmf, "composite", "first coin plus a parity-conditioned binomial")
    c.add_argument("--p1", type=_number, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=_number, required=True)
    c.add_argument("--mode", choices=("direct", "flipped"), default="direct")

    og = groups.add_parser("orient", help="random orientations").add_subparsers(dest="command", required=True)
    for name, text in (
        ("sample", "draw orientations and their statistics"),
        ("dist", "exact laws of the in-degree statistics"),
        ("dominance", "sandwich the even in-degree count between fixed-parity tosses"),
        ("median-bound", "median bound on the number of positive in-degree vertices (m = n)"),
        ("enumerate", "count orientations by number of even in-degree vertices"),
        ("t-odd", "orientation with a prescribed odd in-degree set"),
    ):
        c = leaf(og, name, text)
        c.add_argument("--graph", required=True, help="graph file: 'n m' then m lines 'tail head'")
        if name in ("sample", "dist", "dominance", "median-bound"):
            c.add_argument("--p", type=_number, required=True)
        if name == "sample":
            c.add_argument("--order", choices=("input", "good-labeling"), default="input")
            c.add_argument("--count", type=int, default=10, help="orientations to draw")
        if name == "enumerate":
            c.add_argument("--even-count", type=int, default=None)
        if name == "t-odd":
            c.add_argument("--T", type=_int_list, default=[], help="1-based vertex ids, comma-separated")

    sg = groups.add_parser("subgraph", help="random edge-retention subgraphs").add_subparsers(
        dest="command", required=True
    )
    for name, text in (("dist", "law of the odd-degree vertex count"), ("dominance", "compare with the even-sum toss")):
        c = leaf(sg, name, text)
        c.add_argument("--graph", required=True)
        c.add_argument("--p", type=_number, required=True)

    sv = groups.add_parser("survey", help="exploratory surveys").add_subparsers(dest="command", required=True)
    c = leaf(sv, "unimodality", "zero in-degree law and independent-set sequence per graph")
    c.add_argument("--family", choices=sorted(apps.FAMILIES), default="canonical-trees")
    c.add_argument("--n-min", type=int, default=2)
    c.add_argument("--n-max", type=int, default=8)
    c.add_argument("--p", type=_number, default=Fraction(1, 2))
    c.add_argument("--budget", type=int, default=None, help="stop after this many graphs")
    c = leaf(sv, "labeled-census", "labeled graphs by edge count and odd-degree count")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--t", type=int, default=None)

    vg = groups.add_parser("verify", help="verification sweeps").add_subparsers(dest="command", required=True)
    c = leaf(vg, "lemma", "run one named sweep")
    c.add_argument("name", choices=sorted(verify.SWEEPS))
    c.add_argument("--n-max", type=int, default=6)
    c.add_argument("--p-grid", type=verify.parse_grid, default="0.05:0.5:0.05")
    c = leaf(vg, "all", "run every sweep")
    c.add_argument("--n-max", type=int, default=6)
    c.add_argument("--p-grid", type=verify.parse_grid, default="0.05:0.5:0.05")
    return parser


# Command handlers ----------------------------------------------------------------------
# Each returns (result, verdict, csv_rows).


def _scalar(args, x):
    return to_scalar(x, args.backend)


def _out(args, x):
    return str(x) if args.backend == RATIONAL else float(x)


def _pmf_rows(name: str, d: Pmf) -> list[dict]:
    return [{"series": name, "k": k, "mass": str(m) if d.exact else float(m)} for k, m in enumerate(d.masses)]


def _biases(args) -> tuple:
    if args.params:
        return parity.BiasSet(args.params, args.backend).params
    if args.n is None or args.p is None:
        raise InputError("give --params or both --n and --p")
    return parity.BiasSet.constant(args.n, args.p, args.backend).params


def _graph(args):
    try:
        return read_graph(args.graph)
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc}") from None


def cmd_pmf(args):
    if args.command == "poisson-binomial":
        I = parity.BiasSet(args.params, args.backend).params
        d = parity.poisson_binomial(I)
        split = parity.parity_split(I)
        result = {"pmf": d.to_dict(), "alpha": _out(args, split.alpha), "beta": _out(args, split.beta)}
    elif args.command == "parity-conditioned":
        d = parity.conditional_parity_pmf(_biases(args), args.parity)
        result = {"pmf": d.to_dict()}
    elif args.command == "fixed-parity":
        I = _biases(args)
        pi = parity.WeightVector(args.weights, args.backend) if args.weights else None
        if pi is not None and len(pi) != len(I):
            raise InputError("--weights must have one entry per coin")
        d = parity.fixed_parity_toss_pmf(I, pi, args.parity)
        result = {"pmf": d.to_dict()}
    else:
        d = parity.composite_parity_sum(_scalar(args, args.p1), args.n, _scalar(args, args.p), args.mode)
        result = {"pmf": d.to_dict()}
    return result, orient.PASS, _pmf_rows("pmf", d)


def cmd_orient(args):
    G = _graph(args)
    rng = np.random.default_rng(args.seed)
    p = _scalar(args, args.p) if hasattr(args, "p") else None
    if args.command == "sample":
        rows, draws = [], []
        for i in range(args.count):
            if args.order == "good-labeling":
                trace = orient.good_labeling_trace(G, p, rng)
                o = trace.orientation
            else:
                trace, o = None, orient.sample_orientation(G, p, rng)
            s = orient.orientation_stats(G, o)
            row = {"draw": i, "bits": "".join(map(str, o.bits)), "E": s.e_count, "O": s.o_count, "Z": s.z_count, "X": s.x_count}
            rows.append(row)
            entry = dict(row, in_degrees=list(s.in_degrees))
            if trace is not None:
                entry["step_even_probabilities"] = [float(x) for x in trace.step_probabilities]
            draws.append(entry)
        return {"order": args.order, "draws": draws}, orient.PASS, rows
    if args.command == "dist":
        if G.m <= args.cap:
            d = orient.exact_orientation_distributions(G, p, args.cap, args.jobs)
            even, zero, pos, mode = d.even, d.zero, d.positive, "exact"
        else:
            s = orient.sample_orientation_statistics(G, p, args.samples, rng)
            even, zero = orient.empirical_pmf(s.even, G.n), orient.empirical_pmf(s.zero, G.n)
            pos, mode = orient.empirical_pmf(G.n - s.zero, G.n), "statistical"
        result = {"mode": mode, "even": even.to_dict(), "zero": zero.to_dict(), "positive": pos.to_dict()}
        result["vertex_even_probability"] = [_out(args, orient.vertex_even_probability(G, v, p)) for v in range(G.n)]
        if G.m == G.n:
            value, bound = orient.expected_colors(G, p, args.tol)
            result["expected_positive"] = _out(args, value)
            result["expected_positive_max"] = _out(args, bound)
        rows = _pmf_rows("E", even) + _pmf_rows("Z", zero) + _pmf_rows("X", pos)
        return result, orient.PASS if mode == "exact" else orient.STATISTICAL_PASS, rows
    if args.command == "dominance":
        rep = orient.dominance_bounds_check(G, p, args.cap, args.samples, rng, args.tol, jobs=args.jobs)
        rows = _pmf_rows("E", rep.even_pmf) + _pmf_rows("lower", rep.lower_pmf) + _pmf_rows("upper", rep.upper_pmf)
        return rep.to_dict(), rep.verdict, rows
    if args.command == "median-bound":
        rep = orient.median_bound_report(G, p, args.cap, args.samples, rng, args.tol)
        rows = [{"check": k, "holds": v} for k, v in rep.checks.items()]
        return rep.to_dict(), rep.verdict, rows
    if args.command == "enumerate":
        ts = range(G.n + 1) if args.even_count is None else [args.even_count]
        rows = []
        for t in ts:
            c = apps.count_orientations_with_even_count(G, t, args.cap)
            rows.append({"t": t, "formula": c.formula_value, "census": c.census_value, "verdict": c.verdict})
        verdicts = {r["verdict"] for r in rows}
        verdict = orient.FAIL if orient.FAIL in verdicts else (orient.UNVERIFIED if orient.UNVERIFIED in verdicts else orient.PASS)
        result = rows[0] if args.even_count is not None else {"counts": rows}
        return result, verdict, rows
    T = [v - 1 for v in args.T]
    if any(not 0 <= v < G.n for v in T):
        raise InputError(f"--T vertex ids must lie in 1..{G.n}")
    o = apps.t_odd_orientation(G, T)
    if o is None:
        result = {"T": sorted(v + 1 for v in T), "exists": False, "orientation": None}
        return result, orient.PASS, [result]
    odd = sorted(v + 1 for v in apps.odd_set(G, o))
    result = {
        "T": sorted(v + 1 for v in T),
        "exists": True,
        "orientation": "".join(map(str, o.bits)),
        "in_degrees": orient.in_degrees(G, o),
        "odd_set": odd,
    }
    ok = odd == result["T"]
    return result, orient.PASS if ok else orient.FAIL, [{k: str(v) for k, v in result.items()}]


def cmd_subgraph(args):
    G = _graph(args)
    p = _scalar(args, args.p)
    rng = np.random.default_rng(args.seed)
    if args.command == "dist":
        if G.m <= args.cap:
            d, mode = subgraph.exact_odd_degree_pmf(G, p, args.cap, args.jobs), "exact"
        else:
            d = orient.empirical_pmf(subgraph.sample_odd_degree_counts(G, p, args.samples, rng), G.n)
            mode = "statistical"
        verdict = orient.PASS if mode == "exact" else orient.STATISTICAL_PASS
        return {"mode": mode, "odd": d.to_dict()}, verdict, _pmf_rows("odd", d)
    rep = subgraph.verify_subgraph_dominance(G, p, args.cap, args.samples, rng, args.tol)
    return rep.to_dict(), rep.verdict, _pmf_rows("odd", rep.odd_pmf) + _pmf_rows("bound", rep.bound_pmf)


def cmd_survey(args):
    if args.command == "unimodality":
        p = _scalar(args, args.p)
        rep = apps.unimodality_survey(args.family, args.n_max, p, args.n_min, args.budget)
        verdict = orient.PASS if rep.complete else orient.UNVERIFIED
        rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
        return rep.to_dict(), verdict, rows
    census = apps.labeled_graph_odd_degree_census(args.n, args.t)
    per_m = census.per_edge_count_rows()
    if args.t is not None:
        per_m = [r for r in per_m if r["t"] == args.t]
    result = {
        "n": census.n,
        "total": sum(census.totals().values()),
        "per_edge_count": per_m,
        "aggregate": census.aggregate_rows(),
    }
    return result, orient.PASS, per_m


def cmd_verify(args):
    cfg = verify.SweepConfig(
        n_max=args.n_max,
        p_grid=tuple(args.p_grid),
        exact=args.backend == RATIONAL,
        seed=args.seed,
        cap=args.cap,
        tol=args.tol,
        samples=args.samples,
    )
    name = args.name if args.command == "lemma" else "all"
    results = verify.run_sweep(name, cfg)
    rows = [r.to_dict() for r in results]
    verdict = orient.PASS if all(r.ok for r in results) else orient.FAIL
    csv_rows = [{k: v for k, v in r.items() if k != "examples"} for r in rows]
    return {"sweeps": rows}, verdict, csv_rows


HANDLERS = {"pmf": cmd_pmf, "orient": cmd_orient, "subgraph": cmd_subgraph, "survey": cmd_survey, "verify": cmd_verify}


def _config(args) -> dict:
    skip = {"group", "command", "format"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, Fraction):
            v = str(v)
        elif isinstance(v, (list, tuple)):
            v = [str(x) if isinstance(x, Fraction) else x for x in v]
        out[k] = v
    return out


def _write_csv(rows: list[dict], stream) -> None:
    if not rows:
        return
    fields = list(dict.fromkeys(k for r in rows for k in r))
    writer = csv.DictWriter(stream, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        result, verdict, rows = HANDLERS[args.group](args)
    except (InputError, GraphError, ValueError, KeyError, apps.CapExceededError) as exc:
        print(f"fixedparity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        _write_csv(rows, stdout)
    else:
        report = {
            "command": f"{args.group} {args.command}",
            "config": _config(args),
            "result": result,
            "verdict": verdict,
            "wall_time": round(time.perf_counter() - started, 6),
        }
        json.dump(report, stdout, indent=2, default=str)
        stdout.write("\n")
    return EXIT_FAIL if verdict == orient.FAIL else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
