"""Command-line entry point.

Exit codes: 0 success, 1 a verified property failed (the first counterexample
is printed as an edge list), 2 bad input or parameters, 3 disconnected graph.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bounds as bnd
from .enumeration import EnumerationQuery, cycle_counts, enumerate_masks, mask_to_graph, pair_index, screen_radii
from .extremal import (
    STRICT_MARGIN,
    TIE_WINDOW,
    verify_corollary,
    verify_lemma_properties,
    verify_theorem,
)
from .families import FamilyId, family
from .graph import (
    Graph,
    GraphError,
    cycle_class,
    from_edge_list,
    is_connected,
    is_tricyclic,
    to_edge_list,
)
from .report import RunReport
from .spectra import RESIDUAL_TOL, alpha_spectral_radius, check_alpha, signless_laplacian_radius

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_DISCONNECTED = 0, 1, 2, 3
CLAIM_N_MAX = 14
CLAIM_TOL = 1e-9


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _alpha(text: str, allow_one: bool = False) -> float:
    try:
        return check_alpha(float(text), allow_one=allow_one)
    except ValueError as exc:
        raise CliError(f"invalid alpha {text!r}: {exc}") from None


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    return from_edge_list(text)


def _connected(g: Graph) -> Graph:
    if not is_connected(g):
        raise CliError("graph is disconnected", EXIT_DISCONNECTED)
    return g


def _class_text(g: Graph) -> str:
    return str(int(cycle_class(g))) if is_tricyclic(g) else "n/a"


def _print_fields(fields: dict) -> None:
    width = max(len(k) for k in fields)
    for key, value in fields.items():
        print(f"{key:<{width}}  {value!r}" if isinstance(value, float) else f"{key:<{width}}  {value}")


# --------------------------------------------------------------------------
# commands; each returns a RunReport and prints its human summary

def cmd_spectral(args) -> RunReport:
    g = _connected(_read_graph(args.input))
    alpha = _alpha(args.alpha)
    res = alpha_spectral_radius(g, alpha)
    results = {
        "n": g.n, "m": g.m, "max_degree": g.max_degree, "cycle_class": _class_text(g),
        "radius": res.radius, "residual": res.residual, "iterations": res.iterations,
        "tolerance": RESIDUAL_TOL,
    }
    if args.perron:
        results["perron"] = [float(x) for x in res.perron]
    if not args.json:
        _print_fields({"n": g.n, "m": g.m, "max_degree": g.max_degree,
                       "cycle_class": results["cycle_class"], "alpha": args.alpha,
                       "rho": res.radius})
        if args.perron:
            for v, x in enumerate(res.perron):
                print(f"x[{v}]  {float(x)!r}")
    return RunReport("spectral", {"input": args.input, "alpha": args.alpha, "perron": args.perron}, results)


def cmd_construct(args) -> RunReport:
    try:
        g = family(args.family, args.n, args.k)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    text = to_edge_list(g)
    if args.out:
        Path(args.out).write_text(text)
    elif not args.json:
        sys.stdout.write(text)
    results = {"n": g.n, "m": g.m, "max_degree": g.max_degree, "cycle_class": int(cycle_class(g)),
               "edges": [list(e) for e in g.edges]}
    if not args.json:
        _print_fields({k: results[k] for k in ("n", "m", "max_degree", "cycle_class")})
    return RunReport("construct", {"family": args.family, "n": args.n, "k": args.k, "out": args.out},
                     results)


def cmd_bounds(args) -> RunReport:
    g = _connected(_read_graph(args.input))
    rep = bnd.bounds_report(g, _alpha(args.alpha))
    results = rep.to_dict()
    if not args.json:
        _print_fields({"alpha": args.alpha, "lower_maxdeg": rep.lower_maxdeg, "rho": rep.radius,
                       "upper_degree_mean": rep.upper_degree_mean,
                       "upper_sq": rep.upper_sq if rep.upper_sq is not None else "n/a (alpha < 1/2)",
                       "sandwich": "holds" if rep.sandwich_holds else "VIOLATED"})
    report = RunReport("bounds", {"input": args.input, "alpha": args.alpha}, results)
    if not rep.sandwich_holds:
        report.exit_code = EXIT_FAIL
        print(to_edge_list(g, "bound sandwich violated"), end="", file=sys.stderr)
    return report


def _fail(report: RunReport, counterexample: str) -> RunReport:
    report.exit_code = EXIT_FAIL
    report.results["counterexample"] = counterexample
    print(counterexample, end="" if counterexample.endswith("\n") else "\n", file=sys.stderr)
    return report


def _verify_search(args, which: str) -> RunReport:
    alphas_text = args.alpha or ["0.5"]
    fn = verify_theorem if which == "theorem" else verify_corollary
    runs = []
    failure = None
    for text in alphas_text:
        try:
            rep = fn(args.n, args.k, _alpha(text), jobs=args.jobs)
        except GraphError as exc:
            raise CliError(str(exc)) from None
        runs.append({**rep.to_dict(), "alpha": text, "alpha_value": rep.alpha})
        if not args.json:
            if which == "theorem":
                _print_fields({"alpha": text, "graphs": rep.graphs_enumerated, "max_rho": rep.max_radius,
                               "runner_up": rep.runner_up_radius, "unique_T3": rep.unique_iso_to_target,
                               "family_order": rep.family_ordering_holds,
                               "result": "PASS" if rep.passed else "FAIL"})
            else:
                _print_fields({"alpha": text, "graphs": rep.graphs_enumerated, "rho_T3": rep.target_radius,
                               "min_gap": rep.min_gap, "violations": rep.violations,
                               "result": "PASS" if rep.passed else "FAIL"})
            print()
        if not rep.passed and failure is None:
            failure = rep.witness if which == "theorem" else rep.counterexample
    report = RunReport(f"verify {which}",
                       {"n": args.n, "k": args.k, "alpha": alphas_text, "jobs": args.jobs},
                       {"runs": runs, "passed": failure is None,
                        "tie_window": TIE_WINDOW, "strict_margin": STRICT_MARGIN})
    if failure is not None:
        _fail(report, failure)
    return report


def _verify_lemmas(args) -> RunReport:
    try:
        reps = verify_lemma_properties(args.trials, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if not args.json:
        for r in reps:
            print(f"{r.lemma}  trials {r.trials}  comparisons {r.comparisons}  failures {r.failures}  "
                  f"skipped {r.skipped}  min_margin {r.min_margin!r}")
    report = RunReport("verify lemmas", {"trials": args.trials, "seed": args.seed},
                       {"lemmas": [r.to_dict() for r in reps], "passed": all(r.passed for r in reps),
                        "strict_margin": STRICT_MARGIN}, seed=args.seed)
    bad = next((r for r in reps if not r.passed), None)
    if bad is not None:
        f = bad.first_failure
        _fail(report, f"# {bad.lemma} alpha={f['alpha']!r} expected larger\n{f['larger']}"
                      f"# expected smaller\n{f['smaller']}")
    return report


def _verify_inequalities(args) -> RunReport:
    if args.k_max < 1:
        raise CliError("--k-max must be >= 1")
    try:
        grid = bnd.alpha_grid(args.alpha_grid)
        records = [r for k in range(1, args.k_max + 1) for a in grid for r in bnd.inequality_chain(k, a)]
    except ValueError as exc:
        raise CliError(str(exc)) from None
    claim = []
    for n in range(8, CLAIM_N_MAX + 1):
        for k in range(1, n - 6):
            lam = signless_laplacian_radius(family(FamilyId.T4, n, k))
            claim.append({"n": n, "k": k, "lambda": lam, "bound": k + 7, "holds": lam <= k + 7 + CLAIM_TOL})
    failed = [r for r in records if not r.holds]
    claim_failed = [c for c in claim if not c["holds"]]
    if not args.json:
        print(f"records {len(records)}  failing {len(failed)}")
        print(f"signless Laplacian checks {len(claim)}  failing {len(claim_failed)}")
    report = RunReport("verify inequalities", {"k_max": args.k_max, "alpha_grid": args.alpha_grid},
                       {"records": len(records), "failures": [r.to_dict() for r in failed],
                        "signless_checks": claim, "signless_tolerance": CLAIM_TOL,
                        "passed": not failed and not claim_failed})
    if failed:
        _fail(report, json.dumps(failed[0].to_dict(), sort_keys=True))
    elif claim_failed:
        _fail(report, to_edge_list(family(FamilyId.T4, claim_failed[0]["n"], claim_failed[0]["k"])))
    return report


def cmd_verify(args) -> RunReport:
    if args.mode in ("theorem", "corollary"):
        return _verify_search(args, args.mode)
    if args.mode == "lemmas":
        return _verify_lemmas(args)
    return _verify_inequalities(args)


def cmd_enumerate(args) -> RunReport:
    alphas_text = args.alpha or []
    alphas = [_alpha(a) for a in alphas_text]
    k = None if args.any_k else args.k
    if k is None and not args.any_k:
        raise CliError("--k is required unless --any-k is given")
    try:
        query = EnumerationQuery(args.n, k, cycle_class=args.cls, alphas=tuple(alphas),
                                 degree_ordered=args.degree_ordered)
    except (GraphError, ValueError) as exc:
        raise CliError(str(exc)) from None
    masks = enumerate_masks(query, args.jobs)
    classes = cycle_counts(args.n, masks)
    radii = [screen_radii(args.n, masks, a) for a in alphas]
    eu, ev = pair_index(args.n)
    with open(args.out, "w") as fh:
        for i, mask in enumerate(masks):
            bits = [j for j in range(len(eu)) if (int(mask) >> j) & 1]
            g = mask_to_graph(args.n, int(mask))
            line = {"edges": [[int(eu[j]), int(ev[j])] for j in bits],
                    "cycle_class": int(classes[i]),
                    "pendant_count": sum(1 for d in g.degrees if d == 1),
                    "rho": {t: float(r[i]) for t, r in zip(alphas_text, radii)}}
            fh.write(json.dumps(line, sort_keys=True) + "\n")
    counts = {str(c): int((classes == c).sum()) for c in (3, 4, 6, 7)}
    if not args.json:
        for c, v in counts.items():
            print(f"class {c}  {v}")
        print(f"total    {len(masks)}")
    return RunReport("enumerate",
                     {"n": args.n, "k": k, "class": args.cls, "alpha": alphas_text,
                      "degree_ordered": args.degree_ordered, "out": args.out},
                     {"total": len(masks), "per_class": counts})


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alpha-extremal", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON run report")
    common.add_argument("--report", help="also write the JSON run report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectral", parents=[common], help="rho_alpha of an edge-list graph")
    s.add_argument("--input", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--perron", action="store_true")
    s.set_defaults(func=cmd_spectral)

    s = sub.add_parser("construct", parents=[common], help="write a family member as an edge list")
    s.add_argument("--family", required=True, choices=[f.value for f in FamilyId])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bounds", parents=[common], help="closed-form bounds against rho_alpha")
    s.add_argument("--input", required=True)
    s.add_argument("--alpha", required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("verify", parents=[common], help="run a verification harness")
    s.add_argument("mode", choices=["theorem", "corollary", "lemmas", "inequalities"])
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--alpha", action="append", help="repeatable; default 0.5")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--k-max", type=int, default=50)
    s.add_argument("--alpha-grid", default="0.5:0.95:0.05")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", parents=[common], help="write the tricyclic stream as JSON lines")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--any-k", action="store_true", help="drop the pendant-count constraint")
    s.add_argument("--class", dest="cls", type=int, choices=[3, 4, 6, 7])
    s.add_argument("--alpha", action="append", help="repeatable")
    s.add_argument("--degree-ordered", action="store_true",
                   help="only labelings with non-increasing degrees")
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        report = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except GraphError as exc:   # includes edge-list parse errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report.wall_time_s = time.perf_counter() - t0
    text = report.to_json()
    if args.json:
        print(text)
    if args.report:
        Path(args.report).write_text(text + "\n")
    return report.exit_code
