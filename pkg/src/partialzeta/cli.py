"""Command line driver.

JSON reports go to stdout (or ``--out``); short human-readable tables go to
stderr.  Exit codes: 0 ok, 1 usage or parse error, 2 budget exhausted,
3 an identity or bound failed to hold, 4 search logged a research event.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import symident
from .counting import MAIN_NODE_BUDGET, VarietySpec, count_partial
from .errors import BudgetExceeded, PartialZetaError, PolySyntaxError
from .faltings import Y_BUDGET, fixed_points_sigma_frob
from .ffield import field_spec, is_prime
from .padic import verify_axkatz
from .poly import MultiPoly
from .report import (DEFAULT_MAX_ORDER, SCHEMA_VERSION, analyze_variety, fmt_frac, is_dividing_chain,
                     query_echo)
from .varfile import format_variety, load_variety

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_EVENT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _say(*lines):
    for line in lines:
        print(line, file=sys.stderr)


def parse_d(text: str) -> tuple[int, ...]:
    try:
        d = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--d expects a comma separated tuple of positive integers, got {text!r}") from None
    if not d or any(v < 1 for v in d):
        raise UsageError("every d_i must be a positive integer")
    return d


def _check_arity(X: VarietySpec, d):
    if len(d) != X.n:
        raise UsageError(f"--d has {len(d)} entries but the variety has {X.n} variables")


# -- subcommands ------------------------------------------------------------------


def cmd_count(X: VarietySpec, d, k_max: int, *, node_budget: int = MAIN_NODE_BUDGET) -> tuple[dict, int]:
    _check_arity(X, d)
    values, code, note = [], EXIT_OK, None
    for k in range(1, k_max + 1):
        try:
            values.append(count_partial(X, d, k, node_budget=node_budget))
        except BudgetExceeded as exc:
            note, code = f"stopped before k={k}: {exc}", EXIT_BUDGET
            break
    _say(f"{'k':>3}  count", *[f"{k:>3}  {v}" for k, v in enumerate(values, start=1)])
    if note:
        _say(note)
    report = {"schema_version": SCHEMA_VERSION, "kind": "count", "query": query_echo(X, d, k_max),
              "budgets": {"nodes": node_budget},
              "counts": {"values": values, "complete": note is None, "budget": note}}
    if note:
        report["partial"] = True
    return report, code


def cmd_analyze(X: VarietySpec, d, k_max: int, **options) -> tuple[dict, int]:
    _check_arity(X, d)
    report, code = analyze_variety(X, d, k_max, **options)
    v = report["verdicts"]
    _say(f"counts: {report['counts']['values']}",
         f"recurrence: {report['recurrence'].get('status')} order={report['recurrence'].get('order', '-')}",
         f"classification: {v['classification']}  rh: {v['rh_all_pass']}  "
         f"ax-katz: {v['axkatz_holds']}  faltings: {v['faltings']}")
    return report, code


def cmd_faltings_verify(X: VarietySpec, d, k: int, *, y_budget: int = Y_BUDGET,
                        node_budget: int = MAIN_NODE_BUDGET) -> tuple[dict, int]:
    _check_arity(X, d)
    report = {"schema_version": SCHEMA_VERSION, "kind": "faltings", "query": query_echo(X, d), "k": k}
    try:
        N = count_partial(X, d, k, node_budget=node_budget)
        fp = fixed_points_sigma_frob(X, d, k, budget=y_budget)
    except BudgetExceeded as exc:
        report.update(status="budget", reason=str(exc))
        _say(f"budget exhausted: {exc}")
        return report, EXIT_BUDGET
    ok = N == fp
    report.update(count=N, fixed_points=fp, status="match" if ok else "mismatch")
    _say(f"partial count {N}, fixed points {fp}: {'match' if ok else 'MISMATCH'}")
    return report, EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_axkatz(X: VarietySpec, d, k_max: int, *, node_budget: int = MAIN_NODE_BUDGET) -> tuple[dict, int]:
    _check_arity(X, d)
    report = {"schema_version": SCHEMA_VERSION, "kind": "axkatz", "query": query_echo(X, d, k_max)}
    try:
        res = verify_axkatz(X, d, range(1, k_max + 1), node_budget=node_budget)
    except BudgetExceeded as exc:
        report.update(status="budget", reason=str(exc))
        return report, EXIT_BUDGET
    report["result"] = res
    if res["applicable"]:
        _say(f"mu = {res['mu']}", *[f"k={r['k']} N={r['count']} ord_q={r['ord_q']} >= {r['bound']}: {r['holds']}"
                                    for r in res["checks"]])
    else:
        _say(f"not applicable: {res['reason']}")
    return report, EXIT_OK if res["holds"] else EXIT_INCONSISTENT


def identity_check(h_max: int, dim_max: int, trials: int, *, matrix_trials: int | None = None,
                   matrix_dim_max: int = 5, matrix_h_max: int = 5, seed: int = 0) -> dict:
    """Trace formula against eigenvalue enumeration and matrix powers."""
    rng = random.Random(seed)
    matrix_trials = trials // 4 if matrix_trials is None else matrix_trials
    failures = []
    for t in range(trials):
        dim = rng.randint(1, dim_max)
        h = rng.randint(1, h_max)
        eig = [rng.randint(-5, 5) for _ in range(dim)]
        hs, es = symident.spectrum_symmetric(eig, h)
        direct = sum(Fraction(x) ** h for x in eig)
        via = symident.universal_trace(hs, es, h)
        newton = symident.universal_trace_from_powers([sum(Fraction(x) ** s for x in eig) for s in range(1, h)],
                                                      direct, h)
        if via != direct or newton != direct:
            failures.append({"kind": "spectrum", "eigenvalues": eig, "h": h, "direct": fmt_frac(direct),
                             "formula": fmt_frac(via)})
    for t in range(matrix_trials):
        dim = rng.randint(1, matrix_dim_max)
        h = rng.randint(1, matrix_h_max)
        M = [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(dim)]
        es = symident.matrix_elementary(M, h)
        hs = symident.complete_from_elementary(es, h)
        direct = symident.matrix_power_trace(M, h)
        via = symident.universal_trace(hs, es, h)
        if via != direct:
            failures.append({"kind": "matrix", "matrix": M, "h": h, "direct": direct, "formula": fmt_frac(via)})
    hs, es = symident.spectrum_symmetric([3], 2)
    demo = {"eigenvalues": [3], "h": 2, "direct": "9",
            "formula": fmt_frac(symident.universal_trace(hs, es, 2)),
            "alternative_sign": fmt_frac(symident.universal_trace(hs, es, 2, printed_sign=True))}
    return {"schema_version": SCHEMA_VERSION, "kind": "identity-check", "seed": seed,
            "spectra": {"trials": trials, "dim_max": dim_max, "h_max": h_max},
            "matrices": {"trials": matrix_trials, "dim_max": matrix_dim_max, "h_max": matrix_h_max,
                         "entries": [-3, 3]},
            "failures": failures, "all_pass": not failures, "sign_demo": demo}


def cmd_identity_check(h_max: int, dim_max: int, trials: int, **kw) -> tuple[dict, int]:
    rep = identity_check(h_max, dim_max, trials, **kw)
    demo = rep["sign_demo"]
    _say(f"{rep['spectra']['trials']} spectra, {rep['matrices']['trials']} matrices, "
         f"{len(rep['failures'])} failures",
         f"eigenvalue 3, h=2: direct {demo['direct']}, formula {demo['formula']}, "
         f"alternative sign {demo['alternative_sign']}")
    return rep, EXIT_OK if rep["all_pass"] else EXIT_INCONSISTENT


# -- search -----------------------------------------------------------------------


def random_equation(rng: random.Random, p: int, n: int, max_degree: int, max_terms: int) -> MultiPoly:
    """A random polynomial over F_p with a nonconstant term, at most ``max_terms`` terms."""
    spec = field_spec(p)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            exps = [0] * n
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(n)] += 1
            terms[tuple(exps)] = [rng.randint(1, p - 1)]
        f = MultiPoly(spec, n, terms)
        if not f.is_zero() and f.total_degree() > 0:
            return f


def search(config: dict, seed: int = 0) -> tuple[dict, int]:
    """Scan random sparse hypersurfaces against the configured d-tuples.

    Every instance whose classification is not Rational is logged with its
    variety file; NearRational outcomes are research events.
    """
    rng = random.Random(seed)
    primes = config.get("primes", [2])
    d_list = [tuple(d) for d in config.get("d", [])]
    instances = int(config.get("instances", 0))
    kmax = int(config.get("kmax", 4))
    max_order = int(config.get("max_order", DEFAULT_MAX_ORDER))
    degree = int(config.get("max_degree", 3))
    terms = int(config.get("max_terms", 4))
    budget = int(config.get("budget", MAIN_NODE_BUDGET))
    log, summary = [], {"Rational": 0, "NearRational": 0, "Inconclusive": 0, "error": 0}
    if not primes or not d_list:
        instances = 0
    for i in range(instances):
        p = rng.choice(primes)
        d = rng.choice(d_list)
        f = random_equation(rng, p, len(d), degree, terms)
        X = VarietySpec(field_spec(p), len(d), (f,), (), f"search seed={seed} item={i}")
        entry = {"item": i, "d": list(d), "kmax": kmax, "variety_file": format_variety(X),
                 "dividing_chain": is_dividing_chain(d)}
        try:
            rep, code = analyze_variety(X, d, kmax, max_order=max_order, node_budget=budget, faltings=False)
        except PartialZetaError as exc:
            summary["error"] += 1
            entry.update(kind="error", error=f"{type(exc).__name__}: {exc}")
            log.append(entry)
            continue
        verdict = rep["classification"]["verdict"]
        if code == EXIT_BUDGET:
            summary["error"] += 1
            entry.update(kind="error", error=rep["counts"]["budget"], counts=rep["counts"]["values"])
            log.append(entry)
            continue
        summary[verdict] += 1
        if verdict != "Rational":
            entry.update(kind="research_event" if verdict == "NearRational" else "inconclusive",
                         verdict=verdict, counts=rep["counts"]["values"], recurrence=rep["recurrence"],
                         classification=rep["classification"])
            log.append(entry)
    events = sum(1 for e in log if e["kind"] == "research_event")
    out = {"schema_version": SCHEMA_VERSION, "kind": "search", "seed": seed,
           "config": {"primes": primes, "d": [list(d) for d in d_list], "instances": instances, "kmax": kmax,
                      "max_order": max_order, "max_degree": degree, "max_terms": terms, "budget": budget},
           "summary": summary, "events": events, "log": log}
    return out, EXIT_EVENT if events else EXIT_OK


def cmd_search(config: dict, seed: int = 0) -> tuple[dict, int]:
    out, code = search(config, seed)
    _say(f"{out['config']['instances']} instances: {out['summary']}; research events: {out['events']}")
    return out, code


# -- argument handling ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="partialzeta", description="Partial zeta functions of varieties over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, kmax=True):
        sp.add_argument("file", help="variety file")
        sp.add_argument("--d", required=True, help="comma separated d_1,...,d_n")
        if kmax:
            sp.add_argument("--kmax", type=int, required=True)
        sp.add_argument("--budget", type=int, default=MAIN_NODE_BUDGET, help="node budget per count")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    common(sub.add_parser("count", help="partial counts for k = 1..kmax"))
    sp = sub.add_parser("analyze", help="counts, recurrence, roots, weights and all cross-checks")
    common(sp)
    sp.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    sp.add_argument("--oracle", action="store_true", help="also run the brute-force counter at every k")
    sp.add_argument("--no-faltings", action="store_true", help="skip the fixed-point cross-check")
    sp.add_argument("--y-budget", type=int, default=Y_BUDGET)
    sp.add_argument("--timings", action="store_true", help="add wall-clock timings (breaks byte stability)")
    sp = sub.add_parser("faltings-verify", help="partial count versus fixed points on the twisted product")
    common(sp, kmax=False)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--y-budget", type=int, default=Y_BUDGET)
    common(sub.add_parser("axkatz", help="check the ord_q lower bound on counts"))

    sp = sub.add_parser("search", help="scan random hypersurfaces for non-rational classifications")
    sp.add_argument("--config", help="JSON file with primes, d, instances, kmax, max_order, max_degree, "
                                     "max_terms, budget")
    sp.add_argument("--primes", default="2")
    sp.add_argument("--d", action="append", help="a d-tuple such as 2,3 (repeatable)")
    sp.add_argument("--instances", type=int, default=10)
    sp.add_argument("--kmax", type=int, default=4)
    sp.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("--max-terms", type=int, default=4)
    sp.add_argument("--budget", type=int, default=MAIN_NODE_BUDGET)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = sub.add_parser("identity-check", help="trace formula against direct traces")
    sp.add_argument("--hmax", type=int, default=6)
    sp.add_argument("--dim-max", type=int, default=6)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--matrix-trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    return ap


def _search_config(args) -> dict:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            return json.load(fh)
    primes = [int(v) for v in args.primes.split(",") if v.strip()]
    for p in primes:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    return {"primes": primes, "d": [list(parse_d(t)) for t in (args.d or [])], "instances": args.instances,
            "kmax": args.kmax, "max_order": args.max_order, "max_degree": args.max_degree,
            "max_terms": args.max_terms, "budget": args.budget}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "identity-check":
            report, code = cmd_identity_check(args.hmax, args.dim_max, args.trials,
                                              matrix_trials=args.matrix_trials, seed=args.seed)
        elif args.command == "search":
            report, code = cmd_search(_search_config(args), seed=args.seed)
        else:
            X = load_variety(args.file)
            d = parse_d(args.d)
            if args.command == "count":
                report, code = cmd_count(X, d, args.kmax, node_budget=args.budget)
            elif args.command == "analyze":
                report, code = cmd_analyze(X, d, args.kmax, max_order=args.max_order, node_budget=args.budget,
                                           oracle=args.oracle, faltings=not args.no_faltings,
                                           y_budget=args.y_budget, timings=args.timings)
            elif args.command == "faltings-verify":
                report, code = cmd_faltings_verify(X, d, args.k, y_budget=args.y_budget, node_budget=args.budget)
            else:
                report, code = cmd_axkatz(X, d, args.kmax, node_budget=args.budget)
    except (UsageError, PolySyntaxError, OSError, ValueError) as exc:
        name = "SyntaxError" if isinstance(exc, PolySyntaxError) else type(exc).__name__
        print(f"partialzeta: {name}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"partialzeta: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
