"""The full analysis of one partial count query, as a JSON-ready dict.

Everything here is deterministic: dict insertion order is fixed, exact
rationals are strings and floats are rounded to 12 significant digits.
Wall-clock timings are only added on request.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Sequence

from . import cfinite
from .counting import (MAIN_NODE_BUDGET, ORACLE_POINT_BUDGET, CountSeries, PartialCountQuery, VarietySpec,
                       count_partial, count_partial_bruteforce)
from .errors import BudgetExceeded, ConvergenceFailure, IllConditioned, InsufficientTerms
from .faltings import Y_BUDGET, fixed_points_sigma_frob
from .ffield import lcm
from .padic import verify_axkatz
from .series import log_derivative, zeta_series

SCHEMA_VERSION = 1
DEFAULT_MAX_ORDER = 24


def fmt_float(x: float):
    if x is None:
        return None
    if math.isinf(x) or math.isnan(x):
        return str(x)
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def fmt_frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_dividing_chain(d: Sequence[int]) -> bool:
    s = sorted(d)
    return all(b % a == 0 for a, b in zip(s, s[1:]))


def query_echo(X: VarietySpec, d, k_max: int | None = None) -> dict:
    out = {
        "label": X.label,
        "p": X.spec.p,
        "e": X.spec.e,
        "q": X.q,
        "n": X.n,
        "equations": [f"{eq} = 0" for eq in X.equations],
        "d": list(d),
        "lcm_d": lcm(d),
        "dividing_chain": is_dividing_chain(d),
    }
    if k_max is not None:
        out["k_max"] = k_max
    return out


def heuristic_diagnostic(X: VarietySpec, d: Sequence[int], counts: Sequence[int]) -> dict:
    """Error exponents log_q|N_k - q^(kE)|/k against the main term q^(kE).

    E is the sum of the d_i with one largest d_i removed, which for a dividing
    chain in increasing order is d_1 + ... + d_{n-1}.
    """
    if len(X.equations) != 1:
        return {"applicable": False, "reason": "only defined for a single equation"}
    E = sum(d) - max(d)
    q = X.q
    rows = []
    for k, N in enumerate(counts, start=1):
        diff = N - q ** (k * E)
        expo = None if diff == 0 else fmt_float(math.log(abs(diff)) / math.log(q) / k)
        rows.append({"k": k, "count": N, "main_term": q ** (k * E), "error_exponent": expo})
    return {"applicable": True, "main_exponent": E, "expected_error_exponent": fmt_float(E / 2), "rows": rows}


def _spectral_block(seq, rec, q, d):
    """Roots, coefficients, weights and classification; errors become report fields."""
    out: dict = {}
    try:
        roots = cfinite.char_roots(rec)
        data = cfinite.solve_coefficients(seq, roots)
    except (ConvergenceFailure, IllConditioned, InsufficientTerms) as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        out["roots"] = []
        out["classification"] = {"verdict": "Inconclusive", "reason": out["error"]}
        out["rh"] = {"all_pass": False}
        return out
    weights = cfinite.rh_check(roots, q)
    out["roots"] = [{"re": fmt_float(r.value.real), "im": fmt_float(r.value.imag), "modulus": fmt_float(r.modulus),
                     "multiplicity": r.multiplicity, "flagged": r.flagged, "weight": w.weight, "rh_pass": w.passed}
                    for r, w in zip(roots, weights)]
    live = [r for r in roots if r.value != 0]
    out["coefficients"] = [{"root": j, "power_of_k": t, "re": fmt_float(c.real), "im": fmt_float(c.imag)}
                           for (j, t), c in zip(data.layout, data.coefficients)]
    out["fit"] = {"residual": fmt_float(data.residual), "condition": fmt_float(data.condition),
                  "roots_fitted": len(live)}
    cls = cfinite.classify(data.coefficients, d)
    out["classification"] = {"verdict": cls.verdict,
                             "witnesses": [list(w) for w in cls.witnesses] if cls.witnesses else None}
    out["rh"] = {"all_pass": all(w.passed for w in weights)}
    return out


def analyze_variety(X: VarietySpec, d: Sequence[int], k_max: int, *, max_order: int = DEFAULT_MAX_ORDER,
                    node_budget: int = MAIN_NODE_BUDGET, oracle: bool = False, faltings: bool = True,
                    y_budget: int = Y_BUDGET, oracle_budget: int = ORACLE_POINT_BUDGET,
                    timings: bool = False) -> tuple[dict, int]:
    """Run the whole pipeline; returns (report, exit code).

    Exit code 2 means the counts stopped at a budget (the report is partial),
    3 means a checked identity or bound failed.
    """
    d = tuple(int(v) for v in d)
    query = PartialCountQuery(d, k_max)
    clock: dict[str, float] = {}
    report: dict = {"schema_version": SCHEMA_VERSION, "kind": "analysis", "query": query_echo(X, d, k_max)}
    report["query"]["max_order"] = max_order
    report["budgets"] = {"nodes": node_budget, "y_tuples": y_budget, "oracle_points": oracle_budget}
    exit_code = 0

    t0 = time.perf_counter()
    values: list[int] = []
    nodes: list[int] = []
    budget_note = None
    for k in range(1, k_max + 1):
        stats: dict = {}
        try:
            values.append(count_partial(X, d, k, node_budget=node_budget, stats=stats))
            nodes.append(stats.get("nodes", 0))
        except BudgetExceeded as exc:
            budget_note = f"stopped before k={k}: {exc}"
            exit_code = 2
            break
    clock["count"] = time.perf_counter() - t0
    series = CountSeries(query, values, nodes)
    report["counts"] = {"values": values, "nodes": nodes, "complete": series.complete, "budget": budget_note}
    if budget_note:
        report["partial"] = True

    if values:
        Z = zeta_series(values)
        back = log_derivative(Z).coefficients[1:]
        report["zeta"] = {"coefficients": [fmt_frac(c) for c in Z.coefficients],
                          "integral": Z.is_integral(), "log_derivative_roundtrip": list(back) == values}
    else:
        report["zeta"] = None

    # recurrence
    t0 = time.perf_counter()
    K = len(values)
    used = min(max_order, (K - 2) // 2)
    rec_block: dict = {"requested_max_order": max_order, "max_order_used": max(used, 0)}
    rec = None
    if used < 1:
        rec_block.update(status="not_found", diagnosis=f"insufficient terms: {K} counts cannot certify a "
                                                       "recurrence of order 1 (need at least 4)")
    else:
        rec = cfinite.min_recurrence(values, used)
        if rec is None:
            rec_block.update(status="not_found",
                             diagnosis=f"insufficient terms: no recurrence of order <= {used} fits {K} counts; "
                                       f"order L needs at least 2L+2 terms")
        else:
            rec_block.update(status="found", order=rec.order,
                             coefficients=[fmt_frac(c) for c in rec.coefficients],
                             charpoly=[fmt_frac(c) for c in rec.charpoly])
    report["recurrence"] = rec_block
    if rec is not None:
        spec_block = _spectral_block(values, rec, X.q, lcm(d))
    else:
        spec_block = {"roots": [], "classification": {"verdict": "Inconclusive", "reason": "no recurrence"},
                      "rh": {"all_pass": None}}
    report.update(spec_block)
    clock["spectral"] = time.perf_counter() - t0

    # Ax-Katz on the counts already in hand
    if values:
        ak = verify_axkatz(X, d, range(1, K + 1), counts=values)
    else:
        ak = {"applicable": False, "reason": "no counts", "holds": True, "checks": []}
    report["axkatz"] = ak

    # Faltings cross-check at k = 1
    t0 = time.perf_counter()
    if faltings and values:
        try:
            fp = fixed_points_sigma_frob(X, d, 1, budget=y_budget)
            report["faltings"] = {"k": 1, "status": "match" if fp == values[0] else "mismatch",
                                  "fixed_points": fp, "count": values[0]}
        except BudgetExceeded as exc:
            report["faltings"] = {"k": 1, "status": "skipped", "reason": str(exc)}
    else:
        report["faltings"] = {"k": 1, "status": "skipped", "reason": "disabled" if not faltings else "no counts"}
    clock["faltings"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if oracle:
        rows = []
        for k, N in enumerate(values, start=1):
            try:
                b = count_partial_bruteforce(X, d, k, point_budget=oracle_budget)
                rows.append({"k": k, "status": "match" if b == N else "mismatch", "oracle": b})
            except BudgetExceeded as exc:
                rows.append({"k": k, "status": "skipped", "reason": str(exc)})
        report["oracle"] = rows
    clock["oracle"] = time.perf_counter() - t0

    report["heuristic"] = heuristic_diagnostic(X, d, values)

    inconsistent = (not ak["holds"]) or report["faltings"]["status"] == "mismatch" or \
        any(r["status"] == "mismatch" for r in report.get("oracle", []))
    report["verdicts"] = {
        "recurrence_found": rec is not None,
        "classification": report["classification"]["verdict"],
        "rh_all_pass": report["rh"]["all_pass"],
        "axkatz_holds": ak["holds"],
        "faltings": report["faltings"]["status"],
        "consistent": not inconsistent,
    }
    if inconsistent:
        exit_code = 3
    if timings:
        report["timings"] = {k: fmt_float(v) for k, v in clock.items()}
    return report, exit_code
