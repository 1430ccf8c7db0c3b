"""Fixed points of sigma o Frob^k on the twisted product Y(d_1..d_n, X).

Y sits inside the d-fold product X^d (d = lcm of the d_i) and is cut out by
y_{i,j} = y_{i,j+d_i}, indices taken as the smallest positive residue mod d.
sigma is the cyclic shift of the d components.  Points of Y are enumerated
over the ambient F_{q^{k d}}, which contains every fixed point of
sigma o Frob^k (iterating y_{i,j}^{q^k} = y_{i,j+1} d_i times gives
y_{i,j}^{q^{d_i k}} = y_{i,j}).

Internally a point of Y is a row of d indices into the array of ambient
points of X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .counting import MAIN_NODE_BUDGET, VarietySpec, rational_points
from .errors import BudgetExceeded
from .ffield import AmbientField, FieldElement, build_ambient, lcm

Y_BUDGET = 10 ** 7


@dataclass(frozen=True)
class TwistedPoint:
    """A tuple (y_1, ..., y_d) of points of X in a common ambient field."""

    components: tuple[tuple[FieldElement, ...], ...]

    @property
    def d(self):
        return len(self.components)


def sigma(y: TwistedPoint) -> TwistedPoint:
    """(y_1, ..., y_d) -> (y_d, y_1, ..., y_{d-1})."""
    c = y.components
    return TwistedPoint(c[-1:] + c[:-1])


def shift_index(j: int, di: int, d: int) -> int:
    """j + d_i reduced to the smallest positive residue mod d (1-based)."""
    return (j + di - 1) % d + 1


def on_Y(X: VarietySpec, dvec: Sequence[int], y: TwistedPoint) -> bool:
    from .poly import evaluate

    d = lcm(dvec)
    if y.d != d:
        return False
    for comp in y.components:
        F = comp[0].field
        if any(not evaluate(eq, comp, F).is_zero() for eq in X.equations):
            return False
    for i, di in enumerate(dvec):
        for j in range(1, d + 1):
            if y.components[j - 1][i] != y.components[shift_index(j, di, d) - 1][i]:
                return False
    return True


def enumerate_Y(X: VarietySpec, dvec: Sequence[int], k: int, *, budget: int = Y_BUDGET,
                node_budget: int = MAIN_NODE_BUDGET):
    """Points of Y with coordinates in F_{q^{k d}}.

    Returns (F, P, rows): the ambient field, the (N, n) array of ambient points
    of X, and a (|Y|, d) array of indices into P.
    """
    dvec = tuple(int(v) for v in dvec)
    if len(dvec) != X.n:
        raise ValueError(f"need {X.n} values d_i, got {len(dvec)}")
    d = lcm(dvec)
    F = build_ambient(X.spec, k * d)
    P = rational_points(X, F, node_budget=node_budget)
    rows = np.arange(len(P), dtype=np.int64).reshape(-1, 1)
    for j in range(2, d + 1):
        # coordinate i of y_j is forced to that of y_{j-d_i} once j > d_i
        forced = [i for i, di in enumerate(dvec) if j > di]
        if not forced:
            counts = np.full(len(rows), len(P), dtype=np.int64)
            total = int(counts.sum())
            if total > budget:
                raise BudgetExceeded(f"Y enumeration exceeded {budget} tuples", bound=total, limit=budget)
            new = np.empty((total, j), dtype=np.int64)
            new[:, :-1] = np.repeat(rows, len(P), axis=0)
            new[:, -1] = np.tile(np.arange(len(P)), len(rows))
            rows = new
            continue
        src = np.stack([P[rows[:, j - dvec[i] - 1], i] for i in forced], axis=1)
        pkeys = P[:, forced]
        allkeys = np.concatenate([pkeys, src])
        _, inverse = np.unique(allkeys, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        p_gid, r_gid = inverse[:len(P)], inverse[len(P):]
        ngroups = int(inverse.max()) + 1 if len(inverse) else 0
        gcount = np.bincount(p_gid, minlength=ngroups)
        order = np.argsort(p_gid, kind="stable")
        gstart = np.concatenate([[0], np.cumsum(gcount)[:-1]])
        cnt = gcount[r_gid]
        total = int(cnt.sum())
        if total > budget:
            raise BudgetExceeded(f"Y enumeration exceeded {budget} tuples", bound=total, limit=budget)
        rep = np.repeat(np.arange(len(rows)), cnt)
        offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        new = np.empty((total, j), dtype=np.int64)
        new[:, :-1] = rows[rep]
        new[:, -1] = order[gstart[r_gid[rep]] + offs]
        rows = new
    return F, P, rows


def _fixed_mask(F: AmbientField, P: np.ndarray, rows: np.ndarray, k: int) -> np.ndarray:
    """sigma o Frob^k (y) == y  <=>  y_{i,j}^{q^k} == y_{i,j+1} for all i, j (cyclic)."""
    if not len(rows):
        return np.zeros(0, dtype=bool)
    coords = P[rows]                          # (|Y|, d, n)
    frob = F.vpow(coords, F.spec.q ** k)
    nxt = np.roll(coords, -1, axis=1)
    return np.all(frob == nxt, axis=(1, 2))


def fixed_points_sigma_frob(X: VarietySpec, dvec: Sequence[int], k: int, *, budget: int = Y_BUDGET) -> int:
    """Number of fixed points of sigma o Frob^k on Y, from full tuple enumeration."""
    F, P, rows = enumerate_Y(X, dvec, k, budget=budget)
    return int(_fixed_mask(F, P, rows, k).sum())


def twisted_point(F: AmbientField, P: np.ndarray, row: Sequence[int]) -> TwistedPoint:
    return TwistedPoint(tuple(tuple(F.from_index(int(v)) for v in P[r]) for r in row))


def verify_y_membership(X: VarietySpec, dvec: Sequence[int], k: int = 1, *, budget: int = Y_BUDGET) -> dict:
    """Structural checks on Y over F_{q^{k d}}.

    * sigma maps Y to Y;
    * every fixed point of sigma o Frob^k has y_1 in X_{d_1..d_n}(k, X);
    * distinct fixed points have distinct y_1;
    * the fixed points' y_1 are exactly the partial points of X.
    """
    dvec = tuple(int(v) for v in dvec)
    F, P, rows = enumerate_Y(X, dvec, k, budget=budget)
    present = {tuple(r) for r in rows.tolist()}
    rotated = np.roll(rows, 1, axis=1)
    sigma_stable = all(tuple(r) in present for r in rotated.tolist())
    fixed = rows[_fixed_mask(F, P, rows, k)]
    first = P[fixed[:, 0]] if len(fixed) else np.zeros((0, X.n), dtype=np.int64)
    in_sub = np.ones(len(first), dtype=bool)
    for i, di in enumerate(dvec):
        in_sub &= F.v_in_subfield(first[:, i], di * k)
    partial = np.ones(len(P), dtype=bool)
    for i, di in enumerate(dvec):
        partial &= F.v_in_subfield(P[:, i], di * k)
    first_ids = set(fixed[:, 0].tolist())
    return {
        "ambient_degree": k * lcm(dvec),
        "points_of_X": int(len(P)),
        "points_of_Y": int(len(rows)),
        "sigma_stable": bool(sigma_stable),
        "fixed_points": int(len(fixed)),
        "first_components_in_partial_set": bool(in_sub.all()),
        "first_components_distinct": len(first_ids) == len(fixed),
        "first_components_exhaust_partial_set": first_ids == set(np.nonzero(partial)[0].tolist()),
    }
