"""The Ax-Katz type lower bound on ord_q of partial counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ZeroDegree
from .ffield import lcm


@dataclass(frozen=True)
class AxKatzInput:
    d: tuple[int, ...]
    degrees: tuple[int, ...]
    p: int
    e: int = 1

    @property
    def lcm_d(self) -> int:
        return lcm(self.d)


def mu(inp: AxKatzInput) -> int:
    """Smallest nonnegative integer >= (sum d_i - lcm * sum D_j) / max D_j."""
    if not inp.degrees:
        raise ValueError("the bound needs at least one equation")
    if any(D <= 0 for D in inp.degrees):
        raise ZeroDegree("equation degrees must be positive")
    num = sum(inp.d) - inp.lcm_d * sum(inp.degrees)
    return max(0, -((-num) // max(inp.degrees)))


def ord_q(N: int, p: int, e: int = 1):
    """v_p(N) / e as a Fraction, or math.inf for N = 0."""
    if N == 0:
        return math.inf
    N = abs(N)
    v = 0
    while N % p == 0:
        N //= p
        v += 1
    return Fraction(v, e)


def verify_axkatz(X, d: Sequence[int], k_range, *, counts: Sequence[int] | None = None, **count_kw) -> dict:
    """Check ord_q N_k >= k mu over ``k_range``; counts are computed unless supplied.

    Varieties without equations get ``applicable: False``.
    """
    from .counting import count_partial

    d = tuple(int(v) for v in d)
    ks = list(k_range)
    if not X.equations:
        return {"applicable": False, "reason": "no equations (empty degree list)", "holds": True, "checks": []}
    inp = AxKatzInput(d, tuple(eq.total_degree() for eq in X.equations), X.spec.p, X.spec.e)
    if counts is None:
        counts = [count_partial(X, d, k, **count_kw) for k in ks]
    if 0 in inp.degrees:
        # a nonzero constant equation: X is empty, so the only thing to check is N_k = 0
        rows = [{"k": k, "count": int(N), "holds": N == 0} for k, N in zip(ks, counts)]
        return {"applicable": False, "reason": "constant equation (degree 0); X is empty", "checks": rows,
                "holds": all(r["holds"] for r in rows)}
    m = mu(inp)
    rows = []
    for k, N in zip(ks, counts):
        v = ord_q(N, inp.p, inp.e)
        rows.append({"k": k, "count": int(N), "ord_q": "inf" if v == math.inf else str(v),
                     "bound": k * m, "holds": v >= k * m})
    return {"applicable": True, "mu": m, "degrees": list(inp.degrees), "checks": rows,
            "holds": all(r["holds"] for r in rows)}
