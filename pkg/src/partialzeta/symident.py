"""Newton's identities and the trace formula for Tr(phi^h) in terms of Sym/wedge.

For a linear map phi with eigenvalues l_1..l_r write p_s = sum l_i^s (power
sums, i.e. Tr(phi^s)), h_s = Tr(phi | Sym^s V) (complete homogeneous) and
e_t = Tr(phi | wedge^t V) (elementary).  From P(T) = T H'(T) E(-T) one gets

    Tr(phi^h) = sum_{s=1}^h (-1)^(h-s) * s * h_s * e_{h-s}.

The printed variant with sign (-1)^(s-1) differs by the global factor
(-1)^(h-1); :func:`universal_trace` can evaluate either.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod
from typing import Sequence


def power_to_complete(p: Sequence) -> list[Fraction]:
    """h_1..h_H from p_1..p_H via s h_s = sum_{i=1}^s h_{s-i} p_i."""
    p = [Fraction(v) for v in p]
    h = [Fraction(1)]
    for s in range(1, len(p) + 1):
        h.append(sum((h[s - i] * p[i - 1] for i in range(1, s + 1)), Fraction(0)) / s)
    return h[1:]


def power_to_elementary(p: Sequence) -> list[Fraction]:
    """e_1..e_H from p_1..p_H via s e_s = sum_{i=1}^s (-1)^(i-1) e_{s-i} p_i."""
    p = [Fraction(v) for v in p]
    e = [Fraction(1)]
    for s in range(1, len(p) + 1):
        e.append(sum(((-1) ** (i - 1) * e[s - i] * p[i - 1] for i in range(1, s + 1)), Fraction(0)) / s)
    return e[1:]


def complete_to_power(h: Sequence) -> list[Fraction]:
    """Inverse of :func:`power_to_complete`."""
    h = [Fraction(1)] + [Fraction(v) for v in h]
    p = []
    for s in range(1, len(h)):
        p.append(s * h[s] - sum((h[s - i] * p[i - 1] for i in range(1, s)), Fraction(0)))
    return p


def elementary_to_power(e: Sequence) -> list[Fraction]:
    """Inverse of :func:`power_to_elementary`."""
    e = [Fraction(1)] + [Fraction(v) for v in e]
    p = []
    for s in range(1, len(e)):
        acc = s * e[s] - sum(((-1) ** (i - 1) * e[s - i] * p[i - 1] for i in range(1, s)), Fraction(0))
        p.append((-1) ** (s - 1) * acc)
    return p


def universal_trace(complete: Sequence, elementary: Sequence, h: int, *, printed_sign: bool = False) -> Fraction:
    """Tr(phi^h) from complete[s] = Tr(phi|Sym^s V) and elementary[t] = Tr(phi|wedge^t V).

    ``complete`` and ``elementary`` are indexed from 0 (entry 0 is 1) and must
    reach index h and h-1 respectively.  With ``printed_sign`` the sign
    (-1)^(s-1) is used instead of (-1)^(h-s).
    """
    if h < 1:
        raise ValueError("h must be positive")
    total = Fraction(0)
    for s in range(1, h + 1):
        sign = (-1) ** (s - 1) if printed_sign else (-1) ** (h - s)
        total += sign * s * Fraction(complete[s]) * Fraction(elementary[h - s])
    return total


def universal_trace_from_powers(p_lower: Sequence, p_h, h: int, **kw) -> Fraction:
    """Run the formula on Sym/wedge traces generated from p_1..p_h by Newton's recurrences."""
    p = list(p_lower) + [p_h]
    if len(p) != h:
        raise ValueError("need p_1..p_{h-1} plus p_h")
    hs = [Fraction(1)] + power_to_complete(p)
    es = [Fraction(1)] + power_to_elementary(p)
    return universal_trace(hs, es, h, **kw)


# -- oracles --------------------------------------------------------------------


def spectrum_symmetric(eigenvalues: Sequence, top: int) -> tuple[list[Fraction], list[Fraction]]:
    """(h_0..h_top, e_0..e_top) by direct enumeration of multisets and subsets."""
    eig = [Fraction(v) for v in eigenvalues]
    hs = [sum((prod(c, start=Fraction(1)) for c in itertools.combinations_with_replacement(eig, s)), Fraction(0))
          for s in range(top + 1)]
    es = [sum((prod(c, start=Fraction(1)) for c in itertools.combinations(eig, t)), Fraction(0))
          for t in range(top + 1)]
    return hs, es


def _det(M):
    M = [[Fraction(v) for v in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def matrix_elementary(M: Sequence[Sequence[int]], top: int) -> list[Fraction]:
    """e_0..e_top of a square matrix: sums of principal minors."""
    n = len(M)
    out = [Fraction(1)]
    for t in range(1, top + 1):
        if t > n:
            out.append(Fraction(0))
            continue
        out.append(sum((_det([[M[i][j] for j in S] for i in S]) for S in itertools.combinations(range(n), t)),
                       Fraction(0)))
    return out


def complete_from_elementary(e: Sequence, top: int) -> list[Fraction]:
    """h_0..h_top from H(T) E(-T) = 1."""
    e = [Fraction(v) for v in e] + [Fraction(0)] * (top + 1)
    h = [Fraction(1)]
    for t in range(1, top + 1):
        h.append(sum(((-1) ** (s - 1) * e[s] * h[t - s] for s in range(1, t + 1)), Fraction(0)))
    return h


def matrix_power_trace(M: Sequence[Sequence[int]], h: int) -> int:
    n = len(M)
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(h):
        P = [[sum(P[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return sum(P[i][i] for i in range(n))
