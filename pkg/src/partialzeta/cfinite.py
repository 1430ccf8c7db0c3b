"""Linear recurrences for count sequences: detection, roots, weights, classification.

Detection and extrapolation are exact (Fractions).  Root finding and the
coefficient solve run in mpmath at raised precision with explicit tolerances.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import (ConvergenceFailure, IllConditioned, InsufficientTerms,
                     NonIntegerPrediction)
from .series import QSeries

ROOT_RESIDUAL = 1e-12
CLUSTER_TOL = 1e-8
COEFF_RESIDUAL = 1e-9
CLASSIFY_TOL = 1e-6
RH_REL_TOL = 1e-6
CYCLOTOMIC_CAP = 64
WORK_DPS = 80
SEARCH_LIMIT = 200_000


@dataclass(frozen=True)
class Recurrence:
    """N_k = c_1 N_{k-1} + ... + c_L N_{k-L}."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def charpoly(self) -> tuple[Fraction, ...]:
        """Monic x^L - c_1 x^{L-1} - ... - c_L, highest degree first."""
        return (Fraction(1),) + tuple(-c for c in self.coefficients)

    def fits(self, seq: Sequence) -> bool:
        L = self.order
        return all(seq[n] == sum(c * seq[n - 1 - i] for i, c in enumerate(self.coefficients))
                   for n in range(L, len(seq)))


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int = 1
    flagged: bool = False  # merged from numerically close roots or repeated in the exact factorization

    @property
    def modulus(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class RHVerdict:
    weight: int | None
    passed: bool
    modulus: float
    reason: str = ""


@dataclass
class SpectralData:
    """Roots with multiplicities, the solved coefficients and the per-root weights.

    ``layout[i] = (j, t)`` says coefficient i multiplies k^t gamma_j^k.
    """

    roots: list[Root]
    coefficients: list[complex]
    layout: list[tuple[int, int]]
    residual: float
    condition: float
    weights: list[RHVerdict] = field(default_factory=list)


@dataclass(frozen=True)
class RationalFn:
    """numerator / denominator, both with constant term 1, lowest degree first."""

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]


@dataclass(frozen=True)
class Classification:
    verdict: str  # "Rational" | "NearRational" | "Inconclusive"
    witnesses: tuple | None = None  # integer vectors over {1, z, z^2, ...}, one per coefficient
    raw: tuple[complex, ...] = ()


# -- detection --------------------------------------------------------------------


def _berlekamp_massey(seq: Sequence[Fraction]) -> tuple[int, list[Fraction]]:
    """Minimal connection polynomial C (C[0] = 1) with sum_i C_i s_{n-i} = 0 for n >= L."""
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(seq)):
        delta = seq[n] + sum((C[i] * seq[n - i] for i in range(1, L + 1)), Fraction(0))
        if delta == 0:
            m += 1
            continue
        coef = delta / b
        newC = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, v in enumerate(B):
            newC[i + m] -= coef * v
        if 2 * L <= n:
            B, b, L, m = C, delta, n + 1 - L, 1
        else:
            m += 1
        C = newC
    C = C + [Fraction(0)] * (L + 1 - len(C))
    return L, C[:L + 1]


def min_recurrence(seq: Sequence[int], max_order: int) -> Recurrence | None:
    """Minimal recurrence of order <= max_order fitting every term, or None."""
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if len(seq) < 2 * max_order + 2:
        raise InsufficientTerms(f"{len(seq)} terms cannot certify order {max_order}; "
                                f"need at least {2 * max_order + 2}")
    s = [Fraction(v) for v in seq]
    L, C = _berlekamp_massey(s)
    if L > max_order:
        return None
    rec = Recurrence(tuple(-c for c in C[1:]))
    if not rec.fits(s):
        return None
    return rec


def predict(rec: Recurrence, seq: Sequence[int], k: int) -> int:
    """N_k (1-based) by running the recurrence forward from the supplied terms."""
    vals = [Fraction(v) for v in seq]
    if k <= len(vals):
        raise ValueError(f"k={k} is inside the supplied window of {len(vals)} terms")
    if len(vals) < rec.order:
        raise InsufficientTerms("fewer terms than the recurrence order")
    while len(vals) < k:
        nxt = sum((c * vals[-1 - i] for i, c in enumerate(rec.coefficients)), Fraction(0))
        if nxt.denominator != 1:
            raise NonIntegerPrediction(f"term {len(vals) + 1} extrapolates to {nxt}; the window is too short "
                                       "or the recurrence is wrong")
        vals.append(nxt)
    return int(vals[k - 1])


# -- rational reconstruction ------------------------------------------------------------


def solve_exact(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One solution of A x = b over Q (free variables 0), or None if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def _trim(p: list[Fraction]) -> tuple[Fraction, ...]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def pade_reconstruct(Z: QSeries, L: int, M: int) -> RationalFn | None:
    """P/Q with deg P <= L, deg Q <= M, Q(0) = 1 matching Z; every surplus term must agree."""
    a = [Fraction(c) for c in Z.coefficients]
    K = len(a) - 1
    if L + M >= K:
        raise InsufficientTerms(f"L+M={L + M} leaves no surplus in a series of order {K}")

    def coef(i):
        return a[i] if i >= 0 else Fraction(0)

    if M:
        A = [[coef(i - j) for j in range(1, M + 1)] for i in range(L + 1, L + M + 1)]
        rhs = [-coef(i) for i in range(L + 1, L + M + 1)]
        qs = solve_exact(A, rhs)
        if qs is None:
            return None
    else:
        qs = []
    Q = [Fraction(1)] + qs
    P = [sum((Q[j] * coef(i - j) for j in range(0, min(i, M) + 1)), Fraction(0)) for i in range(L + 1)]
    for i in range(L + 1, K + 1):
        if sum((Q[j] * coef(i - j) for j in range(0, M + 1)), Fraction(0)) != 0:
            return None
    return RationalFn(_trim(P), _trim(Q))


# -- exact polynomial helpers over Q (lowest degree first) -------------------------------


def _qtrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qdivmod(a, b):
    a = _qtrim(a)
    b = _qtrim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        f = r[-1] / b[-1]
        s = len(r) - len(b)
        q[s] = f
        for i, v in enumerate(b):
            r[s + i] -= f * v
        r = _qtrim(r)
    return _qtrim(q), r


def _qmonic(a):
    return [v / a[-1] for v in a] if a else a


def _qgcd(a, b):
    a, b = _qtrim(a), _qtrim(b)
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return _qmonic(a)


def _qderiv(a):
    return _qtrim([i * a[i] for i in range(1, len(a))])


def squarefree_decomposition(f) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: [(g_i, i)] with f = lc * prod g_i^i, g_i squarefree and coprime."""
    f = _qmonic(_qtrim([Fraction(v) for v in f]))
    if len(f) <= 1:
        return []
    out = []
    c = _qgcd(f, _qderiv(f))
    w = _qdivmod(f, c)[0]
    y = _qdivmod(_qderiv(f), c)[0]
    z = _qsub(y, _qderiv(w))
    i = 1
    while len(w) > 1:
        g = _qgcd(w, z)
        if len(g) > 1:
            out.append((g, i))
        w = _qdivmod(w, g)[0]
        y = _qdivmod(z, g)[0]
        z = _qsub(y, _qderiv(w))
        i += 1
    return out


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _relative_residual(coeffs_high, z) -> float:
    val = mpmath.polyval(coeffs_high, z)
    scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(reversed(coeffs_high)))
    return float(abs(val) / scale) if scale else float(abs(val))


def char_roots(rec: Recurrence, precision_target: float = ROOT_RESIDUAL,
               cluster_tol: float = CLUSTER_TOL) -> list[Root]:
    """Roots of the characteristic polynomial with multiplicity.

    The polynomial is first split into squarefree parts exactly, so repeated
    roots come out with their true multiplicity; each part is solved
    numerically and every root is checked against its residual.
    """
    if rec.order == 0:
        return []
    low_first = list(reversed(rec.charpoly))
    found: list[Root] = []
    with mpmath.workdps(WORK_DPS):
        for g, mult in squarefree_decomposition(low_first):
            high = [_mp(c) for c in reversed(g)]
            if len(high) == 2:
                zs = [-high[1] / high[0]]
            else:
                try:
                    zs = mpmath.polyroots(high, maxsteps=400, extraprec=2 * WORK_DPS)
                except mpmath.libmp.NoConvergence as exc:
                    raise ConvergenceFailure(f"root finder did not converge on a degree {len(high) - 1} factor") from exc
            for z in zs:
                res = _relative_residual(high, z)
                if res > precision_target:
                    raise ConvergenceFailure(f"root {complex(z)} has relative residual {res:.3g}")
                found.append(Root(complex(z), mult, mult > 1))
    # merge numerically indistinguishable roots
    merged: list[Root] = []
    for r in sorted(found, key=lambda r: (round(r.value.real, 9), round(r.value.imag, 9))):
        for i, m in enumerate(merged):
            if abs(m.value - r.value) <= cluster_tol * max(1.0, abs(m.value)):
                merged[i] = Root(m.value, m.multiplicity + r.multiplicity, True)
                break
        else:
            merged.append(r)
    return merged


# -- coefficients ----------------------------------------------------------------------


def solve_coefficients(seq: Sequence[int], roots: Sequence[Root], *, tol: float = COEFF_RESIDUAL,
                       cond_limit: float = 1e40) -> SpectralData:
    """Least-squares solve of N_k = sum_j P_j(k) gamma_j^k, deg P_j < multiplicity.

    A root at 0 only contributes to the first few terms; those terms are
    excluded from the fit rather than modelled.
    """
    zero_mult = sum(r.multiplicity for r in roots if r.value == 0)
    live = [r for r in roots if r.value != 0]
    layout = [(j, t) for j, r in enumerate(live) for t in range(r.multiplicity)]
    ks = list(range(zero_mult + 1, len(seq) + 1))
    if len(ks) < len(layout):
        raise InsufficientTerms("fewer usable terms than unknown coefficients")
    if not layout:
        resid = max((abs(seq[k - 1]) for k in ks), default=0)
        if resid:
            raise IllConditioned(f"no nonzero roots but terms are nonzero (residual {resid})")
        return SpectralData(list(roots), [], [], 0.0, 1.0)
    with mpmath.workdps(WORK_DPS):
        gam = [mpmath.mpc(r.value.real, r.value.imag) for r in live]
        cols = []
        for j, t in layout:
            col = [mpmath.mpf(k) ** t * gam[j] ** k for k in ks]
            scale = max(abs(v) for v in col)
            cols.append((col, scale))
        A = mpmath.matrix(len(ks), len(layout))
        for c, (col, scale) in enumerate(cols):
            for i, v in enumerate(col):
                A[i, c] = v / scale
        b = mpmath.matrix([mpmath.mpf(int(seq[k - 1])) for k in ks])
        svals = mpmath.svd_c(A, compute_uv=False)
        smax = max(abs(s) for s in svals)
        smin = min(abs(s) for s in svals)
        cond = float(smax / smin) if smin else math.inf
        if cond > cond_limit:
            raise IllConditioned(f"Vandermonde condition estimate {cond:.3g} exceeds {cond_limit:.3g}")
        AH = A.transpose_conj()
        x = mpmath.lu_solve(AH * A, AH * b)
        coeffs = [x[c] / cols[c][1] for c in range(len(layout))]
        resid = 0.0
        for i, k in enumerate(ks):
            approx = sum(coeffs[c] * mpmath.mpf(k) ** t * gam[j] ** k for c, (j, t) in enumerate(layout))
            err = abs(approx - b[i]) / max(1, abs(b[i]))
            resid = max(resid, float(err))
    if resid > tol:
        raise IllConditioned(f"reconstruction residual {resid:.3g} exceeds {tol:.3g}")
    return SpectralData(list(roots), [complex(c) for c in coeffs], layout, resid, cond)


# -- weights ---------------------------------------------------------------------------


def rh_check(roots: Sequence, q: int, rel_tol: float = RH_REL_TOL) -> list[RHVerdict]:
    """Each root must have |gamma| = q^(w/2) for an integer w >= 0."""
    if q < 2:
        raise ValueError("q must be at least 2")
    out = []
    for r in roots:
        z = r.value if isinstance(r, Root) else complex(r)
        mod = abs(z)
        if mod == 0:
            out.append(RHVerdict(None, False, 0.0, "zero root"))
            continue
        w = round(2 * math.log(mod) / math.log(q))
        target = q ** (w / 2)
        if w < 0:
            out.append(RHVerdict(w, False, mod, "negative weight"))
        elif abs(mod - target) > rel_tol * target:
            out.append(RHVerdict(None, False, mod, f"|root| = {mod:.12g} is not a power of sqrt({q})"))
        else:
            out.append(RHVerdict(w, True, mod))
    return out


# -- classification --------------------------------------------------------------------


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _near_int(x: float, tol: float) -> int | None:
    r = round(x)
    return int(r) if abs(x - r) <= tol else None


def _cyclotomic_witness(c: complex, d: int, tol: float, cap: int) -> tuple[int, ...] | None:
    """Integers a_0..a_{phi(d)-1}, |a_t| <= cap, with |c - sum a_t z^t| <= tol, z = exp(2 pi i/d)."""
    phi = euler_phi(d)
    z = cmath.exp(2j * math.pi / d)
    if phi == 1:
        a0 = _near_int(c.real, tol) if abs(c.imag) <= tol else None
        return (a0,) if a0 is not None and abs(a0) <= cap else None
    # a_0 and a_1 are determined by the remainder; search the rest by growing radius
    s = z.imag
    tried = 0
    for radius in range(cap + 1):
        for tail in itertools.product(range(-radius, radius + 1), repeat=phi - 2):
            if tail and max(abs(v) for v in tail) != radius:
                continue
            if not tail and radius:
                return None
            tried += 1
            if tried > SEARCH_LIMIT:
                return None
            rem = c - sum(a * z ** (t + 2) for t, a in enumerate(tail))
            a1 = round(rem.imag / s)
            a0 = round(rem.real - a1 * z.real)
            if abs(a0) > cap or abs(a1) > cap:
                continue
            if abs(rem - (a0 + a1 * z)) <= tol:
                return (int(a0), int(a1)) + tuple(tail)
    return None


def classify(coefficients: Sequence[complex], d: int, *, tol: float = CLASSIFY_TOL,
             cap: int = CYCLOTOMIC_CAP) -> Classification:
    """Rational if every c_j is an integer; NearRational if all lie in Z[zeta_d]."""
    cs = tuple(complex(c) for c in coefficients)
    ints = [_near_int(c.real, tol) if abs(c.imag) <= tol else None for c in cs]
    if all(v is not None for v in ints):
        return Classification("Rational", tuple((v,) for v in ints), cs)
    wit = [_cyclotomic_witness(c, d, tol, cap) for c in cs]
    if all(w is not None for w in wit):
        return Classification("NearRational", tuple(wit), cs)
    return Classification("Inconclusive", None, cs)


def spectral_analysis(seq: Sequence[int], rec: Recurrence, q: int, **kw) -> SpectralData:
    roots = char_roots(rec)
    data = solve_coefficients(seq, roots, **kw)
    data.weights = rh_check(roots, q)
    return data
