"""Truncated partial zeta series exp(sum N_k T^k / k), in exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonUnitConstantTerm


@dataclass(frozen=True)
class QSeries:
    """a_0 + a_1 T + ... + a_K T^K with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        return self.coefficients[i]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)


def _values(counts):
    return list(getattr(counts, "values", counts))


def zeta_series(counts) -> QSeries:
    """Coefficients of exp(sum_{k<=K} N_k T^k / k) through T^K.

    From Z' = Z * sum N_k T^(k-1):  m a_m = sum_{k=1}^m N_k a_{m-k}.
    """
    N = _values(counts)
    if not N:
        raise ValueError("need at least one count")
    a = [Fraction(1)]
    for m in range(1, len(N) + 1):
        a.append(sum((N[k - 1] * a[m - k] for k in range(1, m + 1)), Fraction(0)) / m)
    return QSeries(tuple(a))


def log_derivative(Z: QSeries) -> QSeries:
    """Coefficients of T Z'/Z; for a zeta series these are 0, N_1, ..., N_K."""
    a = [Fraction(c) for c in Z.coefficients]
    if a[0] != 1:
        raise NonUnitConstantTerm(f"constant term is {a[0]}, expected 1")
    N = [Fraction(0)]
    for m in range(1, len(a)):
        N.append(m * a[m] - sum((N[j] * a[m - j] for j in range(1, m)), Fraction(0)))
    return QSeries(tuple(N))


def counts_from_zeta(Z: QSeries) -> list[Fraction]:
    return list(log_derivative(Z).coefficients[1:])


def expand_rational(numerator: Sequence, denominator: Sequence, order: int) -> QSeries:
    """Power series of P/Q through T^order (Q(0) must be nonzero)."""
    P = [Fraction(c) for c in numerator]
    Q = [Fraction(c) for c in denominator]
    if not Q or Q[0] == 0:
        raise ZeroDivisionError("denominator must have a nonzero constant term")
    out = []
    for m in range(order + 1):
        acc = P[m] if m < len(P) else Fraction(0)
        for j in range(1, min(m, len(Q) - 1) + 1):
            acc -= Q[j] * out[m - j]
        out.append(acc / Q[0])
    return QSeries(tuple(out))
