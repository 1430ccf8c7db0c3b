"""Finite-field towers F_p < F_q < F_{q^m} with subfield detection.

Polynomials over F_p are plain coefficient lists, lowest degree first, with
no trailing zeros (``[]`` is the zero polynomial).  Elements of an ambient
field F_{q^m} = F_p[x]/(modulus) are coefficient vectors of length e*m in
the power basis; their *index* is the base-p integer sum(c_i * p**i), which
is also the representation used by the vectorized (numpy) kernels.

Scalar arithmetic on :class:`FieldElement` is plain polynomial arithmetic.
The vectorized kernels (``vmul``, ``vadd``, ...) run on index arrays and use
exp/log/Zech tables built lazily per field.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DegreeMismatch, NotPrime

# Largest ambient field (number of elements) build_ambient will construct.
FIELD_SIZE_LIMIT = 1 << 24

_TABLE_BLOCK = 1 << 13


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over F_p (coefficient lists, low degree first)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [c % p for c in a]
    _trim(a)
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(quot), _trim(a[:db])


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(base, exp, mod, p):
    result = [1]
    base = poly_mod(base, mod, p)
    while exp:
        if exp & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        exp >>= 1
        if exp:
            base = poly_mod(poly_mul(base, base, p), mod, p)
    return result


def _x_pow_p_iter(f, p, times):
    """x^(p^times) mod f by repeated p-th powering."""
    r = poly_mod([0, 1], f, p)
    for _ in range(times):
        r = poly_powmod(r, p, f, p)
    return r


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (coefficients low first)."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if f[-1] != 1:
        raise ValueError("polynomial must be monic")
    if n == 1:
        return True
    if poly_sub(_x_pow_p_iter(f, p, n), [0, 1], p):
        return False
    for ell in prime_factors(n):
        h = poly_sub(_x_pow_p_iter(f, p, n // ell), [0, 1], p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return True


def monic_irreducibles(p: int, n: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducibles of degree n in increasing lexicographic order.

    The order compares (c_{n-1}, ..., c_0) lexicographically, i.e. the base-p
    integer sum(c_i * p**i) of the non-leading coefficients.
    """
    for code in range(p ** n):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if is_irreducible(f, p):
            yield tuple(f)


def smallest_irreducible(p: int, n: int, rank: int = 0) -> tuple[int, ...]:
    for i, f in enumerate(monic_irreducibles(p, n)):
        if i == rank:
            return f
    raise ValueError(f"fewer than {rank + 1} irreducibles of degree {n} over F_{p}")


# ---------------------------------------------------------------------------
# Field types


@dataclass(frozen=True)
class FieldSpec:
    """The base field F_q = F_p[t]/(base_modulus), q = p^e."""

    p: int
    e: int
    base_modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.e < 1 or len(self.base_modulus) != self.e + 1:
            raise ValueError("base_modulus must have degree e >= 1")
        if not is_irreducible(self.base_modulus, self.p):
            raise ValueError(f"base modulus {self.base_modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.e


@functools.lru_cache(maxsize=None)
def field_spec(p: int, e: int = 1) -> FieldSpec:
    """FieldSpec with the lexicographically smallest base modulus of degree e."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("e must be positive")
    return FieldSpec(p, e, smallest_irreducible(p, e))


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    field: "AmbientField" = dc_field(compare=False, repr=False)

    @property
    def index(self) -> int:
        return self.field.index_of(self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.sub(self, other)

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __pow__(self, exponent):
        return self.field.pow(self, exponent)


class AmbientField:
    """F_{q^m} = F_p[x]/(modulus) with F_q embedded through ``base_root``.

    Immutable after construction; the numpy tables are built on first use.
    """

    def __init__(self, spec: FieldSpec, m: int, modulus: Sequence[int]):
        self.spec = spec
        self.p = spec.p
        self.m = m
        self.degree = spec.e * m
        self.modulus = tuple(modulus)
        if len(self.modulus) != self.degree + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e*m")
        self.order = self.p ** self.degree
        self._pw = [self.p ** i for i in range(self.degree)]
        self._tables = None
        self.base_root = self._find_base_root()

    def __repr__(self):
        return f"AmbientField(p={self.p}, e={self.spec.e}, m={self.m}, modulus={self.modulus})"

    # -- conversions -------------------------------------------------------

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        c = [int(v) % self.p for v in coeffs]
        if len(c) > self.degree:
            c = poly_mod(c, list(self.modulus), self.p)
        c = c + [0] * (self.degree - len(c))
        return FieldElement(tuple(c), self)

    def from_index(self, index: int) -> FieldElement:
        c = []
        for _ in range(self.degree):
            c.append(index % self.p)
            index //= self.p
        return FieldElement(tuple(c), self)

    def index_of(self, a: FieldElement) -> int:
        return sum(c * w for c, w in zip(a.coeffs, self._pw))

    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.degree, self)

    def one(self) -> FieldElement:
        return self.element([1])

    def embed_base(self, coeffs: Sequence[int]) -> FieldElement:
        """Image of sum(c_j t^j) in F_q under t -> base_root."""
        acc = self.zero()
        power = self.one()
        for c in coeffs:
            if c % self.p:
                acc = self.add(acc, self.scale(power, c))
            power = self.mul(power, self.base_root)
        return acc

    # -- scalar arithmetic -------------------------------------------------

    def _poly(self, a):
        return _trim(list(a.coeffs))

    def _wrap(self, poly):
        return FieldElement(tuple(poly) + (0,) * (self.degree - len(poly)), self)

    def add(self, a, b):
        p = self.p
        return FieldElement(tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)), self)

    def sub(self, a, b):
        p = self.p
        return FieldElement(tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)), self)

    def neg(self, a):
        p = self.p
        return FieldElement(tuple(-x % p for x in a.coeffs), self)

    def scale(self, a, c: int):
        p = self.p
        return FieldElement(tuple(x * c % p for x in a.coeffs), self)

    def mul(self, a, b):
        prod = poly_mul(self._poly(a), self._poly(b), self.p)
        return self._wrap(poly_mod(prod, list(self.modulus), self.p))

    def pow(self, a, exponent: int):
        if exponent < 0:
            return self.pow(self.inv(a), -exponent)
        return self._wrap(poly_powmod(self._poly(a), exponent, list(self.modulus), self.p))

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def frob_q_power(self, a, s: int):
        """a^(q^s), by s*e successive p-th powers."""
        r = a
        for _ in range(self.spec.e * s):
            r = self.pow(r, self.p)
        return r

    def is_in_subfield(self, a, s: int) -> bool:
        if s < 1 or self.m % s:
            raise DegreeMismatch(f"F_(q^{s}) is not a subfield of F_(q^{self.m})")
        return self.frob_q_power(a, s) == a

    def _find_base_root(self):
        if self.spec.e == 1:
            return self.zero() if self.spec.base_modulus[0] == 0 else self.element([-self.spec.base_modulus[0]])
        basis = _fixed_space_basis(self, self.spec.e)
        best = None
        for a in enumerate_span(basis, self):
            val = self.zero()
            for c in reversed(self.spec.base_modulus):
                val = self.add(self.mul(val, a), self.element([c]))
            if val.is_zero() and (best is None or a.index < best.index):
                best = a
        if best is None:
            raise ArithmeticError("base modulus has no root in the ambient field")
        return best

    # -- vectorized kernels on index arrays ---------------------------------

    @property
    def tables(self):
        if self._tables is None:
            self._tables = _FieldTables(self)
        return self._tables

    def digits(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.shape + (self.degree,), dtype=np.int64)
        for i, w in enumerate(self._pw):
            out[..., i] = (idx // w) % self.p
        return out

    def encode(self, digits):
        return (np.asarray(digits, dtype=np.int64) % self.p) @ np.array(self._pw, dtype=np.int64)

    def vmul(self, a, b):
        t = self.tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = t.exp[(t.log[a] + t.log[b]) % t.cyc]
        return np.where((a == 0) | (b == 0), 0, r)

    def vmul_const(self, a, c: int):
        if c == 0:
            return np.zeros_like(np.asarray(a, dtype=np.int64))
        t = self.tables
        a = np.asarray(a, dtype=np.int64)
        r = t.exp[(t.log[a] + int(t.log[c])) % t.cyc]
        return np.where(a == 0, 0, r)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        t = self.tables
        la = t.log[a].astype(np.int64)
        z = t.zech[(t.log[b] - la) % t.cyc].astype(np.int64)
        r = np.where(z < 0, 0, t.exp[(la + z) % t.cyc])
        r = np.where(a == 0, b, r)
        return np.where(b == 0, a, r)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        t = self.tables
        r = t.exp[(t.log[a] + t.cyc // 2) % t.cyc]
        return np.where(a == 0, 0, r)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vpow(self, a, exponent: int):
        a = np.asarray(a, dtype=np.int64)
        if exponent == 0:
            return np.ones_like(a)
        t = self.tables
        e = exponent % t.cyc or t.cyc
        r = t.exp[(t.log[a].astype(np.int64) * e) % t.cyc]
        return np.where(a == 0, 0, r)

    def v_in_subfield(self, a, s: int):
        if s < 1 or self.m % s:
            raise DegreeMismatch(f"F_(q^{s}) is not a subfield of F_(q^{self.m})")
        t = self.tables
        a = np.asarray(a, dtype=np.int64)
        step = t.cyc // (self.spec.q ** s - 1)
        return (a == 0) | (t.log[a] % step == 0)


class _FieldTables:
    """exp/log/Zech tables with respect to a fixed primitive element."""

    def __init__(self, F: AmbientField):
        Q = F.order
        self.cyc = Q - 1
        self.generator = _primitive_element(F)
        dtype = np.int32 if Q < 2 ** 31 else np.int64
        exp = np.empty(max(Q - 1, 1), dtype=dtype)
        block = min(_TABLE_BLOCK, Q - 1)
        g = F.one()
        rows = []
        for _ in range(block):
            rows.append(g.coeffs)
            g = F.mul(g, self.generator)
        # multiplication by g^block as an F_p-linear map on digit vectors
        step = np.array([F.mul(F.from_index(F._pw[i]), g).coeffs for i in range(F.degree)], dtype=np.float64)
        weights = np.array(F._pw, dtype=np.float64)
        dig = np.array(rows, dtype=np.float64)
        exp[:block] = (dig @ weights).astype(dtype)
        pos = block
        if F.p == 2:
            images = (step @ weights).astype(np.int64)
            prev = exp[:block].astype(np.int64)
            while pos < Q - 1:
                n = min(block, Q - 1 - pos)
                cur = np.zeros(n, dtype=np.int64)
                for i, img in enumerate(images):
                    cur ^= ((prev[:n] >> i) & 1) * img
                exp[pos: pos + n] = cur
                prev = cur
                pos += n
        while pos < Q - 1:
            n = min(block, Q - 1 - pos)
            dig = dig[:n] @ step
            dig -= np.floor(dig * (1.0 / F.p)) * F.p
            exp[pos: pos + n] = (dig @ weights).astype(dtype)
            pos += n
        log = np.full(Q, -1, dtype=dtype)
        log[exp] = np.arange(Q - 1, dtype=dtype)
        if np.count_nonzero(log >= 0) != Q - 1:
            raise ArithmeticError("generator is not primitive")
        e64 = exp.astype(np.int64)
        low = e64 % F.p
        plus_one = e64 - low + (low + 1) % F.p
        self.exp = exp
        self.log = log
        self.zech = log[plus_one]


def _primitive_element(F: AmbientField) -> FieldElement:
    Q = F.order
    if Q == 2:
        return F.one()
    factors = prime_factors(Q - 1)
    one = F.one()
    for idx in range(2, Q):
        c = F.from_index(idx)
        if all(F.pow(c, (Q - 1) // r) != one for r in factors):
            return c
    raise ArithmeticError("no primitive element found")


def _nullspace_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : A v = 0} over F_p, A given by rows."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [v * inv % p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(vi - f * vr) % p for vi, vr in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in enumerate(pivots):
            v[pc] = -A[row][fcol] % p
        basis.append(v)
    return basis


def _fixed_space_basis(F: AmbientField, p_power: int) -> list[FieldElement]:
    """Basis of the fixed space of a -> a^(p^p_power)."""
    n = F.degree
    images = []
    for i in range(n):
        xi = F.from_index(F._pw[i])
        img = xi
        for _ in range(p_power):
            img = F.pow(img, F.p)
        images.append(img.coeffs)
    # matrix of (Frob - I): column i is image(x^i) - x^i
    rows = [[(images[i][r] - (1 if r == i else 0)) % F.p for i in range(n)] for r in range(n)]
    return [FieldElement(tuple(v), F) for v in _nullspace_mod_p(rows, n, F.p)]


# ---------------------------------------------------------------------------
# Public operations


@functools.lru_cache(maxsize=64)
def build_ambient(spec: FieldSpec, m: int, modulus_rank: int = 0,
                  size_limit: int = FIELD_SIZE_LIMIT) -> AmbientField:
    """F_{q^m} with the (modulus_rank)-th smallest irreducible modulus."""
    if not is_prime(spec.p):
        raise NotPrime(f"{spec.p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    size = spec.p ** (spec.e * m)
    if size > size_limit:
        raise BudgetExceeded(f"ambient field F_{spec.p}^{spec.e * m} has {size} elements "
                             f"(limit {size_limit})", bound=size, limit=size_limit)
    return AmbientField(spec, m, smallest_irreducible(spec.p, spec.e * m, modulus_rank))


def frob_q_power(a: FieldElement, s: int) -> FieldElement:
    return a.field.frob_q_power(a, s)


def is_in_subfield(a: FieldElement, s: int) -> bool:
    return a.field.is_in_subfield(a, s)


def subfield_basis(F: AmbientField, s: int) -> list[FieldElement]:
    """F_p-basis of F_{q^s} inside F, as the nullspace of Frob_{q^s} - id."""
    if s < 1 or F.m % s:
        raise DegreeMismatch(f"F_(q^{s}) is not a subfield of F_(q^{F.m})")
    basis = _fixed_space_basis(F, F.spec.e * s)
    assert len(basis) == F.spec.e * s
    return basis


def enumerate_span(basis: Sequence[FieldElement], field: AmbientField | None = None) -> Iterator[FieldElement]:
    """All F_p-combinations of ``basis`` in odometer order (first digit fastest)."""
    F = field if field is not None else (basis[0].field if basis else None)
    if F is None:
        raise ValueError("an empty basis needs an explicit field")
    p = F.p
    counters = [0] * len(basis)
    while True:
        acc = [0] * F.degree
        for c, b in zip(counters, basis):
            if c:
                for i, v in enumerate(b.coeffs):
                    acc[i] += c * v
        yield FieldElement(tuple(v % p for v in acc), F)
        i = 0
        while i < len(counters):
            counters[i] += 1
            if counters[i] < p:
                break
            counters[i] = 0
            i += 1
        else:
            return


def span_indices(basis: Sequence[FieldElement], field: AmbientField) -> np.ndarray:
    """Index array of the span, in the same order as :func:`enumerate_span`."""
    p = field.p
    b = len(basis)
    if b == 0:
        return np.zeros(1, dtype=np.int64)
    combos = np.arange(p ** b, dtype=np.int64)
    coef = np.empty((p ** b, b), dtype=np.int64)
    for i in range(b):
        coef[:, i] = (combos // p ** i) % p
    mat = np.array([v.coeffs for v in basis], dtype=np.int64)
    return field.encode(coef @ mat % p)


def subfield_indices(F: AmbientField, s: int) -> np.ndarray:
    return span_indices(subfield_basis(F, s), F)


def lcm(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
