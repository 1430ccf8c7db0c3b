"""Partial point counts N_{d_1..d_n}(k, X) and their relatives.

All coordinates for level k live in one ambient field F_{q^{k*lcm(d)}};
"x_i in F_{q^{d_i k}}" becomes membership in the span of a subfield basis.
The main path enumerates the subfield spans level by level (numpy blocks of
partial assignments), pruning rows as soon as some equation specializes to a
nonzero constant.  The brute-force path shares nothing with it beyond the
field's modulus: it uses polynomial-basis arithmetic on digit vectors and
finds subfields by testing a^(q^s) == a on every ambient element.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InjectivityViolated
from .ffield import AmbientField, FieldSpec, build_ambient, lcm, subfield_indices
from .poly import MultiPoly, PolyMap

MAIN_NODE_BUDGET = 10 ** 8
ORACLE_POINT_BUDGET = 10 ** 7
CHUNK_ROWS = 1 << 18


@dataclass(frozen=True)
class VarietySpec:
    spec: FieldSpec
    n: int
    equations: tuple[MultiPoly, ...] = ()
    morphisms: tuple[PolyMap, ...] = ()
    label: str = ""

    def __post_init__(self):
        for eq in self.equations:
            if eq.n != self.n:
                raise ValueError("equation variable count does not match n")
        for fmap in self.morphisms:
            for comp in fmap.components:
                if comp.n != self.n:
                    raise ValueError("morphism component variable count does not match n")

    @property
    def q(self):
        return self.spec.q

    def permuted(self, perm: Sequence[int]) -> "VarietySpec":
        """Variety with new variable j equal to old variable perm[j] (0-based)."""
        eqs = tuple(MultiPoly(self.spec, self.n, {tuple(x[perm[j]] for j in range(self.n)): c
                                                  for x, c in eq.terms.items()})
                    for eq in self.equations)
        return VarietySpec(self.spec, self.n, eqs, (), self.label)


@dataclass(frozen=True)
class PartialCountQuery:
    d: tuple[int, ...]
    k_max: int

    def __post_init__(self):
        if not self.d or any(int(v) < 1 for v in self.d):
            raise ValueError("all d_i must be positive")
        if self.k_max < 1:
            raise ValueError("k_max must be positive")

    @property
    def lcm_d(self) -> int:
        return lcm(self.d)


@dataclass
class CountSeries:
    query: PartialCountQuery
    values: list[int]
    nodes: list[int] = field(default_factory=list)
    seconds: list[float] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return len(self.values) == self.query.k_max


# -- compiled polynomials on index arrays ----------------------------------------


def _compile(f: MultiPoly, F: AmbientField):
    return [(exps, F.index_of(c)) for exps, c in f.embedded(F)]


class _PowerCache:
    def __init__(self, F, rows):
        self.F = F
        self.rows = rows
        self.memo = {}

    def get(self, j, e):
        key = (j, e)
        if key not in self.memo:
            self.memo[key] = self.F.vpow(self.rows[:, j], e)
        return self.memo[key]


def _eval_terms(F, terms, cache, nrows):
    acc = np.zeros(nrows, dtype=np.int64)
    for head, coeff in terms:
        val = np.full(nrows, coeff, dtype=np.int64)
        for j, e in enumerate(head):
            if e:
                val = F.vmul(val, cache.get(j, e))
        acc = F.vadd(acc, val)
    return acc


def _level_plan(compiled, n):
    """For each level i, the pruning tests to run after assigning x_1..x_{i+1}.

    A test is (constant_group, other_groups); each group is a list of
    (head exponents, coefficient index).
    """
    plan = []
    for i in range(n):
        tests = []
        for terms in compiled:
            involved = {j for exps, _ in terms for j, v in enumerate(exps) if v}
            if i not in involved and not (i == 0 and not involved):
                continue
            groups: dict = {}
            for exps, c in terms:
                groups.setdefault(exps[i + 1:], []).append((exps[:i + 1], c))
            const_tail = (0,) * (n - i - 1)
            const = groups.pop(const_tail, None)
            if const is None:
                continue
            if any(len(g) == 1 and not any(g[0][0]) for g in groups.values()):
                continue
            tests.append((const, list(groups.values())))
        plan.append(tests)
    return plan


def _last_involved(compiled, n):
    last = -1
    for terms in compiled:
        for exps, _ in terms:
            for j, v in enumerate(exps):
                if v:
                    last = max(last, j)
        if not terms:
            continue
    return last


class _Enumerator:
    def __init__(self, F, compiled, spans, node_budget, chunk_rows=CHUNK_ROWS, collect=False):
        self.F = F
        self.spans = spans
        self.n = len(spans)
        self.plan = _level_plan(compiled, self.n)
        self.budget = node_budget
        self.chunk = chunk_rows
        self.collect = collect
        self.nodes = 0
        self.found = []
        # constants: equations with no variables
        self.const_ok = all(all(c == 0 for exps, c in terms) for terms in compiled
                            if all(not any(exps) for exps, _ in terms))
        self.last = _last_involved(compiled, self.n)

    def _keep(self, rows, level):
        keep = np.ones(len(rows), dtype=bool)
        if not self.plan[level]:
            return keep
        cache = _PowerCache(self.F, rows)
        for const, others in self.plan[level]:
            live = np.nonzero(keep)[0]
            if not len(live):
                break
            sub = _PowerCache(self.F, rows[live]) if len(live) < len(rows) else cache
            cval = _eval_terms(self.F, const, sub, len(live))
            kill = cval != 0
            for g in others:
                if not kill.any():
                    break
                kill &= _eval_terms(self.F, g, sub, len(live)) == 0
            keep[live[kill]] = False
        return keep

    def run(self):
        if not self.const_ok:
            return 0
        if self.last < 0 and not self.collect:
            return int(np.prod([len(s) for s in self.spans], dtype=object))
        return self._descend(np.zeros((1, 0), dtype=np.int64), 0)

    def _descend(self, rows, level):
        S = self.spans[level]
        if not self.collect and level > self.last:
            tail = 1
            for s in self.spans[level:]:
                tail *= len(s)
            return len(rows) * tail
        per = max(1, self.chunk // len(S))
        total = 0
        for start in range(0, len(rows), per):
            block = rows[start:start + per]
            self.nodes += len(block) * len(S)
            if self.nodes > self.budget:
                raise BudgetExceeded(f"enumeration exceeded {self.budget} nodes",
                                     bound=self.nodes, limit=self.budget)
            new = np.empty((len(block) * len(S), level + 1), dtype=np.int64)
            new[:, :level] = np.repeat(block, len(S), axis=0)
            new[:, level] = np.tile(S, len(block))
            new = new[self._keep(new, level)]
            if level == self.n - 1:
                total += len(new)
                if self.collect:
                    self.found.append(new)
            elif len(new):
                total += self._descend(new, level + 1)
        return total


def _check_d(X, d):
    d = tuple(int(v) for v in d)
    if len(d) != X.n:
        raise ValueError(f"need {X.n} values d_i, got {len(d)}")
    if any(v < 1 for v in d):
        raise ValueError("all d_i must be positive")
    return d


def count_partial(X: VarietySpec, d: Sequence[int], k: int, *, node_budget: int = MAIN_NODE_BUDGET,
                  modulus_rank: int = 0, chunk_rows: int = CHUNK_ROWS, stats: dict | None = None) -> int:
    """#{x in X : x_i in F_{q^{d_i k}} for all i}."""
    d = _check_d(X, d)
    if k < 1:
        raise ValueError("k must be positive")
    F = build_ambient(X.spec, k * lcm(d), modulus_rank)
    spans = [subfield_indices(F, di * k) for di in d]
    compiled = [_compile(eq, F) for eq in X.equations]
    en = _Enumerator(F, compiled, spans, node_budget, chunk_rows)
    count = en.run()
    if stats is not None:
        stats["nodes"] = en.nodes
    return int(count)


def count_classical(X: VarietySpec, m: int, **kw) -> int:
    """#X(F_{q^m})."""
    return count_partial(X, (1,) * X.n, m, **kw)


def rational_points(X: VarietySpec, F: AmbientField, *, node_budget: int = MAIN_NODE_BUDGET) -> np.ndarray:
    """All points of X with coordinates in F, as an (N, n) index array."""
    spans = [np.arange(F.order, dtype=np.int64)] * X.n
    compiled = [_compile(eq, F) for eq in X.equations]
    en = _Enumerator(F, compiled, spans, node_budget, collect=True)
    en.run()
    if not en.found:
        return np.zeros((0, X.n), dtype=np.int64)
    return np.concatenate(en.found)


def eval_on_rows(f: MultiPoly, F: AmbientField, rows: np.ndarray) -> np.ndarray:
    """Vectorized value of ``f`` at each row of an index array."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, f.n)
    return _eval_terms(F, _compile(f, F), _PowerCache(F, rows), len(rows))


def count_generalized(X: VarietySpec, d: Sequence[int], k: int, *,
                      node_budget: int = MAIN_NODE_BUDGET) -> int:
    """#{x in X : f_i(x) in X_i(F_{q^{d_i k}}) for all i} for injective f = (f_i).

    Injectivity of f is checked on the enumerated ambient points only.
    """
    d = tuple(int(v) for v in d)
    if len(d) != len(X.morphisms):
        raise ValueError(f"need one d_i per morphism ({len(X.morphisms)}), got {len(d)}")
    F = build_ambient(X.spec, k * lcm(d))
    pts = rational_points(X, F, node_budget=node_budget)
    values = []
    ok = np.ones(len(pts), dtype=bool)
    for di, fmap in zip(d, X.morphisms):
        for comp in fmap.components:
            v = eval_on_rows(comp, F, pts)
            values.append(v)
            ok &= F.v_in_subfield(v, di * k)
    if len(pts) > 1:
        fvals = np.stack(values, axis=1)
        if len(np.unique(fvals, axis=0)) != len(pts):
            raise InjectivityViolated("two points of X share all morphism values")
    return int(ok.sum())


def count_series(X: VarietySpec, d: Sequence[int], k_max: int, **kw) -> CountSeries:
    query = PartialCountQuery(_check_d(X, d), k_max)
    series = CountSeries(query, [])
    for k in range(1, k_max + 1):
        stats: dict = {}
        t0 = time.perf_counter()
        try:
            series.values.append(count_partial(X, query.d, k, stats=stats, **kw))
        except BudgetExceeded as exc:
            exc.completed = k - 1
            exc.partial = series
            raise
        series.seconds.append(time.perf_counter() - t0)
        series.nodes.append(stats.get("nodes", 0))
    return series


# -- brute-force oracle -------------------------------------------------------------


class PolyBasisArith:
    """Arithmetic in F_p[x]/(modulus) on (N, deg) digit arrays; no tables."""

    def __init__(self, F: AmbientField):
        self.p = F.p
        self.n = F.degree
        self.low = np.array(F.modulus[:-1], dtype=np.int64)
        self.F = F

    def digits(self, idx):
        return self.F.digits(idx)

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        n, p = self.n, self.p
        c = np.zeros((a.shape[0], 2 * n - 1), dtype=np.int64)
        for i in range(n):
            c[:, i:i + n] += a[:, i:i + 1] * b
        c %= p
        for top in range(2 * n - 2, n - 1, -1):
            t = c[:, top]
            if t.any():
                c[:, top - n:top] -= t[:, None] * self.low[None, :]
                c[:, top - n:top] %= p
        return c[:, :n] % p

    def pow(self, a, e):
        result = np.zeros_like(a)
        result[:, 0] = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frob(self, a, times):
        for _ in range(times):
            a = self.pow(a, self.p)
        return a


def _oracle_subfield(arith: PolyBasisArith, F: AmbientField, s: int) -> np.ndarray:
    """Indices of all a in F with a^(q^s) == a, by testing every element."""
    allidx = np.arange(F.order, dtype=np.int64)
    dig = arith.digits(allidx)
    fixed = np.all(arith.frob(dig, F.spec.e * s) == dig, axis=1)
    return allidx[fixed]


def _oracle_eval(arith, terms_digits, cols):
    n_rows = cols[0].shape[0] if cols else 1
    acc = np.zeros((n_rows, arith.n), dtype=np.int64)
    for exps, cdig in terms_digits:
        val = np.broadcast_to(cdig, (n_rows, arith.n)).copy()
        for j, e in enumerate(exps):
            if e:
                val = arith.mul(val, arith.pow(cols[j], e))
        acc = arith.add(acc, val)
    return acc


def count_partial_bruteforce(X: VarietySpec, d: Sequence[int], k: int, *,
                             point_budget: int = ORACLE_POINT_BUDGET, chunk: int = 1 << 16) -> int:
    """Same count as :func:`count_partial`, by full evaluation at every candidate."""
    d = _check_d(X, d)
    F = build_ambient(X.spec, k * lcm(d))
    sizes = [X.q ** (di * k) for di in d]
    total = 1
    for s in sizes:
        total *= s
    if total > point_budget:
        raise BudgetExceeded(f"oracle needs {total} candidate points (limit {point_budget})",
                             bound=total, limit=point_budget)
    arith = PolyBasisArith(F)
    subs = [_oracle_subfield(arith, F, di * k) for di in d]
    assert [len(s) for s in subs] == sizes
    eqs = [[(exps, np.array(c.coeffs, dtype=np.int64)) for exps, c in eq.embedded(F)] for eq in X.equations]
    count = 0
    for start in range(0, total, chunk):
        flat = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = []
        for s in subs:
            cols.append(arith.digits(s[flat % len(s)]))
            flat = flat // len(s)
        ok = np.ones(cols[0].shape[0], dtype=bool)
        for terms in eqs:
            ok &= ~_oracle_eval(arith, terms, cols).any(axis=1)
        count += int(ok.sum())
    return count
