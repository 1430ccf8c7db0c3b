import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from partialzeta.errors import BudgetExceeded, DegreeMismatch, NotPrime
from partialzeta.ffield import (FieldSpec, build_ambient, enumerate_span, field_spec, frob_q_power,
                                is_in_subfield, is_irreducible, smallest_irreducible, span_indices,
                                subfield_basis, subfield_indices)


def _has_factor(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(f) - 1
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            g = list(low) + [1]
            r = list(f)
            while len(r) >= len(g):
                c = r[-1]
                s = len(r) - len(g)
                for i, v in enumerate(g):
                    r[s + i] = (r[s + i] - c * v) % p
                r.pop()
            if not any(r):
                return True
    return False


def test_irreducibility_examples():
    assert not is_irreducible((1, 0, 1), 2)
    assert is_irreducible((1, 1, 1), 2)
    assert is_irreducible((1, 1, 0, 0, 1), 2)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2), (2, 6)])
def test_irreducibility_against_trial_division(p, n):
    for low in itertools.product(range(p), repeat=n):
        f = tuple(low) + (1,)
        assert is_irreducible(f, p) == (not _has_factor(f, p))


def test_smallest_modulus_f25():
    # the lexicographically smallest monic irreducible quadratic found by scanning for roots
    def key(f):
        return tuple(reversed(f))
    cands = [(a, b, 1) for a in range(5) for b in range(5)
             if all((a + b * x + x * x) % 5 for x in range(5))]
    F = build_ambient(field_spec(5), 2)
    assert F.order == 25
    assert F.modulus == min(cands, key=key) == (2, 0, 1)


def test_f2_linear_and_f64_base_root():
    F = build_ambient(field_spec(2), 1)
    assert F.order == 2 and len(F.modulus) == 2
    spec = field_spec(2, 2)
    G = build_ambient(spec, 3)
    assert G.order == 64
    roots = [a for a in map(G.from_index, range(64))
             if (G.pow(a, 2) + G.mul(G.element([spec.base_modulus[1]]), a) + G.element([spec.base_modulus[0]])).is_zero()]
    assert len(roots) == 2
    assert G.base_root in roots


def test_not_prime_and_budget():
    with pytest.raises(NotPrime):
        field_spec(4)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(BudgetExceeded):
        build_ambient(field_spec(2), 30)


def test_frobenius_examples():
    F = build_ambient(field_spec(2, 2), 3)
    one = F.one()
    for s in range(4):
        assert frob_q_power(one, s) == one
    rnd = random.Random(0)
    for _ in range(20):
        a = F.from_index(rnd.randrange(64))
        assert frob_q_power(a, 3) == a
        assert frob_q_power(a, 1) == F.pow(a, 4)


def test_subfield_membership():
    F = build_ambient(field_spec(5), 2)
    members = [a for a in map(F.from_index, range(25)) if is_in_subfield(a, 1)]
    assert len(members) == 5
    for c in range(5):
        assert is_in_subfield(F.element([c]), 1)
    # a multiplicative generator is not in F_5
    g = next(a for a in map(F.from_index, range(1, 25))
             if len({F.pow(a, k).coeffs for k in range(24)}) == 24)
    assert not is_in_subfield(g, 1)
    with pytest.raises(DegreeMismatch):
        is_in_subfield(g, 3)


@pytest.mark.parametrize("p,e,m", [(2, 1, 6), (3, 1, 4), (5, 1, 2), (2, 2, 3), (3, 2, 2), (7, 1, 2), (2, 1, 12)])
def test_subfield_sizes_exhaustive(p, e, m):
    F = build_ambient(field_spec(p, e), m)
    allidx = np.arange(F.order)
    for s in range(1, m + 1):
        if m % s:
            continue
        mask = F.v_in_subfield(allidx, s)
        assert mask.sum() == F.spec.q ** s
        basis = subfield_basis(F, s)
        assert len(basis) == e * s
        span = set(span_indices(basis, F).tolist())
        assert span == set(np.nonzero(mask)[0].tolist())
        # scalar route agrees with the vector route
        if F.order <= 2000:
            assert {a.index for a in map(F.from_index, range(F.order)) if is_in_subfield(a, s)} == span


def test_subfield_basis_examples():
    F = build_ambient(field_spec(2), 6)
    B = subfield_basis(F, 3)
    assert len(B) == 3
    elems = list(enumerate_span(B))
    assert len(elems) == 8
    assert all(F.pow(a, 8) == a for a in elems)
    assert len(subfield_basis(F, 6)) == 6
    G = build_ambient(field_spec(5), 2)
    assert len(subfield_basis(G, 1)) == 1


def test_enumerate_span():
    F = build_ambient(field_spec(3), 2)
    assert [a.index for a in enumerate_span([], F)] == [0]
    assert len(list(enumerate_span([F.one()]))) == 3
    G = build_ambient(field_spec(5), 2)
    span = list(enumerate_span(subfield_basis(G, 2)))
    assert len({a.coeffs for a in span}) == 25
    assert [a.index for a in span] == span_indices(subfield_basis(G, 2), G).tolist()


def test_determinism():
    spec = field_spec(3, 2)
    F1 = build_ambient(spec, 2)
    build_ambient.cache_clear()
    F2 = build_ambient(spec, 2)
    assert F1 is not F2
    assert F1.modulus == F2.modulus and F1.base_root == F2.base_root
    assert smallest_irreducible(3, 4, 1) != smallest_irreducible(3, 4, 0)


FIELDS = [(2, 1, 5), (3, 1, 3), (5, 1, 2), (2, 2, 2), (3, 2, 1)]


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(fld, data):
    F = build_ambient(field_spec(fld[0], fld[1]), fld[2])
    idx = st.integers(0, F.order - 1)
    a, b, c = (F.from_index(data.draw(idx)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    if not a.is_zero():
        assert a * F.inv(a) == F.one()
    # Frobenius is a ring homomorphism
    assert frob_q_power(a + b, 1) == frob_q_power(a, 1) + frob_q_power(b, 1)
    assert frob_q_power(a * b, 1) == frob_q_power(a, 1) * frob_q_power(b, 1)


@given(st.sampled_from(FIELDS + [(2, 1, 12), (3, 1, 7)]), st.data())
def test_vector_ops_match_scalar(fld, data):
    F = build_ambient(field_spec(fld[0], fld[1]), fld[2])
    xs = data.draw(st.lists(st.integers(0, F.order - 1), min_size=1, max_size=20))
    ys = data.draw(st.lists(st.integers(0, F.order - 1), min_size=len(xs), max_size=len(xs)))
    e = data.draw(st.integers(0, 50))
    A, B = np.array(xs), np.array(ys)
    for i, (x, y) in enumerate(zip(xs, ys)):
        a, b = F.from_index(x), F.from_index(y)
        assert F.vmul(A, B)[i] == (a * b).index
        assert F.vadd(A, B)[i] == (a + b).index
        assert F.vsub(A, B)[i] == (a - b).index
        assert F.vneg(A)[i] == (-a).index
        assert F.vpow(A, e)[i] == F.pow(a, e).index
