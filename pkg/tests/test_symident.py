import random
from fractions import Fraction

from hypothesis import given, strategies as st

from partialzeta.symident import (complete_from_elementary, complete_to_power, elementary_to_power,
                                  matrix_elementary, matrix_power_trace, power_to_complete, power_to_elementary,
                                  spectrum_symmetric, universal_trace, universal_trace_from_powers)


def test_newton_examples():
    assert power_to_complete([2, 4, 8]) == [2, 4, 8]
    assert power_to_complete([3, 5]) == [3, 7]
    assert power_to_complete([0, 0, 0]) == [0, 0, 0]
    assert power_to_elementary([3, 5]) == [3, 2]
    assert power_to_elementary([5, 25, 125])[1:] == [0, 0]
    assert power_to_elementary([0, 0]) == [0, 0]


def test_trace_formula_examples():
    hs, es = spectrum_symmetric([3], 2)
    assert universal_trace(hs, es, 2) == 9
    # the alternative sign convention negates the even-h values
    assert universal_trace(hs, es, 2, printed_sign=True) == -9
    assert universal_trace(hs, es, 1) == hs[1] == 3
    M = [[1, 2, 0], [-1, 3, 1], [2, 0, -2]]
    es = matrix_elementary(M, 4)
    hs = complete_from_elementary(es, 4)
    assert universal_trace(hs, es, 4) == matrix_power_trace(M, 4)


def test_zero_matrix():
    Z = [[0] * 3 for _ in range(3)]
    es = matrix_elementary(Z, 3)
    assert universal_trace(complete_from_elementary(es, 3), es, 3) == 0 == matrix_power_trace(Z, 3)


def test_signs_differ_by_global_factor():
    rng = random.Random(5)
    for _ in range(30):
        eig = [rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]
        h = rng.randint(1, 5)
        hs, es = spectrum_symmetric(eig, h)
        assert universal_trace(hs, es, h, printed_sign=True) == (-1) ** (h - 1) * universal_trace(hs, es, h)


spectra = st.lists(st.integers(-6, 6), min_size=1, max_size=6)


@given(spectra, st.integers(1, 6))
def test_formula_matches_power_sum(eig, h):
    hs, es = spectrum_symmetric(eig, h)
    direct = sum(Fraction(x) ** h for x in eig)
    assert universal_trace(hs, es, h) == direct
    lower = [sum(Fraction(x) ** s for x in eig) for s in range(1, h)]
    assert universal_trace_from_powers(lower, direct, h) == direct


@given(spectra, st.integers(1, 6))
def test_newton_matches_enumeration(eig, h):
    p = [sum(Fraction(x) ** s for x in eig) for s in range(1, h + 1)]
    hs, es = spectrum_symmetric(eig, h)
    assert power_to_complete(p) == hs[1:]
    assert power_to_elementary(p) == es[1:]


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8))
def test_inverse_consistency(p):
    assert complete_to_power(power_to_complete(p)) == p
    assert elementary_to_power(power_to_elementary(p)) == p


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(1, 8))
def test_duality(eig, top):
    hs, es = spectrum_symmetric(eig, top)
    for t in range(1, top + 1):
        assert sum((-1) ** s * es[s] * hs[t - s] for s in range(t + 1)) == 0


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_matrix_oracle(dim, h, data):
    M = [[data.draw(st.integers(-3, 3)) for _ in range(dim)] for _ in range(dim)]
    es = matrix_elementary(M, h)
    hs = complete_from_elementary(es, h)
    assert universal_trace(hs, es, h) == matrix_power_trace(M, h)
