import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import variety
from partialzeta.errors import ZeroDegree
from partialzeta.padic import AxKatzInput, mu, ord_q, verify_axkatz


def test_mu_examples():
    assert mu(AxKatzInput((1, 1, 1, 1), (2,), 2)) == 1
    assert mu(AxKatzInput((2, 2), (5,), 2)) == 0
    assert mu(AxKatzInput((1, 2), (3,), 5)) == 0
    assert mu(AxKatzInput((1, 1, 1), (1,), 3)) == 2
    with pytest.raises(ZeroDegree):
        mu(AxKatzInput((1,), (0,), 2))


def test_ord_q():
    assert ord_q(8, 2) == 3
    assert ord_q(0, 3) == math.inf
    assert ord_q(50, 5, 2) == Fraction(1)
    assert ord_q(-27, 3) == 3


def test_verify_examples():
    plane = variety("p = 3\nvars = x1 x2\neq x1 + x2\n")
    rep = verify_axkatz(plane, (1, 1), range(1, 4))
    assert rep["mu"] == 1 and rep["holds"]
    assert [r["count"] for r in rep["checks"]] == [3, 9, 27]
    empty = variety("p = 2\nvars = x1 x2\n")
    assert verify_axkatz(empty, (1, 1), [1])["applicable"] is False
    cubic = variety("p = 5\nvars = x1 x2\neq x2^2 = x1^3 + 1\n")
    assert verify_axkatz(cubic, (1, 2), [1, 2])["holds"]


def test_violation_is_reported():
    plane = variety("p = 3\nvars = x1 x2\neq x1 + x2\n")
    rep = verify_axkatz(plane, (1, 1), [1, 2], counts=[3, 10])
    assert not rep["holds"]
    assert [r["holds"] for r in rep["checks"]] == [True, False]


def test_constant_equation_means_empty():
    X = variety("p = 2\nvars = x1 x2\neq 1\n")
    rep = verify_axkatz(X, (1, 2), [1, 2])
    assert not rep["applicable"] and rep["holds"]
    assert [r["count"] for r in rep["checks"]] == [0, 0]
    assert not verify_axkatz(X, (1, 2), [1], counts=[4])["holds"]


def test_mu_not_monotone_when_lcm_grows():
    # raising d_1 from 2 to 3 triples the lcm, which outweighs the larger sum
    assert mu(AxKatzInput((2, 2), (1,), 2)) == 2
    assert mu(AxKatzInput((3, 2), (1,), 2)) == 0


ints = st.integers(1, 6)


@given(st.lists(ints, min_size=1, max_size=4), st.lists(ints, min_size=1, max_size=3), st.data())
def test_mu_monotone(d, D, data):
    base = mu(AxKatzInput(tuple(d), tuple(D), 2))
    assert base >= 0
    # nondecreasing in d_i as long as the lcm is unchanged
    L = AxKatzInput(tuple(d), tuple(D), 2).lcm_d
    i = data.draw(st.integers(0, len(d) - 1))
    larger = [v for v in range(d[i] + 1, L + 1) if L % v == 0]
    if larger:
        bigger_d = list(d)
        bigger_d[i] = data.draw(st.sampled_from(larger))
        assert mu(AxKatzInput(tuple(bigger_d), tuple(D), 2)) >= base
    # nonincreasing in each D_j
    j = data.draw(st.integers(0, len(D) - 1))
    bigger_D = list(D)
    bigger_D[j] += data.draw(st.integers(1, 3))
    assert mu(AxKatzInput(tuple(d), tuple(bigger_D), 2)) <= base
