import random
from pathlib import Path

import pytest

from conftest import random_variety
from partialzeta.counting import count_partial
from partialzeta.errors import PolySyntaxError
from partialzeta.varfile import format_variety, load_variety, loads_variety, parse_variety_text

VARIETIES = Path(__file__).resolve().parent.parent / "varieties"


def test_parse_full_file():
    vf = parse_variety_text("# c\nlabel = demo\np = 5\ne = 2\nvars = x1 x2\neq x1 = x2^2  # tail\n"
                            "map x1\nmap x2\n\nmap x1 + x2\n")
    assert (vf.p, vf.e, vf.variables, vf.label) == (5, 2, ["x1", "x2"], "demo")
    assert vf.equations == ["x1 = x2^2"]
    assert vf.maps == [["x1", "x2"], ["x1 + x2"]]


@pytest.mark.parametrize("text, line, col", [
    ("p = 5\nvars = x1 x2\neq x1^2 = x2 +* 1\n", 3, 15),
    ("p = 5\nvars = x1\nfoo x1\n", 3, 1),
    ("p = 5\nvars = x1 x3\n", 2, 1),
    ("p = five\nvars = x1\n", 1, 1),
    ("p = 2\nvars = x1\n\nmap x1 ++\n", 4, 10),
    ("p = 2\nvars = x1\neq\n", 3, 3),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(PolySyntaxError) as info:
        loads_variety(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


def test_malformed_fixture():
    with pytest.raises(PolySyntaxError) as info:
        load_variety(VARIETIES / "malformed.var")
    assert (info.value.line, info.value.column) == (3, 15)


def test_missing_prime():
    with pytest.raises(PolySyntaxError):
        loads_variety("vars = x1\n")


@pytest.mark.parametrize("name", ["legendre_f5.var", "affine_line_f3.var", "cubic_f5.var", "mixed_f2.var",
                                  "diagonal_f2.var"])
def test_fixtures_round_trip(name):
    X = load_variety(VARIETIES / name)
    Y = loads_variety(format_variety(X))
    assert Y.equations == X.equations and Y.n == X.n and Y.spec == X.spec and Y.label == X.label
    assert format_variety(Y) == format_variety(X)


def test_random_round_trip_preserves_counts():
    rng = random.Random(7)
    for _ in range(15):
        p = rng.choice([2, 3, 5])
        X = random_variety(rng, p, 2, max_degree=3, max_terms=3)
        Y = loads_variety(format_variety(X))
        assert Y.equations == X.equations
        assert count_partial(Y, (1, 1), 1) == count_partial(X, (1, 1), 1)


def test_morphisms_round_trip():
    X = loads_variety("p = 3\nvars = x1 x2\neq x1 = x2\nmap x1 + x2\nmap 2*x1\n\nmap x2^2\n")
    assert len(X.morphisms) == 2
    Y = loads_variety(format_variety(X))
    assert [m.components for m in Y.morphisms] == [m.components for m in X.morphisms]
