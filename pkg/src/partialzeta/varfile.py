"""Plain-text variety files.

    # comment
    label = level 2 Legendre family
    p = 5
    e = 1
    vars = x1 x2 x3
    eq x1^2 = x2*(x2 - 1)*(x2 - x3)
    map x1
    map x2

    map x3

One ``eq`` line per equation.  Each ``map`` line is one target coordinate of
a morphism; consecutive map lines form one morphism and a blank line starts
the next.  Variable names must be x1..xn in order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counting import VarietySpec
from .errors import PolySyntaxError
from .ffield import field_spec
from .poly import PolyMap, parse_equation, parse_poly


@dataclass
class VarietyFile:
    p: int
    e: int = 1
    variables: list[str] = field(default_factory=list)
    equations: list[str] = field(default_factory=list)
    maps: list[list[str]] = field(default_factory=list)
    label: str = ""


def _fail(msg, lineno, col):
    exc = PolySyntaxError(msg)
    exc.line, exc.column = lineno, col
    return exc


def parse_variety_text(text: str) -> VarietyFile:
    settings: dict[str, tuple[str, int]] = {}
    eqs: list[tuple[str, int, int]] = []
    maps: list[list[tuple[str, int, int]]] = []
    current: list | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            current = None
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        word = body.split(None, 1)[0].split("=", 1)[0]
        rest_at = indent + len(word)
        rest = line[rest_at:]
        if word in ("p", "e", "vars", "label"):
            stripped = rest.lstrip()
            if not stripped.startswith("="):
                raise _fail(f"expected '=' after {word}", lineno, rest_at + 1)
            if word in settings:
                raise _fail(f"{word} given twice", lineno, indent + 1)
            value = stripped[1:].strip()
            settings[word] = (value, lineno)
            current = None
        elif word in ("eq", "map"):
            expr = rest.strip()
            col = rest_at + len(rest) - len(rest.lstrip()) + 1
            if not expr:
                raise _fail(f"empty {word} line", lineno, rest_at + 1)
            if word == "eq":
                eqs.append((expr, lineno, col))
                current = None
            else:
                if current is None:
                    current = []
                    maps.append(current)
                current.append((expr, lineno, col))
        else:
            raise _fail(f"unknown directive {word!r}", lineno, indent + 1)

    def integer(key, default=None):
        if key not in settings:
            if default is None:
                raise _fail(f"missing '{key} = ...' line", 1, 1)
            return default
        value, ln = settings[key]
        try:
            return int(value)
        except ValueError:
            raise _fail(f"{key} must be an integer, got {value!r}", ln, 1) from None

    p = integer("p")
    e = integer("e", 1)
    if "vars" not in settings:
        raise _fail("missing 'vars = ...' line", 1, 1)
    names, ln = settings["vars"]
    variables = names.split()
    if not variables:
        raise _fail("no variables declared", ln, 1)
    for i, v in enumerate(variables, start=1):
        if v != f"x{i}":
            raise _fail(f"variables must be x1..xn in order; found {v!r} in position {i}", ln, 1)
    vf = VarietyFile(p, e, variables, label=settings.get("label", ("", 0))[0])
    vf.equations = [x[0] for x in eqs]
    vf.maps = [[x[0] for x in grp] for grp in maps]
    vf._positions = (eqs, maps)  # type: ignore[attr-defined]
    return vf


def _relocate(exc: PolySyntaxError, lineno: int, col: int) -> PolySyntaxError:
    exc.line = lineno
    exc.column = col + (exc.pos or 0)
    return exc


def to_variety(vf: VarietyFile) -> VarietySpec:
    spec = field_spec(vf.p, vf.e)
    n = len(vf.variables)
    eq_pos, map_pos = getattr(vf, "_positions", (None, None))
    equations = []
    for i, text in enumerate(vf.equations):
        try:
            equations.append(parse_equation(text, n, spec))
        except PolySyntaxError as exc:
            if eq_pos:
                raise _relocate(exc, eq_pos[i][1], eq_pos[i][2]) from None
            raise
    morphisms = []
    for g, grp in enumerate(vf.maps):
        comps = []
        for j, text in enumerate(grp):
            try:
                comps.append(parse_poly(text, n, spec))
            except PolySyntaxError as exc:
                if map_pos:
                    raise _relocate(exc, map_pos[g][j][1], map_pos[g][j][2]) from None
                raise
        morphisms.append(PolyMap(tuple(comps)))
    return VarietySpec(spec, n, tuple(equations), tuple(morphisms), vf.label)


def load_variety(path) -> VarietySpec:
    with open(path, encoding="utf-8") as fh:
        return to_variety(parse_variety_text(fh.read()))


def loads_variety(text: str) -> VarietySpec:
    return to_variety(parse_variety_text(text))


def format_variety(X: VarietySpec) -> str:
    """Variety file text that parses back to ``X``."""
    lines = []
    if X.label:
        lines.append(f"label = {X.label}")
    lines.append(f"p = {X.spec.p}")
    if X.spec.e != 1:
        lines.append(f"e = {X.spec.e}")
    lines.append("vars = " + " ".join(f"x{i}" for i in range(1, X.n + 1)))
    for eq in X.equations:
        lines.append(f"eq {eq} = 0")
    for fmap in X.morphisms:
        lines.append("")
        for comp in fmap.components:
            lines.append(f"map {comp}")
    return "\n".join(lines) + "\n"
