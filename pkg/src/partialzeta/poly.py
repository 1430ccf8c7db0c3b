"""Sparse multivariate polynomials over F_q and their text format.

Grammar (whitespace ignored)::

    expr  := term (('+' | '-') term)*
    term  := unary (['*'] unary)*          # juxtaposition multiplies: 2x1, x2(x2-1)
    unary := '-' unary | '+' unary | power
    power := atom ['^' INTEGER]
    atom  := INTEGER | 'x' INTEGER | 't' | '(' expr ')'

``t`` is the generator of F_q over F_p (only legal when e > 1).  Integer
literals are reduced mod p and powers of ``t`` modulo the base modulus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import GeneratorNotAllowed, PolySyntaxError, UnknownVariable, ZeroPolynomial
from .ffield import AmbientField, FieldElement, FieldSpec, poly_mod, poly_mul

Exps = tuple[int, ...]
Coeff = tuple[int, ...]


# -- F_q coefficient arithmetic (tuples of length e, low degree first) ---------


def _fq_norm(spec: FieldSpec, c) -> Coeff:
    c = poly_mod([v % spec.p for v in c], list(spec.base_modulus), spec.p) if len(c) > spec.e else [v % spec.p for v in c]
    return tuple(c) + (0,) * (spec.e - len(c))


def _fq_add(spec, a, b):
    return tuple((x + y) % spec.p for x, y in zip(a, b))


def _fq_mul(spec, a, b):
    return _fq_norm(spec, poly_mul(list(a), list(b), spec.p))


def _is_zero(c):
    return not any(c)


def _grlex_key(exps):
    return (-sum(exps), tuple(-x for x in exps))


class MultiPoly:
    """Polynomial in x1..xn with coefficients in F_q.

    ``terms`` maps exponent tuples to coefficient tuples (c_0, ..., c_{e-1})
    meaning c_0 + c_1 t + ... ; zero coefficients are never stored.
    """

    __slots__ = ("spec", "n", "terms")

    def __init__(self, spec: FieldSpec, n: int, terms: Mapping[Exps, Sequence[int]] | None = None):
        self.spec = spec
        self.n = n
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not have length {n}")
            c = _fq_norm(spec, c)
            if not _is_zero(c):
                clean[tuple(exps)] = c
        self.terms = dict(sorted(clean.items(), key=lambda kv: _grlex_key(kv[0])))

    @classmethod
    def constant(cls, spec, n, value):
        if isinstance(value, int):
            value = (value,)
        return cls(spec, n, {(0,) * n: value})

    @classmethod
    def variable(cls, spec, n, i):
        """The monomial x_i (1-based)."""
        exps = [0] * n
        exps[i - 1] = 1
        return cls(spec, n, {tuple(exps): (1,)})

    @classmethod
    def generator(cls, spec, n):
        return cls(spec, n, {(0,) * n: (0, 1)})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if isinstance(other, int):
            return MultiPoly.constant(self.spec, self.n, other)
        if other.spec != self.spec or other.n != self.n:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = _fq_add(self.spec, out.get(exps, (0,) * self.spec.e), c)
        return MultiPoly(self.spec, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.spec, self.n, {x: tuple(-v for v in c) for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out: dict = {}
        zero = (0,) * self.spec.e
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                out[exps] = _fq_add(self.spec, out.get(exps, zero), _fq_mul(self.spec, c1, c2))
        return MultiPoly(self.spec, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.spec, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.spec == other.spec and self.n == other.n \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, self.n, tuple(self.terms.items())))

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return max(sum(x) for x in self.terms)

    def variables_used(self) -> set[int]:
        return {i + 1 for exps in self.terms for i, v in enumerate(exps) if v}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            mono = "*".join(f"x{i + 1}" if v == 1 else f"x{i + 1}^{v}"
                            for i, v in enumerate(exps) if v)
            cs = _format_coeff(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"

    def embedded(self, F: AmbientField) -> list[tuple[Exps, FieldElement]]:
        """Terms with coefficients mapped into F through ``F.base_root``."""
        return [(exps, F.embed_base(c)) for exps, c in self.terms.items()]


def _format_coeff(c: Coeff) -> str:
    pieces = []
    for j in range(len(c) - 1, -1, -1):
        v = c[j]
        if not v:
            continue
        if j == 0:
            pieces.append(str(v))
        else:
            t = "t" if j == 1 else f"t^{j}"
            pieces.append(t if v == 1 else f"{v}*{t}")
    if len(pieces) == 1:
        return pieces[0]
    return "(" + " + ".join(pieces) + ")"


@dataclass(frozen=True)
class PolyMap:
    """A morphism X -> A^m given by its coordinate polynomials."""

    components: tuple[MultiPoly, ...]

    def __post_init__(self):
        if len({c.n for c in self.components}) > 1:
            raise ValueError("all components must have the same number of variables")

    @property
    def target_dim(self):
        return len(self.components)


# -- parser --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*^()]))")


def _tokenize(text):
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, n, spec):
        self.text = text
        self.n = n
        self.spec = spec
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_atom(self, tok):
        return tok[0] in ("int", "var", "ident") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.unary()
            elif self._starts_atom(tok):
                acc = acc * self.unary()
            else:
                return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("-", "+"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", exp_tok)
            return base ** int(exp_tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return MultiPoly.constant(self.spec, self.n, int(val) % self.spec.p)
        if kind == "var":
            i = int(val[1:])
            if not 1 <= i <= self.n:
                raise UnknownVariable(f"unknown variable {val} (expected x1..x{self.n})", pos, self.text)
            return MultiPoly.variable(self.spec, self.n, i)
        if kind == "ident":
            if val == "t":
                if self.spec.e == 1:
                    raise GeneratorNotAllowed("generator t is only allowed when e > 1", pos, self.text)
                return MultiPoly.generator(self.spec, self.n)
            raise UnknownVariable(f"unknown variable {val}", pos, self.text)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {val!r}", tok)


def parse_poly(text: str, n: int, spec: FieldSpec) -> MultiPoly:
    return _Parser(text, n, spec).parse()


def parse_equation(text: str, n: int, spec: FieldSpec) -> MultiPoly:
    """Parse ``lhs = rhs`` (as lhs - rhs) or a bare expression."""
    if text.count("=") > 1:
        raise PolySyntaxError("more than one '='", text.index("=", text.index("=") + 1), text)
    if "=" not in text:
        return parse_poly(text, n, spec)
    cut = text.index("=")
    lhs = parse_poly(text[:cut], n, spec)
    try:
        rhs = parse_poly(text[cut + 1:], n, spec)
    except PolySyntaxError as exc:
        if exc.pos is not None:
            exc.pos += cut + 1
        exc.text = text
        raise
    return lhs - rhs


# -- evaluation and specialization ----------------------------------------------


class AmbientPoly:
    """Polynomial whose coefficients already live in an ambient field.

    ``variables`` records the original (1-based) indices still free.
    """

    __slots__ = ("field", "variables", "terms")

    def __init__(self, field: AmbientField, variables: Sequence[int], terms: Mapping[Exps, FieldElement]):
        self.field = field
        self.variables = tuple(variables)
        self.terms = {x: c for x, c in terms.items() if not c.is_zero()}

    @classmethod
    def from_multipoly(cls, f: MultiPoly, F: AmbientField):
        return cls(F, range(1, f.n + 1), dict(f.embedded(F)))

    def is_constant(self):
        return all(not any(x) for x in self.terms)

    def constant_value(self) -> FieldElement:
        return self.terms.get((0,) * len(self.variables), self.field.zero())

    def specialize(self, var_index: int, value: FieldElement) -> "AmbientPoly":
        pos = self.variables.index(var_index)
        F = self.field
        out: dict = {}
        powers = {}
        for exps, c in self.terms.items():
            k = exps[pos]
            if k not in powers:
                powers[k] = F.pow(value, k)
            rest = exps[:pos] + exps[pos + 1:]
            term = F.mul(c, powers[k])
            out[rest] = F.add(out[rest], term) if rest in out else term
        return AmbientPoly(F, self.variables[:pos] + self.variables[pos + 1:], out)

    def evaluate(self, point: Sequence[FieldElement]) -> FieldElement:
        return _eval_terms(self.field, self.terms.items(), point)


def _eval_terms(F, terms, point):
    acc = F.zero()
    memo = {}
    for exps, c in terms:
        val = c
        for i, k in enumerate(exps):
            if k:
                if (i, k) not in memo:
                    memo[(i, k)] = F.pow(point[i], k)
                val = F.mul(val, memo[(i, k)])
        acc = F.add(acc, val)
    return acc


def evaluate(f: MultiPoly, point: Sequence[FieldElement], F: AmbientField) -> FieldElement:
    """Value of ``f`` at ``point`` (coordinates in F)."""
    if len(point) != f.n:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.n} variables")
    return _eval_terms(F, f.embedded(F), point)


def specialize(f, var_index: int, value: FieldElement, F: AmbientField | None = None) -> AmbientPoly:
    """Substitute x_{var_index} := value; returns a polynomial over the ambient field."""
    if isinstance(f, MultiPoly):
        if not 1 <= var_index <= f.n:
            raise ValueError(f"variable index {var_index} out of range 1..{f.n}")
        f = AmbientPoly.from_multipoly(f, F)
    return f.specialize(var_index, value)


def total_degree(f: MultiPoly) -> int:
    return f.total_degree()
