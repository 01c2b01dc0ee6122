"""Surface syntax for ring elements, operator files and initial-condition files.

Grammar (whitespace insensitive, products keep their written order):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUM | 'e' | 'D' ('^' INT)? '(' expr ')' | 'D0' ('^' INT)? '(' expr ')'
            | IDENT ["*'"] | '(' expr ')'
    NUM    := INT ('/' INT)?

The star suffix token is ``*'`` so it cannot collide with multiplication.
Operator files hold ``a[<k>] = <expr>`` lines; initial-condition files hold
``entry[<i>][<j>] = <polynomial in x>`` lines.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DuplicateIndexError,
    ExprSyntaxError,
    OperatorFileError,
    UndeclaredGeneratorError,
    UnsupportedRealizationError,
)
from .jets import Jet, MatrixJet, x_jet
from .operators import DiffOperator

# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class UnitE:
    pass


@dataclass(frozen=True)
class GenRef:
    name: str
    star: bool = False


@dataclass(frozen=True)
class DApp:
    which: str  # 'D' or 'D0'
    power: int
    inner: object


@dataclass(frozen=True)
class PowNode:
    base: object
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node) with sign in {+1, -1}


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<INT>\d+)|(?P<IDENT>[A-Za-z_][A-Za-z_0-9]*)|(?P<STAR>\*')"
    r"|(?P<OP>[*+\-^()/]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup == "INT":
            tokens.append(("INT", m.group("INT"), m.start("INT")))
        elif m.lastgroup == "IDENT":
            tokens.append(("IDENT", m.group("IDENT"), m.start("IDENT")))
        elif m.lastgroup == "STAR":
            tokens.append(("STAR", "*'", m.start("STAR")))
        else:
            tokens.append((m.group("OP"), m.group("OP"), m.start("OP")))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, generators=None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.generators = generators

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        node = self.sum()
        tok = self.peek()
        if tok[0] != "END":
            raise ExprSyntaxError(f"unexpected trailing {tok[1]!r}", tok[2])
        return node

    def sum(self):
        terms = []
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            terms.append((1 if op == "+" else -1, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.take()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp = int(self.take("INT")[1])
            return PowNode(base, exp)
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "INT":
            self.take()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.take()
                den = self.take("INT")
                if int(den[1]) == 0:
                    raise ExprSyntaxError("zero denominator", den[2])
                value = value / int(den[1])
            return Num(value)
        if tok[0] == "(":
            self.take()
            node = self.sum()
            self.take(")")
            return node
        if tok[0] == "IDENT":
            self.take()
            name = tok[1]
            if name == "e":
                return UnitE()
            if name in ("D", "D0"):
                power = 1
                if self.peek()[0] == "^":
                    self.take()
                    power = int(self.take("INT")[1])
                self.take("(")
                inner = self.sum()
                self.take(")")
                return DApp(name, power, inner)
            star = False
            if self.peek()[0] == "STAR":
                self.take()
                star = True
            if self.generators is not None and name not in self.generators:
                raise UndeclaredGeneratorError(
                    f"generator {name!r} is not declared (declared: "
                    f"{', '.join(sorted(self.generators)) or 'none'})"
                )
            return GenRef(name, star)
        raise ExprSyntaxError(f"expected a factor, found {tok[1] or 'end of input'!r}", tok[2])


def parse_expr(text: str, generators=None):
    """Parse expression text into an AST; validates generator names if given."""
    return _Parser(text, generators).parse()


# -- evaluation ----------------------------------------------------------------


def evaluate(node, env, one):
    """Evaluate an AST against name bindings and the ring unit."""
    if isinstance(node, Num):
        return one * node.value
    if isinstance(node, UnitE):
        return one
    if isinstance(node, GenRef):
        try:
            value = env[node.name]
        except KeyError:
            raise UndeclaredGeneratorError(f"generator {node.name!r} is not bound") from None
        return value.star() if node.star else value
    if isinstance(node, DApp):
        value = evaluate(node.inner, env, one)
        for _ in range(node.power):
            if node.which == "D":
                value = value.d()
            else:
                if not hasattr(value, "d0"):
                    raise UnsupportedRealizationError("d0 is not defined in this realization")
                value = value.d0()
        return value
    if isinstance(node, PowNode):
        base = evaluate(node.base, env, one)
        value = one
        for _ in range(node.exponent):
            value = value * base
        return value
    if isinstance(node, Product):
        value = evaluate(node.factors[0], env, one)
        for factor in node.factors[1:]:
            value = value * evaluate(factor, env, one)
        return value
    if isinstance(node, Sum):
        value = None
        for sign, term in node.terms:
            piece = evaluate(term, env, one)
            if sign < 0:
                piece = -piece
            value = piece if value is None else value + piece
        return value
    raise TypeError(f"unknown AST node {type(node).__name__}")


def parse_element(text: str, env, one, generators=None):
    return evaluate(parse_expr(text, generators), env, one)


# -- file formats ----------------------------------------------------------------

_COEFF_LINE_RE = re.compile(r"^a\[(\d+)\]\s*=\s*(.+)$")
_ENTRY_LINE_RE = re.compile(r"^entry\[(\d+)\]\[(\d+)\]\s*=\s*(.+)$")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_operator_text(text: str, env, one, realization, generators=None) -> DiffOperator:
    """Parse `a[k] = expr` lines into an operator; missing powers are zero."""
    coeffs = {}
    for lineno, line in _content_lines(text):
        m = _COEFF_LINE_RE.match(line)
        if not m:
            raise OperatorFileError("expected 'a[<k>] = <expr>'", lineno)
        k = int(m.group(1))
        if k in coeffs:
            raise DuplicateIndexError(f"coefficient a[{k}] assigned twice", lineno)
        try:
            coeffs[k] = parse_element(m.group(2), env, one, generators)
        except (ExprSyntaxError, UndeclaredGeneratorError) as exc:
            raise OperatorFileError(str(exc), lineno) from exc
    if not coeffs:
        raise OperatorFileError("operator file declares no coefficients", 1)
    top = max(coeffs)
    zero = realization.zero
    return DiffOperator([coeffs.get(k, zero) for k in range(top + 1)], realization)


def parse_entry_text(text: str, dim: int, x_order) -> MatrixJet:
    """Parse `entry[i][j] = polynomial in x` lines into a matrix jet."""
    env = {"x": x_jet(x_order)}
    one = Jet((1,), x_order)
    zero = Jet((0,), x_order)
    entries = [[zero for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for lineno, line in _content_lines(text):
        m = _ENTRY_LINE_RE.match(line)
        if not m:
            raise OperatorFileError("expected 'entry[<i>][<j>] = <polynomial>'", lineno)
        i, j = int(m.group(1)), int(m.group(2))
        if not (0 <= i < dim and 0 <= j < dim):
            raise OperatorFileError(f"entry index ({i},{j}) outside dim {dim}", lineno)
        if (i, j) in seen:
            raise DuplicateIndexError(f"entry[{i}][{j}] assigned twice", lineno)
        seen.add((i, j))
        try:
            entries[i][j] = parse_element(m.group(3), env, one, generators={"x"})
        except (ExprSyntaxError, UndeclaredGeneratorError) as exc:
            raise OperatorFileError(str(exc), lineno) from exc
    return MatrixJet(entries)
