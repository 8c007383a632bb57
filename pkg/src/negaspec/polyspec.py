"""Textual polynomial expressions over lifted variables x1..xn.

Grammar (precedence low to high; whitespace insignificant, no implicit
multiplication):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' uint)?
    base   := uint | var | '(' expr ')'
    var    := 'x' uint

so '^' binds tighter than unary minus: -x1^2 is -(x1^2).  Exponents are
limited to 64.  Evaluation binds each variable to the canonical
representative of the coordinate, runs over unbounded integers, and
reduces mod 2q once at the end.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import GenFunction, coord_table

__all__ = [
    "PolySyntaxError",
    "Const",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Pow",
    "MAX_EXPONENT",
    "parse_poly",
    "format_poly",
    "eval_to_function",
    "poly_function",
]

MAX_EXPONENT = 64


class PolySyntaxError(ValueError):
    """Parse failure with a 1-based source column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Neg:
    operand: "PolyExpr"


@dataclass(frozen=True)
class Add:
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Sub:
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Mul:
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Pow:
    base: "PolyExpr"
    exponent: int


PolyExpr = Const | Var | Neg | Add | Sub | Mul | Pow


@dataclass(frozen=True)
class _Token:
    kind: str  # 'int', 'var', one of '+-*^()', or 'end'
    text: str
    column: int
    value: int = 0


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
            continue
        col = i + 1
        if c.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(_Token("int", src[i:j], col, int(src[i:j])))
            i = j
        elif c == "x":
            j = i + 1
            while j < len(src) and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolySyntaxError("expected digits after 'x'", col)
            tokens.append(_Token("var", src[i:j], col, int(src[i + 1 : j])))
            i = j
        elif c in "+-*^()":
            tokens.append(_Token(c, c, col))
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {c!r}", col)
    tokens.append(_Token("end", "", len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], n: int):
        self.tokens = tokens
        self.pos = 0
        self.n = n

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise PolySyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.column,
            )
        return self.take()

    def expr(self) -> PolyExpr:
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            right = self.term()
            node = Add(node, right) if op.kind == "+" else Sub(node, right)
        return node

    def term(self) -> PolyExpr:
        node = self.factor()
        while self.peek().kind == "*":
            self.take()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> PolyExpr:
        if self.peek().kind == "-":
            self.take()
            return Neg(self.factor())
        node = self.base()
        if self.peek().kind == "^":
            self.take()
            tok = self.expect("int")
            if tok.value > MAX_EXPONENT:
                raise PolySyntaxError(
                    f"exponent {tok.value} exceeds limit {MAX_EXPONENT}",
                    tok.column,
                )
            node = Pow(node, tok.value)
        return node

    def base(self) -> PolyExpr:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return Const(tok.value)
        if tok.kind == "var":
            self.take()
            if not 1 <= tok.value <= self.n:
                raise PolySyntaxError(
                    f"variable x{tok.value} outside x1..x{self.n}",
                    tok.column,
                )
            return Var(tok.value)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        raise PolySyntaxError(
            f"expected a number, variable or '(', found "
            f"{tok.text or 'end of input'!r}",
            tok.column,
        )


def parse_poly(src: str, n: int) -> PolyExpr:
    """Parse src over variables x1..xn; PolySyntaxError on bad input."""
    if n < 1:
        raise ValueError(f"need at least one variable, got n = {n}")
    parser = _Parser(_tokenize(src), n)
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise PolySyntaxError(f"unexpected {tok.text!r}", tok.column)
    return node


def _prec(e: PolyExpr) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, Mul):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def format_poly(e: PolyExpr) -> str:
    """Render with the fewest parentheses; parse(format(e)) == e."""

    def wrap(node: PolyExpr, floor: int) -> str:
        s = render(node)
        return f"({s})" if _prec(node) < floor else s

    def render(node: PolyExpr) -> str:
        if isinstance(node, Const):
            return str(node.value)
        if isinstance(node, Var):
            return f"x{node.index}"
        if isinstance(node, Neg):
            return "-" + wrap(node.operand, 3)
        if isinstance(node, Add):
            return f"{wrap(node.left, 1)} + {wrap(node.right, 2)}"
        if isinstance(node, Sub):
            return f"{wrap(node.left, 1)} - {wrap(node.right, 2)}"
        if isinstance(node, Mul):
            return f"{wrap(node.left, 2)}*{wrap(node.right, 3)}"
        if isinstance(node, Pow):
            return f"{wrap(node.base, 5)}^{node.exponent}"
        raise TypeError(f"not a polynomial node: {node!r}")

    return render(e)


def _eval_at(e: PolyExpr, coords: tuple[int, ...]) -> int:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return coords[e.index - 1]
    if isinstance(e, Neg):
        return -_eval_at(e.operand, coords)
    if isinstance(e, Add):
        return _eval_at(e.left, coords) + _eval_at(e.right, coords)
    if isinstance(e, Sub):
        return _eval_at(e.left, coords) - _eval_at(e.right, coords)
    if isinstance(e, Mul):
        return _eval_at(e.left, coords) * _eval_at(e.right, coords)
    if isinstance(e, Pow):
        return _eval_at(e.base, coords) ** e.exponent
    raise TypeError(f"not a polynomial node: {e!r}")


def eval_to_function(e: PolyExpr, q: int, n: int) -> GenFunction:
    """Tabulate e on Z_q^n over the integers, then reduce mod 2q."""
    rows = coord_table(q, n)
    values = tuple(
        _eval_at(e, tuple(int(c) for c in rows[i])) % (2 * q)
        for i in range(q**n)
    )
    return GenFunction(q, n, values)


def poly_function(src: str, q: int, n: int) -> GenFunction:
    """Parse and tabulate in one step."""
    return eval_to_function(parse_poly(src, n), q, n)
