"""A small expression language for elements of U(g).

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | "i" | "Omega" | "Omega0" | "v_kprime"
            | "E" "(" INT "," INT ")" | "H" "(" SYMBOL ")" | "(" expr ")"

NUMBER is ``a`` or ``a/b``; ``E(i, j)`` is the 1-based matrix unit and ``H(e1)``
the diagonal element attached to a weight symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .scalars import GaussianRational, I

__all__ = [
    "ParseError",
    "EvaluationError",
    "Scalar",
    "Name",
    "Unit",
    "Cartan",
    "Sum",
    "Product",
    "Neg",
    "Power",
    "parse",
    "to_text",
    "evaluate",
]

NAMES = ("Omega", "Omega0", "v_kprime")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Scalar:
    value: GaussianRational


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Unit:
    row: int
    col: int


@dataclass(frozen=True)
class Cartan:
    symbol: str


@dataclass(frozen=True)
class Sum:
    op: str  # "+" or "-"
    left: object
    right: object


@dataclass(frozen=True)
class Product:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^(),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Sum(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = Product(node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take("num")
            if "/" in tok[1]:
                raise ParseError("exponent must be a nonnegative integer", tok[2])
            return Power(base, int(tok[1]))
        return base

    def _int(self) -> int:
        tok = self.take("num")
        if "/" in tok[1]:
            raise ParseError("index must be an integer", tok[2])
        return int(tok[1])

    def atom(self):
        kind, text, where = self.peek()
        if kind == "num":
            self.take()
            return Scalar(GaussianRational.parse(text))
        if kind == "op" and text == "(":
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        if kind == "ident":
            self.take()
            if text == "i":
                return Scalar(I)
            if text in NAMES:
                return Name(text)
            if text == "E":
                self.take("op", "(")
                i = self._int()
                self.take("op", ",")
                j = self._int()
                self.take("op", ")")
                return Unit(i, j)
            if text == "H":
                self.take("op", "(")
                sym = self.take("ident")[1]
                self.take("op", ")")
                return Cartan(sym)
            raise ParseError(f"unknown name {text!r}", where)
        raise ParseError(f"unexpected {text or 'end of input'!r}", where)


def parse(text: str):
    parser = _Parser(text)
    node = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return node


# printing ------------------------------------------------------------------------------

_PREC = {Sum: 1, Product: 2, Neg: 3, Power: 4}


def _prec(node) -> int:
    return _PREC.get(type(node), 5)


def _scalar_text(value: GaussianRational) -> str:
    if value == I:
        return "i"
    if value.is_real() and value.re >= 0:
        return str(value)
    if not value.re and value.im > 0:
        return f"{GaussianRational(value.im)}*i"
    return f"({value})"


def to_text(node) -> str:
    def wrap(child, minimum):
        text = to_text(child)
        return f"({text})" if _prec(child) < minimum else text

    if isinstance(node, Scalar):
        return _scalar_text(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Unit):
        return f"E({node.row},{node.col})"
    if isinstance(node, Cartan):
        return f"H({node.symbol})"
    if isinstance(node, Sum):
        return f"{wrap(node.left, 1)} {node.op} {wrap(node.right, 2)}"
    if isinstance(node, Product):
        return f"{wrap(node.left, 2)}*{wrap(node.right, 3)}"
    if isinstance(node, Neg):
        return f"-{wrap(node.operand, 3)}"
    if isinstance(node, Power):
        return f"{wrap(node.base, 5)}^{node.exponent}"
    raise TypeError(f"not an expression node: {node!r}")


# evaluation ----------------------------------------------------------------------------


def evaluate(node, pair):
    """Value of an expression as an honest PBW element in the pair's Iwasawa ordering."""
    from .hc import casimir_in_pair, even_casimir, ghost_generator
    from .liealg import SuperMatrix
    from .uea import PBWElement, normal_order

    basis = pair.pbw
    alg = pair.alg

    def ev(n):
        if isinstance(n, Scalar):
            return PBWElement.scalar(basis, n.value)
        if isinstance(n, Name):
            if n.name == "Omega":
                return casimir_in_pair(pair)
            if n.name == "Omega0":
                return even_casimir(pair)
            ghost = ghost_generator(pair)
            total = PBWElement(basis, {})
            for c, word in ghost.words:
                total = total + normal_order(list(word), basis).scale(c)
            return total
        if isinstance(n, Unit):
            size = alg.m + alg.n
            if not (1 <= n.row <= size and 1 <= n.col <= size):
                raise EvaluationError(f"E({n.row},{n.col}) is outside the {size}x{size} matrices")
            x = SuperMatrix.unit(alg.m, alg.n, n.row - 1, n.col - 1)
            if not alg.contains(x):
                raise EvaluationError(f"E({n.row},{n.col}) does not lie in {alg.name}")
            return PBWElement.from_matrix(basis, x)
        if isinstance(n, Cartan):
            try:
                x = alg.cartan_element(n.symbol)
            except KeyError as exc:
                raise EvaluationError(str(exc)) from None
            if not alg.contains(x):
                raise EvaluationError(f"H({n.symbol}) does not lie in {alg.name}")
            return PBWElement.from_matrix(basis, x)
        if isinstance(n, Sum):
            left, right = ev(n.left), ev(n.right)
            return left + right if n.op == "+" else left - right
        if isinstance(n, Product):
            return ev(n.left) * ev(n.right)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Power):
            return ev(n.base) ** n.exponent
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)
