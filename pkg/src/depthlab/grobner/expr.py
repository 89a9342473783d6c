"""Tokenizer and expression trees for polynomial literals.

The same lexer is shared with the session DSL, so every token carries its
line and column for diagnostics.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

PUNCT = "+-*/^()[],;=:<>"


class ParseError(Exception):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, STRING, PUNCT, EOF
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("IDENT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"' and text[j] != "\n":
                j += 1
            if j >= n or text[j] != '"':
                raise ParseError("unterminated string literal", line, start_col)
            toks.append(Token("STRING", text[i + 1:j], line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch in PUNCT:
            toks.append(Token("PUNCT", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    toks.append(Token("EOF", "", line, col))
    return toks


# --- expression trees

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Var, BinOp, Neg, Pow]


class TokenStream:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.pos = 0

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("PUNCT", "IDENT") and t.text == text

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind not in ("PUNCT", "IDENT"):
            found = "end of input" if t.kind == "EOF" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {found}", t.line, t.col)
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            found = "end of input" if t.kind == "EOF" else repr(t.text)
            raise ParseError(f"expected {what}, found {found}", t.line, t.col)
        return self.next()


def parse_expr(ts: TokenStream) -> Expr:
    node = _term(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.next().text
        node = BinOp(op, node, _term(ts))
    return node


def _term(ts: TokenStream) -> Expr:
    node = _unary(ts)
    while ts.at("*") or ts.at("/"):
        op = ts.next().text
        node = BinOp(op, node, _unary(ts))
    return node


def _unary(ts: TokenStream) -> Expr:
    if ts.at("-"):
        ts.next()
        return Neg(_unary(ts))
    if ts.at("+"):
        ts.next()
        return _unary(ts)
    return _power(ts)


def _power(ts: TokenStream) -> Expr:
    base = _atom(ts)
    if ts.at("^"):
        ts.next()
        t = ts.expect_kind("INT", "an integer exponent")
        return Pow(base, int(t.text))
    return base


def _atom(ts: TokenStream) -> Expr:
    t = ts.peek()
    if t.kind == "INT":
        ts.next()
        return Num(int(t.text))
    if t.kind == "IDENT":
        ts.next()
        return Var(t.text)
    if ts.at("("):
        ts.next()
        node = parse_expr(ts)
        ts.expect(")")
        return node
    found = "end of input" if t.kind == "EOF" else repr(t.text)
    raise ParseError(f"expected a polynomial term, found {found}", t.line, t.col)


def parse_expression(text: str) -> Expr:
    ts = TokenStream(tokenize(text))
    node = parse_expr(ts)
    t = ts.peek()
    if t.kind != "EOF":
        raise ParseError(f"unexpected {t.text!r} after expression", t.line, t.col)
    return node


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(node: Expr, prec: int = 0) -> str:
    """Print with the minimum parentheses that reparse to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        s = "-" + format_expr(node.arg, 3)
        return f"({s})" if prec > 1 else s
    if isinstance(node, Pow):
        s = f"{format_expr(node.base, 4)}^{node.exp}"
        return f"({s})" if prec > 3 else s
    p = _PREC[node.op]
    s = f"{format_expr(node.left, p)}{node.op}{format_expr(node.right, p + 1)}"
    return f"({s})" if p < prec else s


def variables(node: Expr) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg,)):
        return variables(node.arg)
    if isinstance(node, Pow):
        return variables(node.base)
    return variables(node.left) | variables(node.right)


def evaluate(node: Expr, leaf_var: Callable, const: Callable):
    """Evaluate a tree given constructors for variables and integer constants."""
    if isinstance(node, Num):
        return const(node.value)
    if isinstance(node, Var):
        return leaf_var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.arg, leaf_var, const)
    if isinstance(node, Pow):
        return evaluate(node.base, leaf_var, const) ** node.exp
    a = evaluate(node.left, leaf_var, const)
    b = evaluate(node.right, leaf_var, const)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return a / b


def rational_value(node: Expr) -> Fraction:
    """Value of a variable-free tree, used for scalar arguments."""
    def no_vars(name):
        raise KeyError(name)

    return evaluate(node, no_vars, Fraction)
