"""Concrete syntax of the small synchronous imperative language.

Statements: ``skip``, assignment ``x := e``, sequencing with ``;``
(right associative, trailing separator tolerated before a block end),
``if e then c else c``, ``while e do c done``, and ``tick(e, ...)``
with one argument per output component.  Expressions: ``tt``, ``ff``,
integer literals, dereference ``!x``, ``get`` with an optional
component index, decrement ``e - 1``, zero test ``e != 0``, and
conjunction ``&&``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from ..errors import PsySyntaxError

KEYWORDS = {
    "skip",
    "if",
    "then",
    "else",
    "while",
    "do",
    "done",
    "tick",
    "get",
    "tt",
    "ff",
}


@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Deref:
    target: "Ast"


@dataclass(frozen=True)
class Assign:
    target: "Ast"
    value: "Ast"


@dataclass(frozen=True)
class Seq:
    first: "Ast"
    second: "Ast"


@dataclass(frozen=True)
class If:
    cond: "Ast"
    then_branch: "Ast"
    else_branch: "Ast"


@dataclass(frozen=True)
class While:
    cond: "Ast"
    body: "Ast"


@dataclass(frozen=True)
class Tick:
    args: tuple


@dataclass(frozen=True)
class Get:
    index: int


@dataclass(frozen=True)
class Dec:
    inner: "Ast"


@dataclass(frozen=True)
class NotZero:
    inner: "Ast"


@dataclass(frozen=True)
class Conj:
    left: "Ast"
    right: "Ast"


Ast = Union[
    Skip,
    VarRef,
    BoolLit,
    IntLit,
    Deref,
    Assign,
    Seq,
    If,
    While,
    Tick,
    Get,
    Dec,
    NotZero,
    Conj,
]


def is_value(node: Ast) -> bool:
    return isinstance(node, (BoolLit, IntLit))


def unparse(node: Ast) -> str:
    """Concrete text of a program; inverse of parse up to whitespace."""
    if isinstance(node, Skip):
        return "skip"
    if isinstance(node, VarRef):
        return node.name
    if isinstance(node, BoolLit):
        return "tt" if node.value else "ff"
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, Deref):
        return f"!{unparse(node.target)}"
    if isinstance(node, Assign):
        return f"{unparse(node.target)} := {unparse(node.value)}"
    if isinstance(node, Seq):
        return f"{unparse(node.first)}; {unparse(node.second)}"
    if isinstance(node, If):
        return (
            f"if {unparse(node.cond)} then {unparse(node.then_branch)}"
            f" else {unparse(node.else_branch)}"
        )
    if isinstance(node, While):
        return f"while {unparse(node.cond)} do {unparse(node.body)} done"
    if isinstance(node, Tick):
        return "tick(" + ", ".join(unparse(a) for a in node.args) + ")"
    if isinstance(node, Get):
        return f"get {node.index}" if node.index else "get"
    if isinstance(node, Dec):
        return f"({unparse(node.inner)} - 1)"
    if isinstance(node, NotZero):
        return f"({unparse(node.inner)} != 0)"
    if isinstance(node, Conj):
        return f"({unparse(node.left)} && {unparse(node.right)})"
    raise TypeError(f"not an AST node: {node!r}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_SPEC = [
    ("INT", r"\d+"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r":=|&&|!=|[;(),!\-]"),
    ("SKIPWS", r"[ \t]+"),
    ("COMMENT", r"#[^\n]*"),
    ("NEWLINE", r"\n"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC))


def tokenize(text: str) -> list[Token]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            col = pos - line_start + 1
            raise PsySyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = match.lastgroup
        value = match.group()
        col = pos - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind in ("SKIPWS", "COMMENT"):
            pass
        elif kind == "IDENT" and value in KEYWORDS:
            tokens.append(Token(value, value, line, col))
        elif kind == "OP":
            tokens.append(Token(value, value, line, col))
        else:
            tokens.append(Token(kind, value, line, col))
        pos = match.end()
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


_SEQ_TERMINATORS = {"else", "done", "EOF"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise PsySyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.line,
                tok.column,
            )
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise PsySyntaxError(message, tok.line, tok.column)

    def parse_program(self) -> Ast:
        prog = self.parse_seq()
        self.expect("EOF")
        return prog

    def parse_seq(self) -> Ast:
        items = [self.parse_stmt()]
        while self.peek().kind == ";":
            self.advance()
            if self.peek().kind in _SEQ_TERMINATORS:
                break
            items.append(self.parse_stmt())
        node = items[-1]
        for item in reversed(items[:-1]):
            node = Seq(item, node)
        return node

    def parse_stmt(self) -> Ast:
        tok = self.peek()
        if tok.kind == "skip":
            self.advance()
            return Skip()
        if tok.kind == "tick":
            self.advance()
            self.expect("(")
            args = [self.parse_expr()]
            while self.peek().kind == ",":
                self.advance()
                args.append(self.parse_expr())
            self.expect(")")
            return Tick(tuple(args))
        if tok.kind == "if":
            self.advance()
            cond = self.parse_expr()
            self.expect("then")
            then_branch = self.parse_seq()
            self.expect("else")
            else_branch = self.parse_seq()
            return If(cond, then_branch, else_branch)
        if tok.kind == "while":
            self.advance()
            cond = self.parse_expr()
            self.expect("do")
            body = self.parse_seq()
            self.expect("done")
            return While(cond, body)
        if tok.kind == "IDENT":
            name = self.advance().text
            self.expect(":=")
            return Assign(VarRef(name), self.parse_expr())
        self.fail(f"expected a statement, found {tok.text or 'end of input'!r}")

    def parse_expr(self) -> Ast:
        node = self.parse_cmp()
        while self.peek().kind == "&&":
            self.advance()
            node = Conj(node, self.parse_cmp())
        return node

    def parse_cmp(self) -> Ast:
        node = self.parse_add()
        if self.peek().kind == "!=":
            self.advance()
            zero = self.expect("INT")
            if zero.text != "0":
                raise PsySyntaxError(
                    "only the zero test `!= 0` is supported", zero.line, zero.column
                )
            node = NotZero(node)
        return node

    def parse_add(self) -> Ast:
        node = self.parse_unary()
        while self.peek().kind == "-":
            self.advance()
            one = self.expect("INT")
            if one.text != "1":
                raise PsySyntaxError(
                    "only the decrement `- 1` is supported", one.line, one.column
                )
            node = Dec(node)
        return node

    def parse_unary(self) -> Ast:
        if self.peek().kind == "!":
            self.advance()
            return Deref(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> Ast:
        tok = self.peek()
        if tok.kind == "tt":
            self.advance()
            return BoolLit(True)
        if tok.kind == "ff":
            self.advance()
            return BoolLit(False)
        if tok.kind == "INT":
            self.advance()
            return IntLit(int(tok.text))
        if tok.kind == "get":
            self.advance()
            if self.peek().kind == "INT":
                return Get(int(self.advance().text))
            return Get(0)
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind == "IDENT":
            self.advance()
            return VarRef(tok.text)
        self.fail(f"expected an expression, found {tok.text or 'end of input'!r}")


def parse(source: str) -> Ast:
    """Parse a program body; raises PsySyntaxError with line and column."""
    return _Parser(tokenize(source)).parse_program()
