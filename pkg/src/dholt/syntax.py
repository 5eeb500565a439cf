"""Lexer and parser for the THF fragment with ``!>`` dependent types.

The parser produces a small raw tree of tuples; name resolution and typing
happen in :mod:`dholt.tptp`.

Raw nodes::

    ("word", name)              lower-case word, $-word or quoted atom
    ("uvar", name)              upper-case variable
    ("app", fn, arg)
    ("not", arg)
    ("bin", op, lhs, rhs)       op in & | => <= <=> <~> ~& ~| >
    ("eq", lhs, rhs, negated, annotation-or-None)
    ("quant", q, [(name, type-or-None), ...], body)   q in ! ? ^ !>
    ("typed", name, type)       only at the top of a type declaration

Each node carries its source position in a side table (see ``Parser.pos``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<sq>'(?:[^'\\]|\\.)*')
  | (?P<dq>"(?:[^"\\]|\\.)*")
  | (?P<word>\$\$?[A-Za-z0-9_]+|[a-z][A-Za-z0-9_]*)
  | (?P<uvar>[A-Z][A-Za-z0-9_]*)
  | (?P<num>[0-9]+)
  | (?P<op><~>|<=>|!>|!=|=>|<=|~&|~\||[()\[\],.:{}@=~&|>!?^*+])
""", re.S | re.X)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            if kind == "sq":
                kind, tok = "word", tok[1:-1]
            out.append(Token(kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n") if kind == "ws" else 0
        if nl:
            line += nl
            line_start = pos + m.group().rfind("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


@dataclass
class Annotated:
    """One ``thf(name, role, formula).`` entry."""

    name: str
    role: str
    formula: tuple
    line: int
    col: int


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.pos: dict[int, tuple[int, int]] = {}

    # -- token helpers ----------------------------------------------------------
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == text

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.kind != "op" or t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def error(self, message: str):
        t = self.peek()
        raise ParseError(message, t.line, t.col)

    def node(self, tok: Token, *parts) -> tuple:
        n = tuple(parts)
        self.pos.setdefault(id(n), (tok.line, tok.col))
        return n

    # -- entries ----------------------------------------------------------------
    def entries(self) -> list[Annotated]:
        out = []
        while self.peek().kind != "eof":
            t = self.next()
            if t.kind != "word" or t.text not in ("thf", "include"):
                raise ParseError(f"expected thf(...), found {t.text!r}", t.line, t.col)
            if t.text == "include":
                raise ParseError("include directives are not supported", t.line, t.col)
            self.expect("(")
            name = self.name()
            self.expect(",")
            rt = self.next()
            if rt.kind != "word":
                raise ParseError("expected a formula role", rt.line, rt.col)
            role = rt.text.split("-")[0]
            self.expect(",")
            if role == "type":
                formula = self.type_decl()
            else:
                formula = self.formula()
            while self.at(","):  # source/useful-info annotations are skipped
                self.next()
                self.skip_balanced()
            self.expect(")")
            self.expect(".")
            out.append(Annotated(name, role, formula, t.line, t.col))
        return out

    def skip_balanced(self):
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                self.error("unterminated annotation")
            if t.kind == "op" and t.text in "([":
                depth += 1
            elif t.kind == "op" and t.text in ")]":
                if depth == 0:
                    return
                depth -= 1
            elif t.kind == "op" and t.text == "," and depth == 0:
                return
            self.next()

    def name(self) -> str:
        t = self.next()
        if t.kind in ("word", "num", "uvar"):
            return t.text
        raise ParseError("expected a name", t.line, t.col)

    def type_decl(self) -> tuple:
        if self.at("("):
            save = self.i
            self.next()
            if self.peek().kind == "word" and self.peek(1).kind == "op" and self.peek(1).text == ":":
                d = self.type_decl()
                self.expect(")")
                return d
            self.i = save
        t = self.next()
        if t.kind != "word":
            raise ParseError("expected a symbol in a type declaration", t.line, t.col)
        self.expect(":")
        return self.node(t, "typed", t.text, self.arrow_level())

    # -- formulas ---------------------------------------------------------------
    def formula(self) -> tuple:
        lhs = self.implication()
        t = self.peek()
        if t.kind == "op" and t.text in ("<=>", "<~>"):
            self.next()
            return self.node(t, "bin", t.text, lhs, self.implication())
        return lhs

    def implication(self) -> tuple:
        lhs = self.disjunction()
        t = self.peek()
        if t.kind == "op" and t.text == "=>":
            self.next()
            return self.node(t, "bin", "=>", lhs, self.implication())
        if t.kind == "op" and t.text == "<=":
            self.next()
            return self.node(t, "bin", "<=", lhs, self.implication())
        return lhs

    def disjunction(self) -> tuple:
        lhs = self.conjunction()
        while self.peek().kind == "op" and self.peek().text in ("|", "~|"):
            t = self.next()
            lhs = self.node(t, "bin", t.text, lhs, self.conjunction())
        return lhs

    def conjunction(self) -> tuple:
        lhs = self.arrow_level()
        while self.peek().kind == "op" and self.peek().text in ("&", "~&"):
            t = self.next()
            lhs = self.node(t, "bin", t.text, lhs, self.arrow_level())
        return lhs

    def arrow_level(self) -> tuple:
        lhs = self.equation()
        t = self.peek()
        if t.kind == "op" and t.text == ">":
            self.next()
            return self.node(t, "bin", ">", lhs, self.arrow_level())
        return lhs

    def equation(self) -> tuple:
        lhs = self.unary()
        t = self.peek()
        if t.kind == "op" and t.text in ("=", "!="):
            self.next()
            ann = None
            if self.at("{"):
                self.next()
                ann = self.arrow_level()
                self.expect("}")
            return self.node(t, "eq", lhs, self.unary(), t.text == "!=", ann)
        return lhs

    def unary(self) -> tuple:
        t = self.peek()
        if t.kind == "op" and t.text == "~":
            self.next()
            return self.node(t, "not", self.unary())
        return self.application()

    def application(self) -> tuple:
        fn = self.unit()
        while self.at("@"):
            t = self.next()
            fn = self.node(t, "app", fn, self.unit())
        return fn

    def unit(self) -> tuple:
        t = self.peek()
        if t.kind == "op" and t.text == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind == "op" and t.text in ("!", "?", "^", "!>"):
            self.next()
            self.expect("[")
            binders = [self.binder()]
            while self.at(","):
                self.next()
                binders.append(self.binder())
            self.expect("]")
            self.expect(":")
            return self.node(t, "quant", t.text, binders, self.equation())
        if t.kind == "op" and t.text == "~":
            return self.unary()
        self.next()
        if t.kind == "word":
            return self.node(t, "word", t.text)
        if t.kind == "uvar":
            return self.node(t, "uvar", t.text)
        if t.kind == "num":
            raise ParseError(f"numeric literal {t.text} is not supported", t.line, t.col)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)

    def binder(self) -> tuple:
        t = self.next()
        if t.kind != "uvar":
            raise ParseError("expected a variable", t.line, t.col)
        ty = None
        if self.at(":"):
            self.next()
            ty = self.arrow_level()
        return (t.text, ty)


def parse_entries(text: str) -> tuple[list[Annotated], dict]:
    """Parse all annotated formulas; also return the node-position table."""
    p = Parser(text)
    return p.entries(), p.pos
