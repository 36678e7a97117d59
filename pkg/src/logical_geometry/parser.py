"""Recursive-descent parser for the formula language.

Grammar (whitespace insignificant)::

    iff     := imp ( "<->" iff )?
    imp     := disj ( "->" imp )?
    disj    := conj ( "|" conj )*
    conj    := unary ( "&" unary )*
    unary   := "!" unary | atom
    atom    := IDENT | "true" | "false" | "(" iff ")"

Unicode aliases ``¬ ∧ ∨ → ↔ ⊤ ⊥`` are accepted for ``! & | -> <-> true
false``.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from .errors import FormulaSyntaxError
from .formula import BOTTOM, TOP, And, Atom, Formula, Iff, Implies, Not, Or


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_ALIASES = {"¬": "!", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "⊤": "true", "⊥": "false"}
_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|[!&|()]|[¬∧∨→↔])
  | (?P<const>[⊤⊥])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

_DESCRIBE = {"!": "'!'", "&": "'&'", "|": "'|'", "->": "'->'", "<->": "'<->'",
             "(": "'('", ")": "')'", "ident": "atom", "true": "'true'",
             "false": "'false'", "eof": "end of input"}
_OPERAND_START = ("!", "(", "ident", "true", "false")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup == "ident":
            word = m.group()
            kind = word if word in ("true", "false") else "ident"
            tokens.append(Token(kind, word, pos))
        elif m.lastgroup != "ws":
            sym = _ALIASES.get(m.group(), m.group())
            tokens.append(Token(sym, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected):
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"unexpected {found}", self.text, tok.pos,
                                 {_DESCRIBE[e] for e in expected})

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek.kind != "eof":
            self.fail(["<->", "->", "|", "&", "eof"])
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek.kind == "<->":
            self.i += 1
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek.kind == "->":
            self.i += 1
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek.kind == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek.kind == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek
        if tok.kind == "!":
            self.i += 1
            return Not(self.unary())
        if tok.kind == "ident":
            self.i += 1
            return Atom(tok.text)
        if tok.kind == "true":
            self.i += 1
            return TOP
        if tok.kind == "false":
            self.i += 1
            return BOTTOM
        if tok.kind == "(":
            self.i += 1
            f = self.iff()
            if self.peek.kind != ")":
                self.fail([")", "<->", "->", "|", "&"])
            self.i += 1
            return f
        self.fail(_OPERAND_START)


def parse(text: str) -> Formula:
    """Parse formula source into a :class:`Formula` tree.

    >>> parse("(V -> D) -> (D -> V)")
    Implies(Implies(Atom('V'), Atom('D')), Implies(Atom('D'), Atom('V')))

    Raises :class:`FormulaSyntaxError` carrying the failing offset and the
    set of tokens that would have been accepted.
    """
    if not isinstance(text, str):
        raise TypeError(f"formula source must be str, not {type(text).__name__}")
    return _Parser(text).parse()
