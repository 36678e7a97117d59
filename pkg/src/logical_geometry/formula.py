"""Propositional formula trees.

Formulas are immutable, hashable dataclasses. ``str(f)`` produces the
canonical ASCII concrete syntax accepted by :func:`logical_geometry.parse`,
using the fewest parentheses that keep the tree intact::

    <->   loosest, right-associative (nested chains are always parenthesized)
    ->    right-associative (nested chains are always parenthesized)
    |     left-associative
    &     left-associative
    !     prefix, binds tightest
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"true", "false"})


class Formula:
    __slots__ = ()

    def atoms(self) -> frozenset[str]:
        out: set[str] = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Atom):
                out.add(node.name)
            else:
                stack.extend(node.children())
        return frozenset(out)

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Implies(self, other)

    def __str__(self):
        return _render(self, _ASCII)


@dataclass(frozen=True, slots=True, repr=False)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENTIFIER.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"{self.name!r} is a reserved word")

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, slots=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return "Bottom()"


@dataclass(frozen=True, slots=True, repr=False)
class Not(Formula):
    child: Formula

    def children(self):
        return (self.child,)

    def __repr__(self):
        return f"Not({self.child!r})"


@dataclass(frozen=True, slots=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


class Implies(_Binary):
    __slots__ = ()


class Iff(_Binary):
    __slots__ = ()


TOP = Top()
BOTTOM = Bottom()

# (precedence, associativity) per binary connective; higher binds tighter.
_BINARY = {
    Iff: (1, "right"),
    Implies: (2, "right"),
    Or: (3, "left"),
    And: (4, "left"),
}
_NOT_PREC = 5

_ASCII = {Not: "!", And: " & ", Or: " | ", Implies: " -> ", Iff: " <-> ",
          Top: "true", Bottom: "false", "paren": ("(", ")")}
_LATEX = {Not: r"\neg ", And: r" \wedge ", Or: r" \vee ", Implies: r" \rightarrow ",
          Iff: r" \leftrightarrow ", Top: r"\top", Bottom: r"\bot", "paren": ("(", ")")}


def _prec(f: Formula) -> int:
    entry = _BINARY.get(type(f))
    return entry[0] if entry else _NOT_PREC + 1


def _render(f: Formula, table) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, (Top, Bottom)):
        return table[type(f)]
    lp, rp = table["paren"]
    if isinstance(f, Not):
        inner = _render(f.child, table)
        if isinstance(f.child, _Binary):
            inner = f"{lp}{inner}{rp}"
        return table[Not] + inner
    prec, assoc = _BINARY[type(f)]
    left, right = _render(f.left, table), _render(f.right, table)
    lprec, rprec = _prec(f.left), _prec(f.right)
    if lprec < prec or (lprec == prec and assoc == "right"):
        left = f"{lp}{left}{rp}"
    if rprec <= prec:
        right = f"{lp}{right}{rp}"
    return f"{left}{table[type(f)]}{right}"


def to_latex(f: Formula) -> str:
    """Render ``f`` as LaTeX math-mode source (without the ``$`` delimiters)."""
    return _render(f, _LATEX)


def disjoin(parts: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; the empty disjunction is ``false``."""
    parts = list(parts)
    return reduce(Or, parts) if parts else BOTTOM


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``true``."""
    parts = list(parts)
    return reduce(And, parts) if parts else TOP


def flatten(f: Formula, kind: type) -> list[Formula]:
    """Leaves of the maximal ``kind``-chain rooted at ``f`` (And or Or)."""
    if isinstance(f, kind):
        return flatten(f.left, kind) + flatten(f.right, kind)
    return [f]
