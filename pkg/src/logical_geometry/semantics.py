"""Truth-table semantics over a fixed atom universe.

A truth table over ``n`` atoms is stored as a Python ``int`` used as a dense
bit vector of length ``2**n``: bit ``i`` holds the formula's value under the
valuation of *rank* ``i``. Rank ``i`` assigns the ``k``-th atom of the
(lexicographically sorted) universe the value of bit ``k`` of ``i``. So for
the universe ``("D", "V")`` rank 0 is ``D=F V=F``, rank 1 is ``D=T V=F``,
rank 2 is ``D=F V=T`` and rank 3 is ``D=T V=T``. This encoding is frozen;
:meth:`TruthTable.to_bytes` is comparable across runs.

Valuations are ordered lexicographically as tuples of booleans in universe
order (``False < True``). Every witness or counterexample reported by the
package is the least qualifying valuation under that order.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import AtomLimitError, UnknownAtomError, UnsatisfiableConstraintError
from .formula import (TOP, And, Atom, Bottom, Formula, Iff, Implies, Not, Or, Top,
                      conjoin)

MAX_ATOMS = 24

AtomUniverse = tuple  # tuple[str, ...], sorted and duplicate-free


def make_universe(names: Iterable[str]) -> AtomUniverse:
    """Canonical universe: sorted, duplicates removed, size-checked."""
    u = tuple(sorted(set(names)))
    if len(u) > MAX_ATOMS:
        raise AtomLimitError(f"{len(u)} atoms exceeds the limit of {MAX_ATOMS}")
    return u


def universe_of(*formulas: Formula) -> AtomUniverse:
    names: set[str] = set()
    for f in formulas:
        names |= f.atoms()
    return make_universe(names)


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def atom_mask(k: int, n: int) -> int:
    """Bit vector of the ``k``-th atom over ``n`` atoms."""
    size = 1 << n
    block = 1 << k
    period = block << 1
    ones_at_period_starts = full_mask(n) // ((1 << period) - 1)
    return ones_at_period_starts * (((1 << block) - 1) << block) & ((1 << size) - 1)


class Valuation(Mapping):
    """An immutable total assignment of booleans to a universe."""

    __slots__ = ("universe", "rank")

    def __init__(self, universe: AtomUniverse, rank: int):
        if not 0 <= rank < (1 << len(universe)):
            raise ValueError(f"rank {rank} out of range for {len(universe)} atoms")
        object.__setattr__(self, "universe", tuple(universe))
        object.__setattr__(self, "rank", rank)

    def __setattr__(self, name, value):
        raise AttributeError("Valuation is immutable")

    @classmethod
    def from_mapping(cls, universe: AtomUniverse, values: Mapping[str, bool]) -> Valuation:
        missing = set(universe) - set(values)
        if missing:
            raise ValueError(f"valuation is not total; missing {sorted(missing)}")
        extra = set(values) - set(universe)
        if extra:
            raise UnknownAtomError(extra)
        rank = sum(1 << k for k, a in enumerate(universe) if values[a])
        return cls(universe, rank)

    def __getitem__(self, atom: str) -> bool:
        try:
            k = self.universe.index(atom)
        except ValueError:
            raise KeyError(atom) from None
        return bool(self.rank >> k & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.universe)

    def __len__(self) -> int:
        return len(self.universe)

    def __hash__(self):
        return hash((self.universe, self.rank))

    def __repr__(self):
        return f"Valuation({self.format()})"

    def as_tuple(self) -> tuple[bool, ...]:
        return tuple(self[a] for a in self.universe)

    def format(self) -> str:
        return " ".join(f"{a}={'true' if self[a] else 'false'}" for a in self.universe)

    def to_dict(self) -> dict[str, bool]:
        return {a: self[a] for a in self.universe}


def least_rank(bits: int, n: int) -> int | None:
    """Rank of the lexicographically least valuation whose bit is set."""
    if not bits:
        return None
    for k in range(n):
        low = bits & ~atom_mask(k, n)
        if low:
            bits = low
        else:
            bits &= atom_mask(k, n)
    return bits.bit_length() - 1


def least_valuation(bits: int, universe: AtomUniverse) -> Valuation | None:
    rank = least_rank(bits, len(universe))
    return None if rank is None else Valuation(universe, rank)


@dataclass(frozen=True)
class TruthTable:
    universe: AtomUniverse
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > full_mask(len(self.universe)):
            raise ValueError("bit vector longer than 2**|universe|")

    @property
    def values(self) -> tuple[bool, ...]:
        return tuple(bool(self.bits >> i & 1) for i in range(len(self)))

    def __len__(self):
        return 1 << len(self.universe)

    def __getitem__(self, rank: int) -> bool:
        if not 0 <= rank < len(self):
            raise IndexError(rank)
        return bool(self.bits >> rank & 1)

    def value_at(self, valuation: Mapping[str, bool]) -> bool:
        if not isinstance(valuation, Valuation) or valuation.universe != self.universe:
            valuation = Valuation.from_mapping(self.universe, valuation)
        return self[valuation.rank]

    def to_bytes(self) -> bytes:
        return self.bits.to_bytes(max(1, len(self) // 8), "little")

    def is_tautology(self) -> bool:
        return self.bits == full_mask(len(self.universe))

    def is_satisfiable(self) -> bool:
        return self.bits != 0


def evaluate_bits(f: Formula, universe: Sequence[str]) -> int:
    """Bit vector of ``f`` over ``universe`` (which must cover its atoms)."""
    n = len(universe)
    index = {a: k for k, a in enumerate(universe)}
    full = full_mask(n)

    def go(g: Formula) -> int:
        if isinstance(g, Atom):
            return atom_mask(index[g.name], n)
        if isinstance(g, Top):
            return full
        if isinstance(g, Bottom):
            return 0
        if isinstance(g, Not):
            return full ^ go(g.child)
        left, right = go(g.left), go(g.right)
        if isinstance(g, And):
            return left & right
        if isinstance(g, Or):
            return left | right
        if isinstance(g, Implies):
            return (full ^ left) | right
        if isinstance(g, Iff):
            return full ^ (left ^ right)
        raise TypeError(f"not a formula: {g!r}")

    missing = f.atoms() - index.keys()
    if missing:
        raise UnknownAtomError(missing)
    return go(f)


def truth_table(f: Formula, universe: Iterable[str] | None = None) -> TruthTable:
    """Truth table of ``f``; the universe defaults to the atoms of ``f``.

    Raises :class:`UnknownAtomError` if ``f`` mentions an atom outside the
    given universe.
    """
    u = universe_of(f) if universe is None else make_universe(universe)
    return TruthTable(u, evaluate_bits(f, u))


def equivalent(a: Formula, b: Formula) -> bool:
    u = universe_of(a, b)
    return evaluate_bits(a, u) == evaluate_bits(b, u)


def entails(premises: Sequence[Formula], conclusion: Formula,
            constraint: Formula = TOP) -> bool:
    return entailment_counterexample(premises, conclusion, constraint) is None


def entailment_counterexample(premises: Sequence[Formula], conclusion: Formula,
                              constraint: Formula = TOP,
                              universe: Iterable[str] | None = None) -> Valuation | None:
    """Least valuation satisfying ``constraint`` and ``premises`` but not
    ``conclusion``, or ``None`` when the entailment holds."""
    u = (universe_of(constraint, conclusion, *premises) if universe is None
         else make_universe(universe))
    n = len(u)
    rows = evaluate_bits(conjoin([constraint, *premises]), u) & ~evaluate_bits(conclusion, u)
    return least_valuation(rows & full_mask(n), u)


def satisfying_bits(constraint: Formula, universe: AtomUniverse) -> int:
    """Rows of ``universe`` satisfying ``constraint``; error when there are none."""
    bits = evaluate_bits(constraint, universe)
    if not bits:
        raise UnsatisfiableConstraintError(f"constraint {constraint} is unsatisfiable")
    return bits


def valuations(universe: AtomUniverse) -> Iterator[Valuation]:
    """All valuations of ``universe`` in rank order."""
    for rank in range(1 << len(universe)):
        yield Valuation(universe, rank)
