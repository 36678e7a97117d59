"""Aristotelian classification of formula pairs.

Relations are evaluated only over valuations satisfying a background
constraint, so extra-logical knowledge such as "P and Q are known to be
contraries" can be supplied as ``!(P & Q)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .formula import TOP, Formula
from .semantics import (AtomUniverse, Valuation, evaluate_bits, full_mask,
                        least_valuation, make_universe, satisfying_bits, universe_of)


class Kind(enum.Enum):
    CONTRADICTORY = "contradictory"
    CONTRARY = "contrary"
    SUBCONTRARY = "subcontrary"
    SUBALTERNATION_LEFT_TO_RIGHT = "subalternation-left-to-right"
    SUBALTERNATION_RIGHT_TO_LEFT = "subalternation-right-to-left"
    EQUIVALENT = "equivalent"
    UNCONNECTED = "unconnected"
    DEGENERATE = "degenerate"

    @property
    def is_subalternation(self) -> bool:
        return self in (Kind.SUBALTERNATION_LEFT_TO_RIGHT, Kind.SUBALTERNATION_RIGHT_TO_LEFT)

    def swapped(self) -> Kind:
        """The kind of the pair read in the opposite order."""
        if self is Kind.SUBALTERNATION_LEFT_TO_RIGHT:
            return Kind.SUBALTERNATION_RIGHT_TO_LEFT
        if self is Kind.SUBALTERNATION_RIGHT_TO_LEFT:
            return Kind.SUBALTERNATION_LEFT_TO_RIGHT
        return self


# Joint truth possibilities of an ordered pair (a, b).
BOTH_TRUE = "both_true"
BOTH_FALSE = "both_false"
FIRST_ONLY = "first_only"
SECOND_ONLY = "second_only"
POSSIBILITIES = (BOTH_TRUE, BOTH_FALSE, FIRST_ONLY, SECOND_ONLY)


@dataclass(frozen=True)
class OppositionRelation:
    kind: Kind
    witnesses: dict = field(default_factory=dict)

    def realizable(self, possibility: str) -> bool:
        return self.witnesses.get(possibility) is not None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "witnesses": {p: (w.to_dict() if w is not None else None)
                          for p, w in self.witnesses.items()},
        }


def kind_from_realizability(a_constant: bool, b_constant: bool, equal: bool,
                            bt: bool, bf: bool, fo: bool, so: bool) -> Kind:
    if a_constant or b_constant:
        return Kind.DEGENERATE
    if equal:
        return Kind.EQUIVALENT
    if not bt and not bf:
        return Kind.CONTRADICTORY
    if not bt:
        return Kind.CONTRARY
    if not bf:
        return Kind.SUBCONTRARY
    if not fo:
        return Kind.SUBALTERNATION_LEFT_TO_RIGHT
    if not so:
        return Kind.SUBALTERNATION_RIGHT_TO_LEFT
    return Kind.UNCONNECTED


def joint_rows(a: Formula, b: Formula, constraint: Formula,
               universe: AtomUniverse) -> dict[str, int]:
    """Bit vectors of the rows realizing each joint possibility under ``constraint``."""
    sat = satisfying_bits(constraint, universe)
    full = full_mask(len(universe))
    ta, tb = evaluate_bits(a, universe), evaluate_bits(b, universe)
    na, nb = full ^ ta, full ^ tb
    return {
        BOTH_TRUE: sat & ta & tb,
        BOTH_FALSE: sat & na & nb,
        FIRST_ONLY: sat & ta & nb,
        SECOND_ONLY: sat & na & tb,
    }


def classify(a: Formula, b: Formula, constraint: Formula = TOP,
             universe: Iterable[str] | None = None) -> OppositionRelation:
    """Classify the ordered pair ``(a, b)`` relative to ``constraint``.

    The universe defaults to the atoms of ``a``, ``b`` and ``constraint``;
    witnesses are total over it.

    >>> from logical_geometry import parse
    >>> classify(parse("D -> V"), parse("!(V -> D)")).kind
    <Kind.SUBALTERNATION_RIGHT_TO_LEFT: 'subalternation-right-to-left'>
    """
    u = universe_of(a, b, constraint) if universe is None else make_universe(universe)
    rows = joint_rows(a, b, constraint, u)
    bt, bf, fo, so = (bool(rows[p]) for p in POSSIBILITIES)
    kind = kind_from_realizability(
        a_constant=not (bt or fo) or not (bf or so),
        b_constant=not (bt or so) or not (bf or fo),
        equal=not (fo or so),
        bt=bt, bf=bf, fo=fo, so=so,
    )
    witnesses = {p: least_valuation(rows[p], u) for p in POSSIBILITIES}
    return OppositionRelation(kind, witnesses)


def joint_possibility(a_value: bool, b_value: bool) -> str:
    if a_value and b_value:
        return BOTH_TRUE
    if a_value:
        return FIRST_ONLY
    if b_value:
        return SECOND_ONLY
    return BOTH_FALSE


def replay(a: Formula, b: Formula, witness: Valuation) -> str:
    """Which joint possibility ``witness`` realizes for ``(a, b)``."""
    u = witness.universe
    ta, tb = evaluate_bits(a, u), evaluate_bits(b, u)
    return joint_possibility(bool(ta >> witness.rank & 1), bool(tb >> witness.rank & 1))
