"""Opposition diagrams: construction, verification and degeneracy analysis.

An :class:`OppositionDiagram` stores *claimed* edges. Nothing in the data
model forces the claims to be true; :func:`verify` checks them against the
truth-table semantics under the diagram's own constraint.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (DegenerateDisjunctError, MalformedDiagramError,
                     TooFewDisjunctsError, UnknownAtomError)
from .formula import TOP, And, Formula, Not, conjoin, disjoin
from .opposition import (BOTH_FALSE, BOTH_TRUE, FIRST_ONLY, Kind,
                         OppositionRelation, classify)
from .semantics import (AtomUniverse, Valuation, evaluate_bits,
                        least_valuation, make_universe, satisfying_bits, universe_of)


class Relation(enum.Enum):
    """Edge kinds that can be drawn in a diagram."""

    CONTRADICTORY = "contradictory"
    CONTRARY = "contrary"
    SUBCONTRARY = "subcontrary"
    SUBALTERNATION = "subalternation"

    @property
    def directed(self) -> bool:
        return self is Relation.SUBALTERNATION


_RELATION_OF_KIND = {
    Kind.CONTRADICTORY: Relation.CONTRADICTORY,
    Kind.CONTRARY: Relation.CONTRARY,
    Kind.SUBCONTRARY: Relation.SUBCONTRARY,
    Kind.SUBALTERNATION_LEFT_TO_RIGHT: Relation.SUBALTERNATION,
    Kind.SUBALTERNATION_RIGHT_TO_LEFT: Relation.SUBALTERNATION,
}

# Joint possibilities a claimed relation rules out, in reporting order.
_FORBIDDEN = {
    Relation.CONTRADICTORY: (BOTH_TRUE, BOTH_FALSE),
    Relation.CONTRARY: (BOTH_TRUE,),
    Relation.SUBCONTRARY: (BOTH_FALSE,),
    Relation.SUBALTERNATION: (FIRST_ONLY,),
}

PARTITION_ORDER = ("contradictory", "contrary", "subcontrary", "subalternation",
                   "equivalent", "unconnected", "degenerate")


def partition_key(kind: Kind) -> str:
    return "subalternation" if kind.is_subalternation else kind.value


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str
    formula: Formula


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    kind: Relation

    def canonical(self) -> Edge:
        if not self.kind.directed and self.target < self.source:
            return Edge(self.target, self.source, self.kind)
        return self

    def key(self) -> tuple[str, str, str]:
        return (self.source, self.target, self.kind.value)


@dataclass(frozen=True)
class OppositionDiagram:
    """Vertices with claimed opposition edges under a background constraint.

    Symmetric edges are stored with ``source < target``; subalternation
    edges point from the entailing vertex to the entailed one. Edges are
    kept sorted so that equal diagrams compare equal.
    """

    universe: AtomUniverse
    constraint: Formula
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        vertices = tuple(self.vertices)
        ids = [v.id for v in vertices]
        seen = set()
        for vid in ids:
            if vid in seen:
                raise MalformedDiagramError(f"duplicate vertex id {vid!r}")
            seen.add(vid)
        atoms = universe_of(self.constraint, *(v.formula for v in vertices))
        universe = make_universe(self.universe)
        if not set(atoms) <= set(universe):
            raise UnknownAtomError(set(atoms) - set(universe))
        edges = []
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in seen:
                    raise MalformedDiagramError(f"edge endpoint {end!r} is not a vertex")
            if e.source == e.target:
                raise MalformedDiagramError(f"self-loop on {e.source!r}")
            edges.append(e.canonical())
        if len(set(edges)) != len(edges):
            raise MalformedDiagramError("duplicate edge")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(edges, key=Edge.key)))

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def relation(self, a: str, b: str) -> OppositionRelation:
        """Semantic relation of the vertex pair ``(a, b)`` under the constraint."""
        return classify(self.vertex(a).formula, self.vertex(b).formula,
                        self.constraint, self.universe)

    def edge_census(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for e in self.edges:
            counts[e.kind.value] = counts.get(e.kind.value, 0) + 1
        return counts


def semantic_edge(a: Vertex, b: Vertex, relation: OppositionRelation) -> Edge | None:
    kind = relation.kind
    if kind is Kind.SUBALTERNATION_LEFT_TO_RIGHT:
        return Edge(a.id, b.id, Relation.SUBALTERNATION)
    if kind is Kind.SUBALTERNATION_RIGHT_TO_LEFT:
        return Edge(b.id, a.id, Relation.SUBALTERNATION)
    rel = _RELATION_OF_KIND.get(kind)
    return None if rel is None else Edge(a.id, b.id, rel).canonical()


def semantic_edges(vertices: Sequence[Vertex], constraint: Formula,
                   universe: AtomUniverse) -> list[Edge]:
    """Every drawable relation among ``vertices``, computed from the semantics."""
    satisfying_bits(constraint, universe)
    edges = []
    for a, b in combinations(vertices, 2):
        e = semantic_edge(a, b, classify(a.formula, b.formula, constraint, universe))
        if e is not None:
            edges.append(e)
    return edges


# -- construction -----------------------------------------------------------

def exclusivity_clauses(disjuncts: Sequence[Formula]) -> list[Formula]:
    return [Not(And(a, b)) for a, b in combinations(disjuncts, 2)]


def with_exclusivity(constraint: Formula, disjuncts: Sequence[Formula],
                     universe: AtomUniverse | None = None) -> Formula:
    """``constraint`` conjoined with each pairwise-exclusivity clause it does
    not already entail. Adding nothing returns ``constraint`` unchanged, so
    the operation is idempotent."""
    u = universe_of(constraint, *disjuncts) if universe is None else universe
    parts = [] if constraint == TOP else [constraint]
    current = evaluate_bits(constraint, u)
    for clause in exclusivity_clauses(disjuncts):
        bits = evaluate_bits(clause, u)
        if current & ~bits:
            parts.append(clause)
            current &= bits
    return conjoin(parts)


def none_of(disjuncts: Sequence[Formula]) -> Formula:
    """The "none of the above" vertex.

    Two disjuncts give the negated disjunction ``!(p | q)``; three or more
    give the conjunction of negations ``!p & !q & !r``, matching the usual
    hexagon and cube labellings.
    """
    if len(disjuncts) == 2:
        return Not(disjoin(disjuncts))
    return conjoin(Not(d) for d in disjuncts)


def prepare_disjuncts(disjuncts: Sequence[Formula],
                      constraint: Formula) -> tuple[AtomUniverse, Formula]:
    """Universe and effective constraint for a disjunct list.

    Raises when the disjuncts cannot yield a clean opposition structure:
    the effective constraint is unsatisfiable, a disjunct is constant, two
    disjuncts coincide, or the disjuncts are jointly exhaustive.
    """
    u = universe_of(constraint, *disjuncts)
    effective = with_exclusivity(constraint, disjuncts, u)
    sat = satisfying_bits(effective, u)
    tables = []
    for d in disjuncts:
        t = evaluate_bits(d, u) & sat
        if t == 0 or t == sat:
            raise DegenerateDisjunctError(f"disjunct {d} is constant under {effective}")
        tables.append(t)
    for (a, ta), (b, tb) in combinations(zip(disjuncts, tables), 2):
        if ta == tb:
            raise DegenerateDisjunctError(f"disjuncts {a} and {b} are equivalent")
    if evaluate_bits(disjoin(disjuncts), u) & sat == sat:
        raise DegenerateDisjunctError(
            "the disjuncts are jointly exhaustive, so 'none of the above' is unsatisfiable")
    return u, effective


def structure_vertices(disjuncts: Sequence[Formula]) -> list[Vertex]:
    k = len(disjuncts)
    formulas = [disjoin(disjuncts), *disjuncts, *(Not(d) for d in disjuncts), none_of(disjuncts)]
    ids = ["top", *(f"d{i}" for i in range(1, k + 1)), *(f"n{i}" for i in range(1, k + 1)), "bottom"]
    return [Vertex(i, str(f), f) for i, f in zip(ids, formulas)]


def build_opposition_structure(disjuncts: Sequence[Formula],
                               constraint: Formula = TOP) -> OppositionDiagram:
    """The 2(k+1)-vertex opposition structure over ``k`` exclusive disjuncts.

    ``k = 2`` gives the hexagon, ``k = 3`` the cube. Pairwise exclusivity of
    the disjuncts is conjoined to ``constraint``; exhaustivity is not.
    Vertex ids are ``top``, ``d1..dk``, ``n1..nk`` and ``bottom``.
    """
    disjuncts = list(disjuncts)
    if len(disjuncts) < 2:
        raise TooFewDisjunctsError(f"need at least 2 disjuncts, got {len(disjuncts)}")
    u, effective = prepare_disjuncts(disjuncts, constraint)
    vertices = structure_vertices(disjuncts)
    return OppositionDiagram(u, effective, tuple(vertices),
                             tuple(semantic_edges(vertices, effective, u)))


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class EdgeVerdict:
    edge: Edge
    confirmed: bool
    actual: Kind
    witness: Valuation | None = None

    def to_dict(self) -> dict:
        return {
            "source": self.edge.source,
            "target": self.edge.target,
            "claimed": self.edge.kind.value,
            "verdict": "confirmed" if self.confirmed else "refuted",
            "actual": self.actual.value,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


@dataclass(frozen=True)
class VerificationReport:
    per_edge: tuple[EdgeVerdict, ...]
    missing_pairs: tuple[tuple[str, str, Kind], ...]
    partition_counts: dict

    @property
    def refuted(self) -> tuple[EdgeVerdict, ...]:
        return tuple(v for v in self.per_edge if not v.confirmed)

    @property
    def clean(self) -> bool:
        return not self.refuted and not self.missing_pairs

    def to_dict(self) -> dict:
        return {
            "edges": [v.to_dict() for v in self.per_edge],
            "missing_pairs": [{"a": a, "b": b, "kind": k.value} for a, b, k in self.missing_pairs],
            "partition_counts": dict(self.partition_counts),
            "clean": self.clean,
        }


def _confirms(edge: Edge, kind: Kind) -> bool:
    if edge.kind is Relation.SUBALTERNATION:
        return kind is Kind.SUBALTERNATION_LEFT_TO_RIGHT
    return _RELATION_OF_KIND.get(kind) is edge.kind


def count_partition(kinds: Iterable[Kind]) -> dict[str, int]:
    counts = dict.fromkeys(PARTITION_ORDER, 0)
    for k in kinds:
        counts[partition_key(k)] += 1
    return {k: n for k, n in counts.items() if n}


def verify(d: OppositionDiagram) -> VerificationReport:
    """Check every claimed edge of ``d`` and look for unrecorded relations."""
    satisfying_bits(d.constraint, d.universe)
    verdicts = []
    for e in d.edges:
        rel = d.relation(e.source, e.target)
        if _confirms(e, rel.kind):
            verdicts.append(EdgeVerdict(e, True, rel.kind))
            continue
        witness = next((rel.witnesses[p] for p in _FORBIDDEN[e.kind] if rel.realizable(p)), None)
        verdicts.append(EdgeVerdict(e, False, rel.kind, witness))
    drawn = {frozenset((e.source, e.target)) for e in d.edges}
    kinds = []
    missing = []
    for a, b in combinations(d.vertices, 2):
        kind = d.relation(a.id, b.id).kind
        kinds.append(kind)
        if kind is not Kind.UNCONNECTED and frozenset((a.id, b.id)) not in drawn:
            missing.append((a.id, b.id, kind))
    return VerificationReport(tuple(verdicts), tuple(missing), count_partition(kinds))


# -- degeneracies -----------------------------------------------------------

@dataclass(frozen=True)
class DegeneracyReport:
    equivalent_pairs: tuple[tuple[str, str], ...]
    non_contingent_vertices: tuple[str, ...]
    failed_contrarieties: tuple[tuple[tuple[str, str], Valuation], ...]
    collapsed_order: int

    @property
    def clean(self) -> bool:
        return not (self.equivalent_pairs or self.non_contingent_vertices
                    or self.failed_contrarieties)

    def to_dict(self) -> dict:
        return {
            "equivalent_pairs": [list(p) for p in self.equivalent_pairs],
            "non_contingent_vertices": list(self.non_contingent_vertices),
            "failed_contrarieties": [{"pair": list(p), "both_true": w.to_dict()}
                                     for p, w in self.failed_contrarieties],
            "collapsed_order": self.collapsed_order,
            "clean": self.clean,
        }


def restricted_tables(d: OppositionDiagram) -> dict[str, int]:
    """Each vertex's truth table restricted to the constraint's models."""
    sat = satisfying_bits(d.constraint, d.universe)
    return {v.id: evaluate_bits(v.formula, d.universe) & sat for v in d.vertices}


def equivalence_classes(d: OppositionDiagram) -> list[list[Vertex]]:
    """Vertices grouped by restricted table, in order of first appearance."""
    tables = restricted_tables(d)
    groups: dict[int, list[Vertex]] = {}
    for v in d.vertices:
        groups.setdefault(tables[v.id], []).append(v)
    return list(groups.values())


def detect_degeneracies(d: OppositionDiagram) -> DegeneracyReport:
    sat = satisfying_bits(d.constraint, d.universe)
    tables = restricted_tables(d)
    equivalent_pairs = tuple((a.id, b.id) for a, b in combinations(d.vertices, 2)
                             if tables[a.id] == tables[b.id])
    constant = tuple(v.id for v in d.vertices if tables[v.id] in (0, sat))
    failed = []
    for e in d.edges:
        if e.kind is not Relation.CONTRARY:
            continue
        both = tables[e.source] & tables[e.target]
        if both:
            failed.append(((e.source, e.target), least_valuation(both, d.universe)))
    return DegeneracyReport(equivalent_pairs, constant, tuple(failed),
                            len(set(tables.values())))


def collapse(d: OppositionDiagram) -> OppositionDiagram:
    """Quotient of ``d`` by semantic equivalence under its constraint.

    Each class keeps the vertex with the lexicographically least label as
    representative; its label lists every member label. Edges between the
    representatives are recomputed.
    """
    vertices = []
    for members in equivalence_classes(d):
        rep = min(members, key=lambda v: (v.label, v.id))
        label = rep.label if len(members) == 1 else " = ".join(sorted(v.label for v in members))
        vertices.append(Vertex(rep.id, label, rep.formula))
    edges = semantic_edges(vertices, d.constraint, d.universe)
    return OppositionDiagram(d.universe, d.constraint, tuple(vertices), tuple(edges))


def pair_table(d: OppositionDiagram) -> dict[tuple[str, str], Kind]:
    """Semantic kind of every unordered vertex pair, keyed in vertex order."""
    return {(a.id, b.id): d.relation(a.id, b.id).kind for a, b in combinations(d.vertices, 2)}

