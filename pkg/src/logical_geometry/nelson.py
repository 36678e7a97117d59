"""Nelson diagrams and their correspondence with opposition diagrams.

A Nelson diagram analyses a false dichotomy (6 vertices) or trichotomy
(8 vertices): a shared disjunctive premiss feeds, together with factual
premisses rejecting each disjunct, into "false consequences"; the factual
premisses jointly yield the correct conclusion that none of the disjuncts
holds. Arrows are linked-argument inferences: all arrows converging on a
vertex are read as one argument with jointly sufficient premisses.

The 7-vertex form omits the factual premiss rejecting the last disjunct.
That rejection is then treated as tacit: :func:`validate_inferences` adds
it to the premisses of every target it would feed in the full form, and
:func:`untwist` synthesizes the missing vertex.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .diagram import (Edge, OppositionDiagram, Relation, Vertex, prepare_disjuncts,
                      semantic_edges, structure_vertices, with_exclusivity)
from .errors import (MalformedDiagramError, NotAnOppositionStructureError,
                     UnsupportedArityError, WrongVertexCountError)
from .formula import TOP, And, Formula, Not, Or, flatten
from .semantics import (AtomUniverse, Valuation, entailment_counterexample,
                        evaluate_bits, make_universe, satisfying_bits, universe_of)

SYNTHESIZED = " (synthesized)"


class Role(enum.Enum):
    SHARED_DISJUNCTIVE_PREMISS = "shared_disjunctive_premiss"
    FACTUAL_PREMISS = "factual_premiss"
    FALSE_CONSEQUENCE = "false_consequence"
    CORRECT_CONCLUSION = "correct_conclusion"


_SOURCE_ROLES = (Role.SHARED_DISJUNCTIVE_PREMISS, Role.FACTUAL_PREMISS)
_TARGET_ROLES = (Role.FALSE_CONSEQUENCE, Role.CORRECT_CONCLUSION)


@dataclass(frozen=True)
class NelsonVertex:
    id: str
    label: str
    formula: Formula
    role: Role


@dataclass(frozen=True)
class NelsonDiagram:
    universe: AtomUniverse
    constraint: Formula
    vertices: tuple[NelsonVertex, ...]
    arrows: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        vertices = tuple(self.vertices)
        by_id = {}
        for v in vertices:
            if v.id in by_id:
                raise MalformedDiagramError(f"duplicate vertex id {v.id!r}")
            by_id[v.id] = v
        roles = Counter(v.role for v in vertices)
        for role in (Role.SHARED_DISJUNCTIVE_PREMISS, Role.CORRECT_CONCLUSION):
            if roles[role] != 1:
                raise MalformedDiagramError(f"need exactly one {role.value}, found {roles[role]}")
        k = roles[Role.FALSE_CONSEQUENCE]
        if k < 2:
            raise MalformedDiagramError(f"need at least two false consequences, found {k}")
        if roles[Role.FACTUAL_PREMISS] not in (k, k - 1):
            raise MalformedDiagramError(
                f"{k} false consequences need {k} or {k - 1} factual premisses, "
                f"found {roles[Role.FACTUAL_PREMISS]}")
        arrows = []
        for src, dst in self.arrows:
            for end in (src, dst):
                if end not in by_id:
                    raise MalformedDiagramError(f"arrow endpoint {end!r} is not a vertex")
            if by_id[src].role not in _SOURCE_ROLES:
                raise MalformedDiagramError(f"arrow source {src!r} is a {by_id[src].role.value}")
            if by_id[dst].role not in _TARGET_ROLES:
                raise MalformedDiagramError(f"arrow target {dst!r} is a {by_id[dst].role.value}")
            arrows.append((src, dst))
        if len(set(arrows)) != len(arrows):
            raise MalformedDiagramError("duplicate arrow")
        universe = make_universe(self.universe)
        atoms = universe_of(self.constraint, *(v.formula for v in vertices))
        if not set(atoms) <= set(universe):
            raise MalformedDiagramError(f"atoms outside the universe: {sorted(set(atoms) - set(universe))}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", tuple(sorted(arrows)))

    def vertex(self, vid: str) -> NelsonVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def with_role(self, role: Role) -> list[NelsonVertex]:
        return [v for v in self.vertices if v.role is role]

    @property
    def top(self) -> NelsonVertex:
        return self.with_role(Role.SHARED_DISJUNCTIVE_PREMISS)[0]

    @property
    def conclusion(self) -> NelsonVertex:
        return self.with_role(Role.CORRECT_CONCLUSION)[0]

    @property
    def consequences(self) -> list[NelsonVertex]:
        return self.with_role(Role.FALSE_CONSEQUENCE)

    def sources(self, vid: str) -> list[str]:
        """Arrow sources into ``vid``, in vertex order."""
        incoming = {s for s, t in self.arrows if t == vid}
        return [v.id for v in self.vertices if v.id in incoming]

    def effective_constraint(self) -> Formula:
        return with_exclusivity(self.constraint, [v.formula for v in self.consequences],
                                self.universe)


def negation_pairing(n: NelsonDiagram) -> dict[str, str | None]:
    """Map each false consequence id to the id of the factual premiss that
    negates it (under the effective constraint), or ``None`` if absent."""
    u = n.universe
    sat = satisfying_bits(n.effective_constraint(), u)
    premisses = {v.id: evaluate_bits(v.formula, u) & sat for v in n.with_role(Role.FACTUAL_PREMISS)}
    pairing: dict[str, str | None] = {}
    used = set()
    for c in n.consequences:
        target = evaluate_bits(Not(c.formula), u) & sat
        match = [pid for pid, t in premisses.items() if t == target and pid not in used]
        if len(match) > 1:
            raise MalformedDiagramError(f"several factual premisses negate {c.id!r}")
        pairing[c.id] = match[0] if match else None
        used.update(match)
    unpaired = set(premisses) - used
    if unpaired:
        raise MalformedDiagramError(
            f"factual premisses {sorted(unpaired)} do not negate any false consequence")
    return pairing


def pattern_arrows(top: str, consequences: Sequence[str], negations: Sequence[str | None],
                   conclusion: str) -> list[tuple[str, str]]:
    """The standard arrow set; ``negations[i]`` rejects ``consequences[i]``."""
    arrows = []
    for i, c in enumerate(consequences):
        arrows.append((top, c))
        arrows.extend((m, c) for j, m in enumerate(negations) if j != i and m is not None)
    arrows.extend((m, conclusion) for m in negations if m is not None)
    return arrows


def build_nelson(disjuncts: Sequence[Formula], constraint: Formula = TOP,
                 include_all_negations: bool = True) -> NelsonDiagram:
    """Nelson diagram over two or three disjuncts.

    With three disjuncts and ``include_all_negations=False`` the factual
    premiss rejecting the third disjunct is omitted (the 7-vertex form).
    Ids follow :func:`build_opposition_structure`.
    """
    disjuncts = list(disjuncts)
    if len(disjuncts) not in (2, 3):
        raise UnsupportedArityError(f"Nelson diagrams take 2 or 3 disjuncts, got {len(disjuncts)}")
    u, effective = prepare_disjuncts(disjuncts, constraint)
    k = len(disjuncts)
    base = structure_vertices(disjuncts)
    roles = ([Role.SHARED_DISJUNCTIVE_PREMISS] + [Role.FALSE_CONSEQUENCE] * k
             + [Role.FACTUAL_PREMISS] * k + [Role.CORRECT_CONCLUSION])
    omit = f"n{k}" if k == 3 and not include_all_negations else None
    vertices = [NelsonVertex(v.id, v.label, v.formula, r)
                for v, r in zip(base, roles) if v.id != omit]
    consequences = [f"d{i}" for i in range(1, k + 1)]
    negations = [None if f"n{i}" == omit else f"n{i}" for i in range(1, k + 1)]
    return NelsonDiagram(u, effective, tuple(vertices),
                         tuple(pattern_arrows("top", consequences, negations, "bottom")))


# -- inference validation ---------------------------------------------------

@dataclass(frozen=True)
class Inference:
    vertex_id: str
    premiss_ids: tuple[str, ...]
    valid: bool
    counterexample: Valuation | None = None
    tacit: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex_id,
            "premisses": list(self.premiss_ids),
            "tacit": list(self.tacit),
            "valid": self.valid,
            "counterexample": (self.counterexample.to_dict()
                               if self.counterexample is not None else None),
        }


@dataclass(frozen=True)
class InferenceReport:
    per_conclusion: tuple[Inference, ...]

    @property
    def all_valid(self) -> bool:
        return all(i.valid for i in self.per_conclusion)

    def to_dict(self) -> dict:
        return {"inferences": [i.to_dict() for i in self.per_conclusion],
                "all_valid": self.all_valid}


def validate_inferences(n: NelsonDiagram) -> InferenceReport:
    """Check each linked argument: do the sources of all arrows converging
    on a vertex jointly entail it, under the constraint plus pairwise
    exclusivity of the disjuncts?"""
    effective = n.effective_constraint()
    satisfying_bits(effective, n.universe)
    pairing = negation_pairing(n)
    missing = [c for c in n.consequences if pairing[c.id] is None]
    results = []
    for v in n.vertices:
        if v.role not in _TARGET_ROLES:
            continue
        sources = n.sources(v.id)
        if not sources:
            continue
        tacit = [Not(c.formula) for c in missing if c.id != v.id]
        premisses = [n.vertex(s).formula for s in sources] + tacit
        cex = entailment_counterexample(premisses, v.formula, effective, n.universe)
        results.append(Inference(v.id, tuple(sources), cex is None, cex,
                                 tuple(str(t) for t in tacit)))
    return InferenceReport(tuple(results))


# -- untwist / twist --------------------------------------------------------

def untwist(n: NelsonDiagram) -> OppositionDiagram:
    """Opposition diagram over the formulas of ``n``.

    Each arrow ``u -> v`` becomes the subalternation ``v -> u``; every
    other pair gets its semantic relation under the constraint plus
    pairwise exclusivity. A missing factual premiss (7-vertex form) is
    synthesized and flagged in its label.
    """
    effective = n.effective_constraint()
    pairing = negation_pairing(n)
    vertices = [Vertex(v.id, v.label, v.formula) for v in n.vertices]
    ids = {v.id for v in vertices}
    last_premiss = max((i for i, v in enumerate(n.vertices) if v.role is Role.FACTUAL_PREMISS),
                       default=len(vertices) - 2)
    insert_at = last_premiss + 1
    for c in n.consequences:
        if pairing[c.id] is not None:
            continue
        vid = f"not_{c.id}"
        while vid in ids:
            vid += "_"
        ids.add(vid)
        f = Not(c.formula)
        vertices.insert(insert_at, Vertex(vid, str(f) + SYNTHESIZED, f))
        insert_at += 1
    edges = [Edge(dst, src, Relation.SUBALTERNATION) for src, dst in n.arrows]
    covered = {frozenset(a) for a in n.arrows}
    edges += [e for e in semantic_edges(vertices, effective, n.universe)
              if frozenset((e.source, e.target)) not in covered]
    return OppositionDiagram(n.universe, effective, tuple(vertices), tuple(edges))


@dataclass(frozen=True)
class StructureRoles:
    """Vertex ids of a recognised opposition structure."""

    top: str
    disjuncts: tuple[str, ...]
    negations: tuple[str, ...]
    bottom: str


def match_structure(d: OppositionDiagram) -> StructureRoles:
    """Recognise the disjunction/negation shape of a built structure.

    The top vertex must be an ``|``-chain of exactly ``k`` other vertices'
    formulas, each of those must have its syntactic negation present, and
    the one remaining vertex must be either the negated top or the
    ``&``-chain of the negations.
    """
    count = len(d.vertices)
    if count % 2 or count // 2 - 1 not in (2, 3):
        raise NotAnOppositionStructureError(f"{count} vertices do not form a hexagon or cube")
    k = count // 2 - 1
    by_formula: dict[Formula, list[str]] = {}
    for v in d.vertices:
        by_formula.setdefault(v.formula, []).append(v.id)
    for t in d.vertices:
        leaves = flatten(t.formula, Or)
        if len(leaves) != k:
            continue
        taken = {t.id}
        disjuncts = _claim(leaves, by_formula, taken)
        if disjuncts is None:
            continue
        negations = _claim([Not(f) for f in leaves], by_formula, taken)
        if negations is None:
            continue
        rest = [v for v in d.vertices if v.id not in taken]
        if len(rest) != 1:
            continue
        bottom = rest[0].formula
        negated = Counter(Not(f) for f in leaves)
        if bottom == Not(t.formula) or Counter(flatten(bottom, And)) == negated:
            return StructureRoles(t.id, tuple(disjuncts), tuple(negations), rest[0].id)
    raise NotAnOppositionStructureError(
        "no vertex is a disjunction whose disjuncts, negations and joint negation are all present")


def _claim(formulas, by_formula, taken) -> list[str] | None:
    ids = []
    for f in formulas:
        free = [i for i in by_formula.get(f, ()) if i not in taken]
        if not free:
            return None
        taken.add(free[0])
        ids.append(free[0])
    return ids


def twist(d: OppositionDiagram) -> NelsonDiagram:
    """Inverse of :func:`untwist`.

    Roles come from formula shape; arrows are the pattern arrows whose
    reversal is a subalternation edge of ``d``. Synthesized vertices are
    dropped again.
    """
    roles = match_structure(d)
    role_of = {roles.top: Role.SHARED_DISJUNCTIVE_PREMISS, roles.bottom: Role.CORRECT_CONCLUSION}
    role_of.update((i, Role.FALSE_CONSEQUENCE) for i in roles.disjuncts)
    role_of.update((i, Role.FACTUAL_PREMISS) for i in roles.negations)
    dropped = {v.id for v in d.vertices if v.label.endswith(SYNTHESIZED)}
    if dropped - set(roles.negations):
        raise NotAnOppositionStructureError("only factual premisses can be synthesized")
    subalternations = {(e.source, e.target) for e in d.edges if e.kind is Relation.SUBALTERNATION}
    negations = [None if m in dropped else m for m in roles.negations]
    arrows = [(s, t) for s, t in pattern_arrows(roles.top, roles.disjuncts, negations, roles.bottom)
              if (t, s) in subalternations]
    vertices = [NelsonVertex(v.id, v.label, v.formula, role_of[v.id])
                for v in d.vertices if v.id not in dropped]
    return NelsonDiagram(d.universe, d.constraint, tuple(vertices), tuple(arrows))


# -- cube isomorphism -------------------------------------------------------

Corner = tuple  # (x, y, z) with each coordinate 0 or 1

CORNERS: tuple[Corner, ...] = tuple(product((0, 1), repeat=3))
CUBE_EDGES = frozenset(frozenset((a, b)) for a in CORNERS for b in CORNERS
                       if sum(x != y for x, y in zip(a, b)) == 1)

# Corner placement of the standard cube drawing: disjunction, joint
# negation, then the three disjuncts and their negations in order.
PREFERRED_TOP = (0, 1, 0)
PREFERRED_BOTTOM = (1, 0, 1)
PREFERRED_DISJUNCTS = ((1, 1, 0), (0, 1, 1), (0, 0, 0))


def antipode(c: Corner) -> Corner:
    return tuple(1 - x for x in c)


def cube_isomorphisms(vertex_ids: Sequence[str], edges) -> list[dict[str, Corner]]:
    """All bijections onto the cube corners mapping ``edges`` (pairs of ids)
    exactly onto the cube skeleton; brute force with degree pruning."""
    ids = list(vertex_ids)
    if len(ids) != 8:
        return []
    adj = {i: set() for i in ids}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    if len({frozenset(e) for e in edges}) != 12 or any(len(s) != 3 for s in adj.values()):
        return []
    found = []
    mapping: dict[str, Corner] = {}

    def extend(i: int):
        if i == len(ids):
            found.append(dict(mapping))
            return
        v = ids[i]
        used = set(mapping.values())
        for c in CORNERS:
            if c in used:
                continue
            if all((frozenset((c, mapping[w])) in CUBE_EDGES) == (w in adj[v]) for w in mapping):
                mapping[v] = c
                extend(i + 1)
                del mapping[v]

    extend(0)
    return found


def check_cube_isomorphism(n: NelsonDiagram) -> dict[str, Corner] | None:
    """Embed an 8-vertex Nelson diagram's arrow graph in the cube.

    Arrows are read as undirected edges. Returns a mapping from vertex id
    to corner ``(x, y, z)`` in which the disjunction and the correct
    conclusion, and each disjunct and its negation, sit at antipodal
    corners; among such mappings the one closest to the standard drawing
    is chosen. Returns ``None`` when no such embedding exists.
    """
    if len(n.vertices) != 8:
        raise WrongVertexCountError(f"cube isomorphism needs 8 vertices, got {len(n.vertices)}")
    isos = cube_isomorphisms([v.id for v in n.vertices], n.arrows)
    if not isos:
        return None
    try:
        pairing = negation_pairing(n)
    except MalformedDiagramError:
        return None
    if any(m is None for m in pairing.values()):
        return None
    preferred = {n.top.id: PREFERRED_TOP, n.conclusion.id: PREFERRED_BOTTOM}
    for c, corner in zip(n.consequences, PREFERRED_DISJUNCTS):
        preferred[c.id] = corner
        preferred[pairing[c.id]] = antipode(corner)

    def oriented(m):
        return m[n.top.id] == antipode(m[n.conclusion.id]) and all(
            m[c] == antipode(m[p]) for c, p in pairing.items())

    candidates = [m for m in isos if oriented(m)]
    if not candidates:
        return None
    order = [v.id for v in n.vertices]
    return max(candidates, key=lambda m: (sum(m[i] == preferred.get(i) for i in order),
                                          [tuple(-x for x in m[i]) for i in order]))
