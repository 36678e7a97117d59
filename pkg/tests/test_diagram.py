import random
from itertools import combinations

import pytest

import oracle
from logical_geometry import (DegenerateDisjunctError, Edge, MalformedDiagramError, OppositionDiagram,
                              Relation, TooFewDisjunctsError, UnsatisfiableConstraintError, Vertex,
                              build_opposition_structure, collapse, detect_degeneracies, parse, verify)
from logical_geometry.diagram import none_of, with_exclusivity
from logical_geometry.errors import UnknownAtomError
from logical_geometry.formula import TOP
from logical_geometry.opposition import Kind, replay

p, q, r = parse("p"), parse("q"), parse("r")


def _oracle_edges(d):
    """Expected (unordered pair -> relation) from brute force, skipping unconnected."""
    out = {}
    for a, b in combinations(d.vertices, 2):
        k = oracle.kind(a.formula, b.formula, d.constraint, list(d.universe))
        if k == "subalternation-left-to-right":
            out[(a.id, b.id)] = "subalternation"
        elif k == "subalternation-right-to-left":
            out[(b.id, a.id)] = "subalternation"
        elif k != "unconnected":
            out[tuple(sorted((a.id, b.id)))] = k
    return out


def _edges(d):
    return {(e.source, e.target): e.kind.value for e in d.edges}


def test_hexagon_structure():
    d = build_opposition_structure([p, q])
    assert [str(v.formula) for v in d.vertices] == ["p | q", "p", "q", "!p", "!q", "!(p | q)"]
    assert str(d.constraint) == "!(p & q)"
    assert _edges(d) == _oracle_edges(d)
    assert d.edge_census() == {"contradictory": 3, "contrary": 3, "subcontrary": 3,
                               "subalternation": 6}
    report = verify(d)
    assert report.clean and report.partition_counts == d.edge_census()


def test_cube_structure():
    d = build_opposition_structure([p, q, r])
    assert len(d.vertices) == 8
    assert str(d.vertex("bottom").formula) == "!p & !q & !r"
    assert _edges(d) == _oracle_edges(d)
    assert verify(d).partition_counts == {"contradictory": 4, "contrary": 6, "subcontrary": 6,
                                          "subalternation": 12}


def test_too_few_disjuncts():
    with pytest.raises(TooFewDisjunctsError):
        build_opposition_structure([p])


@pytest.mark.parametrize("disjuncts, constraint", [
    (["p", "p | !p"], "true"),
    (["p", "!!p"], "true"),
    (["p", "!p"], "true"),
    (["p", "q"], "!p"),
])
def test_degenerate_disjuncts(disjuncts, constraint):
    with pytest.raises(DegenerateDisjunctError):
        build_opposition_structure([parse(x) for x in disjuncts], parse(constraint))


def test_unsatisfiable_constraint():
    with pytest.raises(UnsatisfiableConstraintError):
        build_opposition_structure([p, q], parse("p & q"))


def test_exclusivity_is_idempotent_and_minimal():
    c = with_exclusivity(TOP, [p, q])
    assert str(c) == "!(p & q)"
    assert with_exclusivity(c, [p, q]) == c
    assert with_exclusivity(parse("!(p & q) & !(q & r)"), [p, q, r]) == parse(
        "!(p & q) & !(q & r) & !(p & r)")


def test_none_of_shapes():
    assert str(none_of([p, q])) == "!(p | q)"
    assert str(none_of([p, q, r])) == "!p & !q & !r"


def test_symmetric_edges_canonicalised():
    v = [Vertex("b", "p", p), Vertex("a", "!p", parse("!p"))]
    d = OppositionDiagram(("p",), TOP, tuple(v), (Edge("b", "a", Relation.CONTRADICTORY),))
    assert d.edges == (Edge("a", "b", Relation.CONTRADICTORY),)


@pytest.mark.parametrize("vertices, edges", [
    ([("a", "p"), ("a", "q")], []),
    ([("a", "p")], [("a", "z", Relation.CONTRARY)]),
    ([("a", "p")], [("a", "a", Relation.CONTRARY)]),
    ([("a", "p"), ("b", "q")], [("a", "b", Relation.CONTRARY), ("b", "a", Relation.CONTRARY)]),
])
def test_malformed(vertices, edges):
    with pytest.raises(MalformedDiagramError):
        OppositionDiagram(("p", "q"), TOP, tuple(Vertex(i, f, parse(f)) for i, f in vertices),
                          tuple(Edge(*e) for e in edges))


def test_vertex_atoms_must_be_in_universe():
    with pytest.raises((MalformedDiagramError, UnknownAtomError)):
        OppositionDiagram(("p",), TOP, (Vertex("a", "q", q),), ())


def _duty_value():
    f = {k: parse(v) for k, v in {
        "PvQ": "(V -> D) -> (D -> V)", "P": "D -> V", "Q": "!(V -> D)",
        "notP": "!(D -> V)", "notQ": "V -> D", "PnorQ": "(V -> D) & !(D -> V)"}.items()}
    drawn = [("Q", "PvQ", "subalternation"), ("P", "PvQ", "subalternation"),
             ("Q", "notP", "subalternation"), ("P", "notQ", "subalternation"),
             ("PnorQ", "notP", "subalternation"), ("PnorQ", "notQ", "subalternation"),
             ("PvQ", "PnorQ", "contradictory"), ("P", "notP", "contradictory"),
             ("Q", "notQ", "contradictory"), ("P", "Q", "contrary"), ("P", "PnorQ", "contrary"),
             ("PnorQ", "Q", "contrary"), ("PvQ", "notQ", "subcontrary"),
             ("PvQ", "notP", "subcontrary"), ("notP", "notQ", "subcontrary")]
    d = OppositionDiagram(("D", "V"), TOP, tuple(Vertex(i, str(x), x) for i, x in f.items()),
                          tuple(Edge(s, t, Relation(k)) for s, t, k in drawn))
    return d, f, drawn


def test_duty_value_refutations_match_oracle():
    d, f, drawn = _duty_value()
    report = verify(d)
    refuted = {(v.edge.source, v.edge.target): v for v in report.refuted}
    expected = set()
    for s, t, k in drawn:
        actual = oracle.kind(f[s], f[t], TOP, ["D", "V"])
        ok = actual == "subalternation-left-to-right" if k == "subalternation" else actual == k
        if not ok:
            expected.add(tuple(sorted((s, t))) if k != "subalternation" else (s, t))
    assert set(refuted) == expected
    pq = refuted[("P", "Q")]
    assert pq.actual is not Kind.CONTRARY
    assert pq.witness.to_dict() == {"D": False, "V": True}
    for v in report.refuted:
        if v.witness is not None:
            possibility = replay(d.vertex(v.edge.source).formula, d.vertex(v.edge.target).formula,
                                 v.witness)
            assert possibility in {"contradictory": ("both_true", "both_false"),
                                   "contrary": ("both_true",), "subcontrary": ("both_false",),
                                   "subalternation": ("first_only",)}[v.edge.kind.value]


def test_duty_value_degeneracies():
    d, f, _ = _duty_value()
    report = detect_degeneracies(d)
    eq = {frozenset(x) for x in report.equivalent_pairs}
    expected = {frozenset((a, b)) for a, b in combinations(f, 2)
                if oracle.equivalent(f[a], f[b], TOP, ["D", "V"])}
    assert eq == expected == {frozenset(("PvQ", "P")), frozenset(("notP", "PnorQ"))}
    assert report.collapsed_order == 4
    assert [(pair, w.to_dict()) for pair, w in report.failed_contrarieties] == [
        (("P", "Q"), {"D": False, "V": True})]
    square = collapse(d)
    assert len(square.vertices) == 4
    assert verify(square).partition_counts == {"contradictory": 2, "contrary": 1,
                                                "subcontrary": 1, "subalternation": 2}
    assert len(collapse(square).vertices) == 4


def test_non_contingent_vertex_reported():
    v = [Vertex("a", "p", p), Vertex("t", "p | !p", parse("p | !p"))]
    report = detect_degeneracies(OppositionDiagram(("p",), TOP, tuple(v), ()))
    assert report.non_contingent_vertices == ("t",)


def test_collapse_identity_and_total():
    d = build_opposition_structure([p, q])
    c = collapse(d)
    assert [v.formula for v in c.vertices] == [v.formula for v in d.vertices]
    assert c.edges == d.edges
    same = OppositionDiagram(("p",), TOP, (Vertex("a", "p", p), Vertex("b", "!!p", parse("!!p"))), ())
    single = collapse(same)
    assert len(single.vertices) == 1 and single.edges == ()
    assert single.vertices[0].label == "!!p = p"


def test_missing_pairs_reported():
    d = build_opposition_structure([p, q])
    partial = OppositionDiagram(d.universe, d.constraint, d.vertices, d.edges[:-1])
    report = verify(partial)
    assert len(report.missing_pairs) == 1 and report.clean is False


def _random_disjuncts(rng, k):
    atoms = ["a", "b", "c", "d"][: rng.randint(2, 4)]
    return [oracle.random_formula(rng, atoms, 2) for _ in range(k)], atoms


def test_soundness_on_random_structures():
    rng = random.Random(2024)
    built = 0
    while built < 120:
        ds, atoms = _random_disjuncts(rng, rng.choice((2, 3)))
        constraint = oracle.random_formula(rng, atoms, 1) if rng.random() < 0.3 else TOP
        try:
            d = build_opposition_structure(ds, constraint)
        except (DegenerateDisjunctError, UnsatisfiableConstraintError):
            continue
        built += 1
        report = verify(d)
        assert report.clean
        assert _edges(d) == _oracle_edges(d)
        n = len(d.vertices)
        assert sum(report.partition_counts.values()) == n * (n - 1) // 2
        assert d.relation("top", "bottom").kind is Kind.CONTRADICTORY
