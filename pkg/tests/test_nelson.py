import random

import networkx as nx
import pytest

import oracle
from logical_geometry import (MalformedDiagramError, NelsonDiagram,
                              NotAnOppositionStructureError, OppositionDiagram, Role,
                              UnsupportedArityError, Vertex, WrongVertexCountError,
                              build_nelson, build_opposition_structure, check_cube_isomorphism, parse,
                              twist, untwist, validate_inferences, verify)
from logical_geometry.diagram import Relation
from logical_geometry.errors import DegenerateDisjunctError, UnsatisfiableConstraintError
from logical_geometry.formula import TOP, Not
from logical_geometry.nelson import CUBE_EDGES, antipode, negation_pairing

p, q, r = parse("p"), parse("q"), parse("r")

FIG_3A = {("top", "d1"), ("top", "d2"), ("n2", "d1"), ("n1", "d2"), ("n1", "bottom"),
          ("n2", "bottom")}


def test_six_vertex_pattern():
    n = build_nelson([p, q])
    assert len(n.vertices) == 6
    assert set(n.arrows) == FIG_3A
    assert [v.role for v in n.vertices].count(Role.FACTUAL_PREMISS) == 2


def test_eight_vertex_pattern():
    n = build_nelson([p, q, r])
    assert len(n.vertices) == 8 and len(n.arrows) == 12
    into_d1 = set(n.sources("d1"))
    assert into_d1 == {"top", "n2", "n3"}
    assert set(n.sources("bottom")) == {"n1", "n2", "n3"}
    g = nx.Graph(list(n.arrows))
    assert all(deg == 3 for _, deg in g.degree())


def test_seven_vertex_pattern():
    n = build_nelson([p, q, r], include_all_negations=False)
    assert len(n.vertices) == 7
    assert set(n.sources("d3")) == {"top", "n1", "n2"}
    assert set(n.sources("bottom")) == {"n1", "n2"}
    assert len(n.arrows) == 9


def test_arity_and_degenerate_errors():
    with pytest.raises(UnsupportedArityError):
        build_nelson([p])
    with pytest.raises(UnsupportedArityError):
        build_nelson([p, q, r, parse("s")])
    with pytest.raises(DegenerateDisjunctError):
        build_nelson([p, parse("p | !p")])
    with pytest.raises(UnsatisfiableConstraintError):
        build_nelson([p, q], parse("p & q"))


def _replays(n, inference):
    """Counterexample satisfies constraint and premisses but not the conclusion."""
    env = inference.counterexample.to_dict()
    premisses = [n.vertex(s).formula for s in inference.premiss_ids] + [parse(t) for t in inference.tacit]
    return (oracle.ev(n.effective_constraint(), env)
            and all(oracle.ev(f, env) for f in premisses)
            and not oracle.ev(n.vertex(inference.vertex_id).formula, env))


@pytest.mark.parametrize("disjuncts, negs", [([p, q], True), ([p, q, r], True), ([p, q, r], False)])
def test_built_inferences_valid(disjuncts, negs):
    n = build_nelson(disjuncts, include_all_negations=negs)
    report = validate_inferences(n)
    assert report.all_valid
    targets = {v.id for v in n.vertices if v.role in (Role.FALSE_CONSEQUENCE, Role.CORRECT_CONCLUSION)}
    assert {i.vertex_id for i in report.per_conclusion} == targets


def test_seven_vertex_tacit_premiss():
    n = build_nelson([p, q, r], include_all_negations=False)
    by_id = {i.vertex_id: i for i in validate_inferences(n).per_conclusion}
    assert by_id["bottom"].tacit == ("!r",)
    assert by_id["d3"].tacit == ()
    assert by_id["d1"].tacit == ("!r",)


def test_deleted_arrow_counterexample():
    n = build_nelson([p, q])
    arrows = tuple(a for a in n.arrows if a != ("n1", "d2"))
    cut = NelsonDiagram(n.universe, n.constraint, n.vertices, arrows)
    by_id = {i.vertex_id: i for i in validate_inferences(cut).per_conclusion}
    bad = by_id["d2"]
    assert not bad.valid
    expected = oracle.entailment_counterexample([parse("p | q")], q, n.constraint, ["p", "q"])
    assert bad.counterexample.to_dict() == expected == {"p": True, "q": False}
    assert _replays(cut, bad)


def test_untwist_matches_built_structure():
    for ds in ([p, q], [p, q, r]):
        n = build_nelson(ds)
        u = untwist(n)
        d = build_opposition_structure(ds)
        assert [v.formula for v in u.vertices] == [v.formula for v in d.vertices]
        assert u.edges == d.edges
        assert verify(u).clean
        reversed_arrows = {(t, s) for s, t in n.arrows}
        subalt = {(e.source, e.target) for e in u.edges if e.kind is Relation.SUBALTERNATION}
        assert reversed_arrows <= subalt
        assert twist(u) == n


def test_untwist_seven_vertex_synthesizes():
    n = build_nelson([p, q, r], include_all_negations=False)
    u = untwist(n)
    assert len(u.vertices) == 8
    synth = [v for v in u.vertices if v.label.endswith("(synthesized)")]
    assert [v.formula for v in synth] == [Not(r)]
    full = build_opposition_structure([p, q, r])
    assert sorted(map(str, (v.formula for v in u.vertices))) == sorted(
        map(str, (v.formula for v in full.vertices)))
    assert twist(u) == n


def test_cube_tetrahedra():
    u = untwist(build_nelson([p, q, r]))
    contrary = {frozenset((e.source, e.target)) for e in u.edges if e.kind is Relation.CONTRARY}
    sub = {frozenset((e.source, e.target)) for e in u.edges if e.kind is Relation.SUBCONTRARY}
    tetra = lambda ids: {frozenset((a, b)) for a in ids for b in ids if a < b}
    assert contrary == tetra(["d1", "d2", "d3", "bottom"])
    assert sub == tetra(["n1", "n2", "n3", "top"])


def test_twist_rejects_shapeless():
    vs = [Vertex(f"v{i}", f, parse(f)) for i, f in enumerate(["p & q", "p", "q", "!p", "!q", "!(p & q)"])]
    d = OppositionDiagram(("p", "q"), TOP, tuple(vs), ())
    with pytest.raises(NotAnOppositionStructureError):
        twist(d)


def test_cube_isomorphism_against_networkx():
    n = build_nelson([p, q, r])
    g = nx.Graph(list(n.arrows))
    assert nx.is_isomorphic(g, nx.hypercube_graph(3))
    m = check_cube_isomorphism(n)
    assert sorted(m.values()) == sorted(set(m.values())) and len(m) == 8
    assert {frozenset((m[a], m[b])) for a, b in n.arrows} == CUBE_EDGES
    assert m["top"] == antipode(m["bottom"])
    for c, neg in negation_pairing(n).items():
        assert m[c] == antipode(m[neg])


def test_cube_isomorphism_fails_without_an_arrow():
    n = build_nelson([p, q, r])
    cut = NelsonDiagram(n.universe, n.constraint, n.vertices, n.arrows[1:])
    assert not nx.is_isomorphic(nx.Graph(list(cut.arrows)), nx.hypercube_graph(3))
    assert check_cube_isomorphism(cut) is None


def test_cube_isomorphism_needs_eight_vertices():
    with pytest.raises(WrongVertexCountError):
        check_cube_isomorphism(build_nelson([p, q]))


@pytest.mark.parametrize("mutate", [
    lambda vs, arrows: (vs[:-1], [a for a in arrows if "bottom" not in a]),  # no conclusion
    lambda vs, arrows: (vs, arrows + [("d1", "d2")]),                       # consequence as source
    lambda vs, arrows: (vs, arrows + [("top", "n1")]),                      # premiss as target
])
def test_role_invariants(mutate):
    n = build_nelson([p, q])
    vs, arrows = mutate(list(n.vertices), list(n.arrows))
    with pytest.raises(MalformedDiagramError):
        NelsonDiagram(n.universe, n.constraint, tuple(vs), tuple(arrows))


def random_nelson(rng):
    while True:
        k = rng.choice((2, 3))
        atoms = ["a", "b", "c", "d"][: rng.randint(2, 4)]
        ds = [oracle.random_formula(rng, atoms, 2) for _ in range(k)]
        try:
            return build_nelson(ds, include_all_negations=(k == 2 or rng.random() < 0.7))
        except (DegenerateDisjunctError, UnsatisfiableConstraintError):
            continue


def test_random_inferences_and_arrow_deletion():
    rng = random.Random(99)
    for _ in range(60):
        n = random_nelson(rng)
        assert validate_inferences(n).all_valid
        for drop in n.arrows:
            cut = NelsonDiagram(n.universe, n.constraint, n.vertices,
                                tuple(a for a in n.arrows if a != drop))
            bad = [i for i in validate_inferences(cut).per_conclusion if not i.valid]
            assert bad and all(_replays(cut, i) for i in bad)
