"""Bundled fixture corpus and the findings each fixture is expected to produce.

Every fixture is a diagram document shipped in ``logical_geometry/fixtures``.
``survey`` computes what the library observes about a fixture;
``check_fixture`` compares that against the frozen expectation below.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .diagram import OppositionDiagram, detect_degeneracies, verify
from .document import Diagram, loads
from .nelson import NelsonDiagram, SYNTHESIZED, check_cube_isomorphism, twist, untwist, validate_inferences

_PACKAGE = "logical_geometry"


@dataclass(frozen=True)
class CorpusFixture:
    name: str
    description: str
    expected: dict = field(repr=False)

    def text(self) -> str:
        return resources.files(_PACKAGE).joinpath(f"fixtures/{self.name}.json").read_text(encoding="utf-8")

    def load(self) -> Diagram:
        return loads(self.text())


_HEXAGON = {"contradictory": 3, "contrary": 3, "subcontrary": 3, "subalternation": 6}
_CUBE = {"contradictory": 4, "contrary": 6, "subcontrary": 6, "subalternation": 12}


def _clean_opposition(partition, order):
    return {"kind": "opposition", "refuted": [], "missing_pairs": [], "partition": partition,
            "equivalent_pairs": [], "non_contingent": [], "failed_contrarieties": [],
            "collapsed_order": order}


def _valid_nelson(vertices, untwisted, synthesized=0, cube=None):
    return {"kind": "nelson", "invalid": [], "untwisted_vertices": untwisted,
            "untwist_clean": True, "twist_round_trip": True, "synthesized": synthesized,
            "cube": cube, "vertices": vertices}


_FIXTURES = (
    CorpusFixture("kantian", "Kantian hexagon: a posteriori / analytic over E, L",
                  _clean_opposition(_HEXAGON, 6)),
    CorpusFixture("kantian-nelson", "Nelson diagram for the source of geometric axioms",
                  _valid_nelson(6, 6)),
    CorpusFixture("political", "Hexagon for inter-state anarchy versus world-state",
                  _clean_opposition(_HEXAGON, 6)),
    CorpusFixture("political-nelson", "Nelson diagram for inter-state anarchy versus world-state",
                  _valid_nelson(6, 6)),
    CorpusFixture("duty-value", "Duty and value hexagon as drawn, with its false contrariety", {
        "kind": "opposition",
        "refuted": [
            ["P", "PnorQ", "contrary", "contradictory", None],
            ["P", "PvQ", "subalternation", "equivalent", None],
            ["P", "Q", "contrary", "subalternation-right-to-left", {"D": False, "V": True}],
            ["P", "notQ", "subalternation", "subcontrary", {"D": False, "V": True}],
            ["PnorQ", "notP", "subalternation", "equivalent", None],
            ["PvQ", "notP", "subcontrary", "contradictory", None],
            ["Q", "notP", "subalternation", "contrary", {"D": False, "V": True}],
            ["notP", "notQ", "subcontrary", "subalternation-left-to-right", {"D": False, "V": True}],
        ],
        "missing_pairs": [],
        "partition": {"contradictory": 5, "contrary": 2, "subcontrary": 2, "subalternation": 4,
                      "equivalent": 2},
        "equivalent_pairs": [["PvQ", "P"], ["notP", "PnorQ"]],
        "non_contingent": [],
        "failed_contrarieties": [["P", "Q", {"D": False, "V": True}]],
        "collapsed_order": 4,
    }),
    CorpusFixture("metaphysics", "Eight-vertex Nelson diagram on metaphysical knowledge",
                  _valid_nelson(8, 8, cube=True)),
    CorpusFixture("metaphysics-cube", "Cube of opposition for the metaphysical trichotomy",
                  _clean_opposition(_CUBE, 8)),
    CorpusFixture("poincare", "Seven-vertex Nelson diagram: conventionalism as a false way out",
                  _valid_nelson(7, 8, synthesized=1)),
)

_BY_NAME = {f.name: f for f in _FIXTURES}


def fixture_names() -> list[str]:
    return [f.name for f in _FIXTURES]


def fixtures() -> tuple[CorpusFixture, ...]:
    return _FIXTURES


def get_fixture(name: str) -> CorpusFixture:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"no corpus fixture named {name!r} "
                       f"(available: {', '.join(fixture_names())})") from None


def _survey_opposition(d: OppositionDiagram) -> dict:
    report = verify(d)
    degen = detect_degeneracies(d)
    return {
        "kind": "opposition",
        "refuted": [[v.edge.source, v.edge.target, v.edge.kind.value, v.actual.value,
                     v.witness.to_dict() if v.witness else None] for v in report.refuted],
        "missing_pairs": [[a, b, k.value] for a, b, k in report.missing_pairs],
        "partition": dict(report.partition_counts),
        "equivalent_pairs": [list(p) for p in degen.equivalent_pairs],
        "non_contingent": list(degen.non_contingent_vertices),
        "failed_contrarieties": [[a, b, w.to_dict()] for (a, b), w in degen.failed_contrarieties],
        "collapsed_order": degen.collapsed_order,
    }


def _survey_nelson(n: NelsonDiagram) -> dict:
    inferences = validate_inferences(n)
    u = untwist(n)
    cube = None
    if len(n.vertices) == 8:
        cube = check_cube_isomorphism(n) is not None
    return {
        "kind": "nelson",
        "invalid": [i.vertex_id for i in inferences.per_conclusion if not i.valid],
        "untwisted_vertices": len(u.vertices),
        "untwist_clean": verify(u).clean,
        "twist_round_trip": twist(u) == n,
        "synthesized": sum(v.label.endswith(SYNTHESIZED) for v in u.vertices),
        "cube": cube,
        "vertices": len(n.vertices),
    }


def survey(d: Diagram) -> dict:
    """Everything the library observes about a diagram, as plain JSON-ready data."""
    if isinstance(d, NelsonDiagram):
        return _survey_nelson(d)
    return _survey_opposition(d)


def findings(observed: dict) -> list[str]:
    """Human-readable list of problems in a survey; empty means the diagram is clean."""
    out = []
    if observed["kind"] == "nelson":
        out += [f"invalid inference into {vid}" for vid in observed["invalid"]]
        if not observed["untwist_clean"]:
            out.append("untwisted diagram does not verify")
        if not observed["twist_round_trip"]:
            out.append("twist does not invert untwist")
        if observed["cube"] is False:
            out.append("arrow graph is not a cube")
        return out
    for src, dst, claimed, actual, witness in observed["refuted"]:
        w = f" witness {_fmt(witness)}" if witness else ""
        out.append(f"refuted {claimed} {src}-{dst}: actually {actual}{w}")
    out += [f"missing edge {a}-{b}: {k}" for a, b, k in observed["missing_pairs"]]
    out += [f"equivalent vertices {a} = {b}" for a, b in observed["equivalent_pairs"]]
    out += [f"non-contingent vertex {v}" for v in observed["non_contingent"]]
    out += [f"failed contrariety {a}-{b}: both true at {_fmt(w)}"
            for a, b, w in observed["failed_contrarieties"]]
    if observed["equivalent_pairs"] or observed["non_contingent"]:
        out.append(f"collapses to {observed['collapsed_order']} vertex classes")
    return out


def _fmt(witness: dict) -> str:
    return " ".join(f"{k}={'true' if v else 'false'}" for k, v in witness.items())


@dataclass(frozen=True)
class FixtureCheck:
    name: str
    observed: dict
    mismatches: tuple[str, ...]

    @property
    def as_expected(self) -> bool:
        return not self.mismatches

    @property
    def findings(self) -> list[str]:
        return findings(self.observed)


def check_fixture(name: str) -> FixtureCheck:
    fx = get_fixture(name)
    observed = survey(fx.load())
    mismatches = tuple(f"{key}: expected {fx.expected.get(key)!r}, observed {value!r}"
                       for key, value in observed.items() if fx.expected.get(key) != value)
    return FixtureCheck(name, observed, mismatches)


def check_all() -> list[FixtureCheck]:
    return [check_fixture(name) for name in fixture_names()]
