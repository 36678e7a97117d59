"""Oppositional geometry for propositional formulas.

Parse formulas, classify pairs by Aristotelian relation, build and verify
hexagons and cubes of opposition, and convert Nelson argument diagrams to
and from opposition diagrams.

>>> from logical_geometry import parse, classify
>>> classify(parse("p"), parse("!p")).kind.value
'contradictory'
"""
from .diagram import (DegeneracyReport, Edge, EdgeVerdict, OppositionDiagram, Relation,
                      VerificationReport, Vertex, build_opposition_structure, collapse,
                      detect_degeneracies, verify)
from .document import from_document, load_document, save_document, to_document
from .errors import (AtomLimitError, DegenerateDisjunctError, FormulaSyntaxError, GeometryError,
                     LayoutMismatchError, MalformedDiagramError, NotAnOppositionStructureError,
                     SchemaError, TooFewDisjunctsError, UnknownAtomError, UnknownFormatError,
                     UnsatisfiableConstraintError, UnsupportedArityError, WrongVertexCountError)
from .formula import (BOTTOM, TOP, And, Atom, Bottom, Formula, Iff, Implies, Not, Or, Top,
                      conjoin, disjoin)
from .nelson import (Inference, InferenceReport, NelsonDiagram, NelsonVertex, Role, build_nelson,
                     check_cube_isomorphism, twist, untwist, validate_inferences)
from .opposition import Kind, OppositionRelation, classify
from .parser import parse
from .render import RenderOptions, render_diagram
from .semantics import TruthTable, Valuation, entails, equivalent, truth_table

__version__ = "0.1.0"
