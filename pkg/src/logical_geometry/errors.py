"""Exception hierarchy shared by every module of the package."""


class GeometryError(Exception):
    """Base class for all errors raised by :mod:`logical_geometry`."""


class FormulaSyntaxError(GeometryError, ValueError):
    """Malformed formula source text.

    ``position`` is the 0-based character offset where parsing failed and
    ``expected`` the sorted set of token descriptions that would have been
    accepted there.
    """

    def __init__(self, message, text="", position=0, expected=(), context=""):
        self.text = text
        self.position = position
        self.expected = tuple(sorted(expected))
        self.message = message
        self.context = context
        detail = f"{context}{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownAtomError(GeometryError, KeyError):
    def __init__(self, atoms):
        self.atoms = tuple(sorted(atoms))
        super().__init__(f"atoms outside the universe: {', '.join(self.atoms)}")

    def __str__(self):
        return self.args[0]


class AtomLimitError(GeometryError):
    pass


class UnsatisfiableConstraintError(GeometryError):
    pass


class TooFewDisjunctsError(GeometryError):
    pass


class DegenerateDisjunctError(GeometryError):
    pass


class UnsupportedArityError(GeometryError):
    pass


class MalformedDiagramError(GeometryError, ValueError):
    pass


class NotAnOppositionStructureError(GeometryError):
    pass


class WrongVertexCountError(GeometryError):
    pass


class LayoutMismatchError(GeometryError):
    pass


class UnknownFormatError(GeometryError):
    pass


class SchemaError(GeometryError):
    """A diagram document failed validation.

    ``pointer`` is a JSON-pointer style location such as ``/vertices/3/id``.
    """

    def __init__(self, message, pointer=""):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")
