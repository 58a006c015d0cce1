"""Exception hierarchy.

Every error raised on purpose by the library derives from ``SegalisError`` so
callers (notably the CLI) can map it to an exit code.
"""


class SegalisError(Exception):
    """Base class for library errors."""


class EmptyComplex(SegalisError):
    pass


class BadVertex(SegalisError):
    pass


class NotAGap(SegalisError):
    pass


class DimensionTooLarge(SegalisError):
    pass


class NoBoundary(SegalisError):
    pass


class ZeroDimension(SegalisError):
    pass


class TooManyVertices(SegalisError):
    pass


class NotFullDimensional(SegalisError):
    pass


class NotAdmissible(SegalisError):
    pass


class NotComposable(SegalisError):
    pass


class FlatCell(SegalisError):
    pass


class TooLarge(SegalisError):
    """A configured resource guard would be exceeded."""


class BadArity(SegalisError):
    pass


class FlipNotAvailable(SegalisError):
    pass


class NotADiagram(SegalisError):
    """Diagram data fails to commute or is malformed."""


class TruncationTooLow(SegalisError):
    pass


class NoPaths(SegalisError):
    pass


class NotPartialMonoid(SegalisError):
    pass


class NotAnExcision(SegalisError):
    pass


class SimplicialIdentityError(SegalisError):
    """Face/degeneracy data violates a simplicial identity."""


class SchemaError(SegalisError):
    """Malformed JSON input."""
