"""Exception types shared across the library."""


class ItlError(Exception):
    """Base class for all library errors."""


class MalformedSpec(ItlError):
    """A representation descriptor violates a type invariant."""


class ProgramDivergence(ItlError):
    """A program-backed stream exceeded its evaluation step budget."""


class FragmentUnsupported(ItlError):
    """The requested exact decision is outside the decidable fragment."""


class UnknownId(ItlError):
    """Lookup of a system, connection or predicate id failed."""


class BadParams(ItlError):
    """Parameters are outside the range a construction admits."""


class TypeMismatch(ItlError):
    """Composition endpoints or operand kinds do not line up."""
