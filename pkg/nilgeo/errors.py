"""Exception hierarchy shared by every nilgeo module."""


class NilgeoError(Exception):
    """Base class for all errors raised by nilgeo."""


class DimensionError(NilgeoError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class SingularMatrixError(NilgeoError, ValueError):
    """A matrix that must be invertible has zero determinant."""


class InvalidStructureError(NilgeoError, ValueError):
    """An algebraic object violates one of its defining invariants.

    ``invariant`` names the violated rule (for example ``"jacobi"`` or
    ``"j_squared"``) so that command-line callers can report it verbatim.
    """

    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant
        self.detail = detail


class NotNilpotentError(NilgeoError, ValueError):
    """The ascending central series stabilizes below the whole algebra."""


class ConstraintError(NilgeoError, ValueError):
    """A parameter assignment violates a catalog constraint."""

    def __init__(self, constraint: str, detail: str):
        super().__init__(f"{constraint}: {detail}")
        self.constraint = constraint


class UnknownEntryError(NilgeoError, KeyError):
    """No catalog entry carries the requested id."""

    def __str__(self) -> str:
        return f"unknown catalog entry: {self.args[0]}"


class PreconditionError(NilgeoError, ValueError):
    """An operation was called on inputs outside its domain."""


class DocumentError(NilgeoError, ValueError):
    """A JSON input document is malformed; ``location`` points at the offending field."""

    def __init__(self, location: str, detail: str):
        super().__init__(f"{location}: {detail}" if location else detail)
        self.location = location
        self.detail = detail
