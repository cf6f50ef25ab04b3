"""Exception hierarchy."""


class NCDiffError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(NCDiffError, ValueError):
    pass


class ValidationError(NCDiffError, ValueError):
    """An algebra presentation failed validation."""

    location: str | None = None


class ShapeMismatch(ValidationError):
    pass


class NotAssociative(ValidationError):
    def __init__(self, triple, lhs, rhs):
        self.triple = tuple(triple)
        self.location = "table[{}][{}][{}]".format(*self.triple)
        super().__init__(f"(e_{triple[0]} e_{triple[1]}) e_{triple[2]} != e_{triple[0]} (e_{triple[1]} e_{triple[2]})")
        self.lhs, self.rhs = lhs, rhs


class BadUnit(ValidationError):
    def __init__(self, index, message=None):
        self.index = index
        self.location = "unit" if index is None else f"unit/e_{index}"
        super().__init__(message or f"unit law fails on basis element e_{index}")


class AlgebraMismatch(NCDiffError, ValueError):
    pass


class UnknownPreset(NCDiffError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"


class BadParams(NCDiffError, ValueError):
    pass


class NotCentral(NCDiffError, ValueError):
    pass


class NotADerivation(NCDiffError, ValueError):
    def __init__(self, message, index=None, pair=None):
        super().__init__(message)
        self.index = index
        self.pair = pair


class NotInModule(NCDiffError, ValueError):
    pass


class ConsistencyError(NCDiffError, AssertionError):
    """An internal identity that must hold did not; indicates a bug."""


class CoefficientNotCentral(ConsistencyError):
    pass


class LiftMismatch(ConsistencyError):
    pass


class ParseError(NCDiffError, ValueError):
    def __init__(self, message, location="$"):
        super().__init__(f"{location}: {message}")
        self.location = location
