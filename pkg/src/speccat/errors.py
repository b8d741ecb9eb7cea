"""Exception types shared across the package."""


class SpeccatError(Exception):
    """Base class for all library errors."""


class InvalidObject(SpeccatError):
    """An object descriptor or table fails a structural check."""


class InvalidMorphism(SpeccatError):
    """A map table is not a structure-preserving basepoint-preserving map."""


class BackendMismatch(SpeccatError):
    """Two objects from different backends were paired."""


class CompositionMismatch(SpeccatError):
    """compose(g, f) called with cod(f) != dom(g)."""


class CospanMismatch(SpeccatError):
    """pullback(f, g) called with cod(f) != cod(g)."""


class PreconditionViolation(SpeccatError):
    """An operation was called outside its stated precondition."""


class BoundExceeded(SpeccatError):
    """A requested object or enumeration exceeds the configured size bound."""


class ConsistencyError(SpeccatError):
    """An internal cross-check failed; either the theory or the code is wrong."""
