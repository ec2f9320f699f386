class CofcatError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(CofcatError):
    """A value violates its structural invariants (d^2 != 0, broken functoriality, ...)."""


class PreconditionError(CofcatError):
    """An operation was called on inputs outside its domain."""
