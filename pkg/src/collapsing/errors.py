"""Exception hierarchy shared by all modules."""


class CollapsingError(Exception):
    """Base class for library errors."""


class DimensionMismatchError(CollapsingError, ValueError):
    """Vector/functional length does not match the space."""


class PreconditionError(CollapsingError, ValueError):
    """A documented operation precondition was violated by the caller."""


class BackendMixError(CollapsingError, ValueError):
    """Exact rationals and binary64 floats mixed inside one computation."""


class InvariantError(CollapsingError, RuntimeError):
    """An internal certified invariant failed; indicates a bug, not bad input."""
