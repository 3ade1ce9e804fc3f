"""Exception hierarchy shared by the library and the command line."""


class CurvesingError(Exception):
    """Base class for errors raised deliberately by this package."""


class InputError(CurvesingError, ValueError):
    """The input does not describe a germ this package can handle."""


class NonIsolatedError(CurvesingError, ValueError):
    """Infinite colength: the singularity is not isolated (or f is not reduced)."""


class InternalInvariantError(CurvesingError, RuntimeError):
    """A mathematical invariant that must hold was violated: a bug, not bad input."""
