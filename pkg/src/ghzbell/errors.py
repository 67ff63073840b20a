"""Exception types shared across the package."""


class ParseError(ValueError):
    """A state or matrix file is malformed."""


class NumericalError(RuntimeError):
    """An iterative numerical routine failed to converge."""
