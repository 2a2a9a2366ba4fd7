"""Exception types shared across the package."""


class BlockdegError(Exception):
    """Base class for all package-specific errors."""


class InternalConsistencyError(BlockdegError):
    """An internal invariant failed (e.g. an exact division left a remainder).

    This is never raised for bad user input; it signals a bug in the
    implementation or in embedded data, and the CLI maps it to exit code 3.
    """


class InapplicableBindingError(BlockdegError):
    """A degree expression was evaluated at a binding where a factor vanishes.

    Exact evaluation of product/quotient expressions refuses bindings that put
    a zero in any denominator factor (the expression does not describe a
    character degree there).
    """


class UnsupportedTypeError(BlockdegError):
    """A group type outside the supported classical families was requested."""
