"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: validation failures exit 2,
failed numerical checks exit 3, resource-cap refusals exit 4.
"""


class ValidationError(ValueError):
    """A precondition on user-supplied arguments was violated."""


class VerificationError(ArithmeticError):
    """A numerical identity or convergence check failed.

    Carries the achieved error in the message so callers can report
    achieved-vs-tolerance without re-running the check.
    """


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured dense-size caps."""
