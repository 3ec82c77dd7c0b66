class DomainError(ValueError):
    """Input outside the set where an operation is defined."""


class NoConvergence(RuntimeError):
    """The inverse-exponential solve did not reach its residual tolerance."""


class Unreached(RuntimeError):
    """No brute-force grid point landed within tolerance of the target."""
