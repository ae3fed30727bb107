"""Exception types shared across the package."""


class SpecError(ValueError):
    """Invalid weight/family/transition specification."""


class ProbeError(ValueError):
    """A symbolic mass-quotient probe was required but not supplied."""


class TruncationError(RuntimeError):
    """A truncated infinite sum failed to converge within tolerance."""
