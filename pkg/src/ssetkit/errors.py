"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A constructed object violates one of its structural invariants."""


class EnumerationLimit(RuntimeError):
    """A combinatorial search exceeded its candidate budget."""


class StabilizationError(RuntimeError):
    """A tower did not stabilize within the probed range."""
