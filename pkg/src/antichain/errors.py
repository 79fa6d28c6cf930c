"""Exception types shared across the package.

The CLI maps these onto exit codes: ``ValidationError`` -> 2,
``ScaleGuardError`` -> 3.
"""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class ScaleGuardError(ValueError):
    """An input exceeds a desk-scale guard (the computation would blow up)."""
