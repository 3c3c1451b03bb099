class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NormalizationError(DomainError):
    """A harmonic map violates the coefficient constraints of its class tag."""
