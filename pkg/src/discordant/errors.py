"""Error types shared across the package."""


class DiscordantError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(DiscordantError, ValueError):
    """Matrix or state dimensions are inconsistent with the requested operation."""


class InvalidSpec(DiscordantError, ValueError):
    """A state description violates its invariants (Hermiticity, positivity, trace, weights)."""


class PrimeRequired(DiscordantError, ValueError):
    """A closed-form criterion was requested for a non-prime local dimension."""


class InvalidMeasurement(DiscordantError, ValueError):
    """A measurement basis is not orthonormal."""


class PreconditionError(DiscordantError, RuntimeError):
    """An operation was called on inputs that fail its stated precondition."""
