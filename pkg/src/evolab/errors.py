"""Shared exception types."""


class ConfigError(ValueError):
    """Invalid trial, experiment, or distribution configuration."""


class DimensionMismatch(ValueError):
    """Assignment length does not match the configured dimension."""


class ReprMismatch(TypeError):
    """Hypothesis representation does not fit the function class."""


class EnumerationCapExceeded(ValueError):
    """Dimension too large for exhaustive enumeration; use the empirical path."""
