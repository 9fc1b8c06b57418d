__all__ = ["ConfigError", "NumericError"]


class ConfigError(ValueError):
    """Invalid input: inconsistent parameters, missing keys or unknown scenario."""


class NumericError(ArithmeticError):
    """A computation could not deliver a trustworthy result."""
