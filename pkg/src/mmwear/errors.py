"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Invalid geometric configuration (point outside region, undefined cone, ...)."""


class QuadratureError(RuntimeError):
    """Numerical integration failed to reach the requested tolerance."""


class DegenerateDomainError(ValueError):
    """An integration/probability domain has collapsed (e.g. zero-area remainder)."""


class DivergentRateError(ValueError):
    """The ergodic-rate integral does not converge for the given parameters."""


class ConfigError(ValueError):
    """Malformed configuration file or invalid flag combination."""
