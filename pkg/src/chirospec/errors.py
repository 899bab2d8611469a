"""Exception types shared across the package."""


class ChirospecError(Exception):
    """Base class for all package-specific errors."""


class NonHermitianInput(ChirospecError):
    """A matrix expected to be Hermitian is not (beyond tolerance)."""


class DetuningTooSmall(ChirospecError):
    """Perturbative treatment requested outside its validity range."""


class UnsupportedKind(ChirospecError):
    """Operation does not support this joint-spectral-amplitude kind."""


class WrongKind(ChirospecError):
    """Operation requires a different joint-spectral-amplitude kind."""


class GridTooCoarse(ChirospecError):
    """Frequency grid cannot resolve the narrowest spectral feature."""


class NonFiniteResult(ChirospecError):
    """A numerical result came out NaN or infinite."""


class CurveTooShort(ChirospecError):
    """Spectrum curve has too few points to classify."""


class GridMismatch(ChirospecError):
    """Two curves to be compared were not sampled on the same grid."""


class ConfigError(ChirospecError):
    """Base class for configuration problems (CLI exit code 2)."""


class ParseError(ConfigError):
    """Configuration document is not well formed."""


class ValidationError(ConfigError):
    """Configuration document violates an invariant."""
