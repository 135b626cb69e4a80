"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition (shape, domain, range)."""


class UndefinedComparisonError(InvalidInputError):
    """The coincidence index is undefined: both compared vectors are zero."""


class UnsupportedConfigurationError(ValueError):
    """A structurally valid configuration the implementation does not cover
    (e.g. unequal-spread normal bases, dimensions other than 1 or 2)."""


class ConfigError(ValueError):
    """A run configuration file failed validation.  Messages name the key."""
