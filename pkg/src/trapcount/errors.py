class DomainError(ValueError):
    """Input outside the domain of an operation (division by zero, odd order, ...)."""


class ConfigError(ValueError):
    """Unknown configuration key, catalogue id or malformed option."""


class ResourceError(RuntimeError):
    """A configured size cap (Pfaffian order, enumeration count) was exceeded."""
