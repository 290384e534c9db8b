"""Exception types shared across the package."""


class UnsupportedGateError(ValueError):
    """Raised when a basic-gate decomposition is requested for a gate that has none."""


class ResourceLimitError(ValueError):
    """Raised when a dense object would exceed the supported qubit count."""
