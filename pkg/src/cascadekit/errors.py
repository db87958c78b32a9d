"""Exception types shared across the package."""


class CascadeKitError(Exception):
    """Base class for all cascadekit errors."""


class InputError(CascadeKitError):
    """Malformed or out-of-contract input (bad degree, range, schema, ...)."""


class CapExceededError(CascadeKitError):
    """A configured resource cap was exceeded during a computation."""

    def __init__(self, message: str, cap: int):
        super().__init__(f"{message} (cap: {cap})")
        self.cap = cap


class InternalError(CascadeKitError):
    """An internal consistency check failed; indicates a bug."""
