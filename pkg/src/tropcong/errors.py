"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class ResourceError(RuntimeError):
    """A configured size bound was exceeded (CLI exit code 3)."""
