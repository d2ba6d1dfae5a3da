"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed instance text or JSON; message carries a line number where possible."""


class ShapeMismatchError(ValueError):
    """A shape-specific solver was invoked on an instance of a different shape."""


class UnsupportedInstanceError(ValueError):
    """The requested method cannot handle this instance (e.g. brute-force node cap)."""


class CheckError(AssertionError):
    """An internal consistency check failed in check mode."""
