"""Exception types raised by the library."""


class DesignError(ValueError):
    """Invalid subset, design, or parameter combination."""


class MemoryCapError(RuntimeError):
    """The requested computation needs more ranks than the configured cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(f"C(v,k) = {needed} ranks exceeds the cap of {cap}")
        self.needed = needed
        self.cap = cap


class GroupError(ValueError):
    """Malformed permutation or group file."""


class NotPreservedError(ValueError):
    """A group generator does not map the design onto itself."""


class TheoremViolation(AssertionError):
    """A computed instance contradicts a classification result it should satisfy."""
