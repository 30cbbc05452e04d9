"""Exception types shared across the package."""


class TreeParseError(ValueError):
    """Malformed nested-parentheses tree text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class NotAdjacentError(ValueError):
    """Two maximal nestings (or Theta pairs) are not one flip apart."""


class NotALatticeError(ValueError):
    """A lattice-only operation was called on a poset that is not a lattice."""

    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness


class SizeLimitError(RuntimeError):
    """An input exceeds a configured size cap."""


class TheoremViolation(AssertionError):
    """A statement that should hold for every tree was observed to fail.

    Carries a machine-readable counterexample so it can be replayed.
    """

    def __init__(self, message: str, counterexample: dict | None = None):
        super().__init__(message)
        self.counterexample = counterexample or {}
