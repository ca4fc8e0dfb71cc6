"""Exception hierarchy.

Domain errors (bad input, violated preconditions) map to CLI exit code 1;
internal-invariant errors signal a bug and should never fire.
"""


class LiebraError(Exception):
    pass


class DomainError(LiebraError, ValueError):
    pass


class EmptyAlphabetError(DomainError):
    def __init__(self):
        super().__init__("alphabet must contain at least one letter")


class PatternViolationError(DomainError):
    """A two-colored graph is not a pattern-avoiding tree."""

    def __init__(self, message, pattern=None, triple=None):
        super().__init__(message)
        self.pattern = pattern
        self.triple = triple


class MonomialSyntaxError(DomainError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class MultilinearityError(DomainError):
    def __init__(self, message, letter=None):
        super().__init__(message)
        self.letter = letter


class InternalInvariantError(LiebraError, RuntimeError):
    pass
