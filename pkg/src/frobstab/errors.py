"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: guard refusals are 1, malformed input
is 2 and violated theory is 3.
"""


class GuardError(RuntimeError):
    """An enumeration or realization would exceed its size guard."""


class ConsistencyError(AssertionError):
    """A result contradicts a proven property (signals a bug or bad instance)."""


class FrobeniusError(ConsistencyError):
    """A ring instance fails one of the local Frobenius axioms."""


class CodeFormatError(ValueError):
    """Malformed code file or ring spec string."""
