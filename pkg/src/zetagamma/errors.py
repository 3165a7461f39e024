"""Exception hierarchy shared by all zetagamma modules.

Exit-code mapping used by the CLI: InvalidInputError (and subclasses) are
usage errors (2), RejectedQueryError is a refused-but-well-formed query (3),
InternalInconsistencyError is an engine bug that must never be swallowed (4).
"""


class ZetaGammaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ZetaGammaError, ValueError):
    """Malformed or out-of-domain input (bad truncation, bad syntax, ...)."""


class TruncationMismatchError(InvalidInputError):
    """Two arithmetic functions with different truncations were combined."""


class RelationArityError(InvalidInputError):
    """A polynomial relation was applied to the wrong number of generators."""


class PrecisionExceededError(InvalidInputError):
    """More digits were requested than a numeric literal can support."""


class ImpreciseInputError(InvalidInputError):
    """A numeric input's error radius is too large for the requested search."""


class InvalidBasisError(InvalidInputError):
    """Lattice basis vectors are linearly dependent or malformed."""


class RejectedQueryError(ZetaGammaError):
    """A hypothesis check failed; carries the check transcript."""

    def __init__(self, message, checks=None):
        super().__init__(message)
        self.checks = list(checks) if checks is not None else []


class InternalInconsistencyError(ZetaGammaError):
    """Two rules derived contradictory verdicts; always a bug, never caught."""
