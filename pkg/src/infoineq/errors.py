"""Exception types raised across the package."""

from __future__ import annotations


class InfoIneqError(Exception):
    """Base class for every error this package raises deliberately."""


class ParseError(InfoIneqError):
    """Invalid textual input. `offset` is the character offset into the text."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class DuplicateNameError(ParseError):
    pass


class UnknownVariableError(ParseError):
    pass


class EmptyArgumentListError(ParseError):
    pass


class MissingRelationalOperatorError(ParseError):
    pass


class ConstraintError(InfoIneqError):
    """Invalid constraint declaration (raised by the parser or the compilers)."""


class OverlappingBlocksError(ConstraintError):
    pass


class TooFewBlocksError(ConstraintError):
    pass


class OverlappingGroupsError(ConstraintError):
    pass


class InvalidFactorizationError(ConstraintError):
    pass


class EmptySetError(InfoIneqError):
    """A variable set that must be nonempty was empty."""


class DimensionMismatchError(InfoIneqError):
    """Vectors or matrices built for different universe sizes were mixed."""


class CertificateUnavailableError(InfoIneqError):
    """Dual extraction was requested for a problem that has no certificate."""


class InfeasibleDecompositionError(InfoIneqError):
    """A basic measure failed to decompose over the elemental measures.

    This cannot happen for a well-formed input; it signals an internal bug.
    """


class UnverifiedCertificateError(InfoIneqError):
    """A proof was requested from a certificate that does not verify."""
