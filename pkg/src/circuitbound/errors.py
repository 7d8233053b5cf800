"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible shapes or lengths."""


class PreconditionError(ValueError):
    """A documented precondition (rank, halfspace, range) does not hold."""


class ZeroPolynomialError(ValueError):
    """An operation received the identically-zero polynomial."""


class DomainError(ValueError):
    """A value lies outside the domain of the requested evaluation."""


class GenerationError(RuntimeError):
    """Random instance generation exhausted its resample budget."""


class ParseError(ValueError):
    """An instance or report document is malformed."""
