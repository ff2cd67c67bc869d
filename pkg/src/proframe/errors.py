"""Exception hierarchy for proframe."""


class ProframeError(Exception):
    """Base class for every error raised by this package."""


class IncompatibleSignatureError(ProframeError, ValueError):
    """Operands live over different algebras or modules."""


class BlockIndexError(ProframeError, IndexError):
    pass


class HermitianRequiredError(ProframeError, ValueError):
    pass


class NotPositiveError(ProframeError, ValueError):
    pass


class NotInvertibleError(ProframeError, ValueError):
    pass


class NotSelfAdjointError(ProframeError, ValueError):
    pass


class NotSurjectiveError(ProframeError, ValueError):
    pass


class NotAFrameError(ProframeError, ValueError):
    """The family has lower optimal bound at or below tolerance."""


class InvalidProjectionError(ProframeError, ValueError):
    pass


class IncompatibleMapError(ProframeError, ValueError):
    """A theta map does not intertwine the inner products through its hom."""


class PreconditionError(ProframeError, ValueError):
    pass


class DocumentError(ProframeError, ValueError):
    """Malformed or inconsistent frame document."""
