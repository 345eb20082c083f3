"""Exception hierarchy shared by every module."""


class QuandleError(Exception):
    """Base class for all errors raised by this package."""


class AxiomViolation(QuandleError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"axiom {axiom} fails at {self.witness}")


class NotFinite(QuandleError):
    pass


class KindUnavailable(QuandleError):
    pass


class ResourceCap(QuandleError):
    """Raised when a computation would exceed a configured size cap."""


class DegreeTooLarge(ResourceCap):
    pass


class SearchTooLarge(ResourceCap):
    pass


class BadOrbitTuple(QuandleError):
    pass


class WordMismatch(QuandleError):
    pass


class BadPolynomial(QuandleError):
    pass


class UnsupportedDiagram(QuandleError):
    pass


class ParseError(QuandleError):
    pass
