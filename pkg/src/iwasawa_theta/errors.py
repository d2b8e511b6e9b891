"""Exception hierarchy shared by every module of the package."""


class IwasawaError(Exception):
    """Base class for all package errors."""


class NotAUnit(IwasawaError, ArithmeticError):
    pass


class NonOrdinary(IwasawaError, ArithmeticError):
    """Raised when a_p is divisible by p, so no unit root exists."""


class NonResidue(IwasawaError, ArithmeticError):
    pass


class LayerMismatch(IwasawaError, ValueError):
    pass


class BottomLayer(IwasawaError, ValueError):
    pass


class DimensionMismatch(IwasawaError, ValueError):
    pass


class SizeTooLarge(IwasawaError, ValueError):
    pass


class LevelOutOfRange(IwasawaError, IndexError):
    pass


class InvalidTower(IwasawaError, ValueError):
    pass


class HypothesisViolation(IwasawaError, ValueError):
    pass


class BadReduction(IwasawaError, ValueError):
    pass


class RamifiedPrime(IwasawaError, ValueError):
    pass


class NonIntegralNorm(IwasawaError, ValueError):
    pass


class NotSplit(IwasawaError, ValueError):
    pass


class DataError(IwasawaError, ValueError):
    """Malformed or inconsistent input data (JSON files, coefficient lists)."""
