"""Exception hierarchy shared by every module of the package."""


class QClusterError(Exception):
    """Base class for all package errors."""


class NotDivisible(QClusterError, ArithmeticError):
    """An exact quotient does not exist in the ring."""


class DivisionByZero(QClusterError, ZeroDivisionError):
    pass


class RankMismatch(QClusterError, ValueError):
    pass


class ShapeMismatch(QClusterError, ValueError):
    pass


class NotQuasiCommuting(QClusterError, ValueError):
    """Two factors of a normalized product do not q-commute."""


class NotInvertible(QClusterError, ValueError):
    pass


class NotSkewSymmetric(QClusterError, ValueError):
    pass


class IncompatiblePair(QClusterError, ValueError):
    pass


class FrameFormMismatch(QClusterError, ValueError):
    pass


class IndexOutOfRange(QClusterError, IndexError):
    pass


class BoundExceeded(QClusterError, RuntimeError):
    pass


class AmbientMismatch(QClusterError, ValueError):
    pass


class NotWeaklySeparated(QClusterError, ValueError):
    pass


class InvalidParams(QClusterError, ValueError):
    pass


class NotConsecutivelyGeneric(QClusterError, ValueError):
    pass


class SizeMismatch(QClusterError, ValueError):
    pass


class UnknownSymbol(QClusterError, KeyError):
    pass


class FactorizationFailed(QClusterError, RuntimeError):
    """A braid image is not a frozen monomial times a single cluster variable."""


class NotBijective(QClusterError, RuntimeError):
    pass


class ParseError(QClusterError, ValueError):
    pass
