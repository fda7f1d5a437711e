"""Exception types raised by the ginv package."""


class GinvError(Exception):
    """Base class for all package errors."""


class InputError(GinvError, ValueError):
    """Malformed or inadmissible input (CLI exit code 2)."""


class DegenerateInput(GinvError):
    """Input for which the requested problem is degenerate, e.g. A = 0 (CLI exit code 3)."""


class DimensionMismatch(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotNonnegative(InputError):
    pass


class WrongBlockSize(InputError):
    pass


class SingularMatrix(InputError):
    pass


class SingularBlock(SingularMatrix):
    pass


class RankDeficient(InputError):
    pass


class RankDeficientBlock(RankDeficient):
    pass


class NotRankOne(InputError):
    pass


class NotRankTwo(InputError):
    pass


class NotPositiveSemidefinite(InputError):
    """Rank-1 symmetric matrix of the form -uu^T; no real u with A = uu^T exists."""


class ZeroPivot(InputError):
    pass


class BlockNotMinimal(InputError):
    pass


class ColumnNotMinimal(InputError):
    pass


class NumericalBreakdown(GinvError, ArithmeticError):
    """Float-mode simplex met a pivot below the breakdown threshold."""


class InternalError(GinvError, RuntimeError):
    """A state that the underlying theory rules out was reached."""
