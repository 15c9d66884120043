"""Exceptions raised by the library; the CLI maps each class to an exit code."""


class EdgeIdealError(Exception):
    exit_code = 1


class GraphFormatError(EdgeIdealError, ValueError):
    """Malformed graph input: bad graph6, bad edge list, loops, out-of-range vertices."""

    exit_code = 2


class CorpusParseError(GraphFormatError):
    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
        self.message = message

    def __reduce__(self):
        return (self.__class__, (self.line_number, self.message))


class UsageError(EdgeIdealError, ValueError):
    exit_code = 2


class DeskCapExceeded(EdgeIdealError):
    exit_code = 3

    def __init__(self, n, cap, what="homology scan"):
        message = f"{what} refused: {n} vertices, cap is {cap}"
        if what == "homology scan":
            message += " (raise it with --desk-cap or EDGEIDEAL_DESK_CAP; cost grows as 2^n)"
        super().__init__(message)
        self.n = n
        self.cap = cap
        self.what = what

    def __reduce__(self):
        return (self.__class__, (self.n, self.cap, self.what))


class PolynomialOverflowError(EdgeIdealError, OverflowError):
    exit_code = 3


class BoundViolation(EdgeIdealError):
    """A proven inequality failed; always a bug in the computation."""

    def __init__(self, graph6, name, lhs, rhs):
        super().__init__(f"{graph6}: bound {name} violated ({lhs} > {rhs})")
        self.graph6 = graph6
        self.name = name
        self.lhs = lhs
        self.rhs = rhs

    def __reduce__(self):
        # raised inside pool workers and unpickled in the parent
        return (self.__class__, (self.graph6, self.name, self.lhs, self.rhs))


class PureResolutionViolation(EdgeIdealError):
    pass


class HomologyError(EdgeIdealError):
    """The boundary maps do not form a chain complex."""


class PolynomialError(EdgeIdealError, ArithmeticError):
    """Inexact polynomial division; a canonical series was built from bad input."""
