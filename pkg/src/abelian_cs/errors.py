"""Exception hierarchy shared by every module of the package."""


class AbelianCSError(ValueError):
    """Base class for all domain errors raised by this package."""


class NonSquare(AbelianCSError):
    pass


class NonSymmetric(AbelianCSError):
    pass


class Degenerate(AbelianCSError):
    pass


class NotEven(AbelianCSError):
    """A form has an odd diagonal entry where an even one is required."""

    def __init__(self, index, message=None):
        self.index = index
        if message is None:
            message = f"diagonal entry {index} is odd; form is not even"
        super().__init__(message)


class ElementMismatch(AbelianCSError):
    pass


class SizeMismatch(AbelianCSError):
    pass


class NotUnimodular(AbelianCSError):
    pass


class BudgetExceeded(AbelianCSError):
    pass


class RouteMismatch(AssertionError):
    """Two independent computations of the same quantity disagree."""


class ParseError(AbelianCSError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = [str(source)] if source is not None else []
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
