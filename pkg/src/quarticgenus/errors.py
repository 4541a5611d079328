"""Exception types raised across the package."""


class QuarticGenusError(Exception):
    """Base class for every error raised by this package."""


class NotSquarefree(QuarticGenusError, ValueError):
    pass


class NotQuadraticResidue(QuarticGenusError, ValueError):
    pass


class SymbolUndefined(QuarticGenusError, ValueError):
    pass


class InvalidPrime(QuarticGenusError, ValueError):
    pass


class MixedField(QuarticGenusError, ValueError):
    pass


class NotIntegral(QuarticGenusError, ValueError):
    pass


class FormMismatch(QuarticGenusError, ValueError):
    pass


class NoSolutionInBound(QuarticGenusError, RuntimeError):
    """The norm equation had no solution inside a window that provably contains one."""


class InvalidInput(QuarticGenusError, ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class UnhandledCase(QuarticGenusError, RuntimeError):
    def __init__(self, message, nearest=()):
        self.nearest = list(nearest)
        if self.nearest:
            message += " (nearest rows: " + ", ".join(self.nearest) + ")"
        super().__init__(message)


class DispatchInconsistency(QuarticGenusError, RuntimeError):
    """Quartic-symbol and mod-4 evaluations of the same condition disagree."""


class NotOddElement(QuarticGenusError, ValueError):
    pass


class TooManyGenerators(QuarticGenusError, ValueError):
    pass
