"""Exception hierarchy shared by all modules."""


class PartialZetaError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(PartialZetaError, ValueError):
    pass


class BudgetExceeded(PartialZetaError):
    """An enumeration would exceed its configured budget.

    ``bound`` is the offending quantity, ``limit`` the configured cap and
    ``completed`` (for series) the largest k finished before the overrun.
    """

    def __init__(self, message, bound=None, limit=None, completed=None):
        super().__init__(message)
        self.bound = bound
        self.limit = limit
        self.completed = completed


class DegreeMismatch(PartialZetaError, ValueError):
    pass


class PolySyntaxError(PartialZetaError, ValueError):
    """Malformed polynomial text. ``pos`` is a 0-based offset into the text."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        self.line = None
        self.column = None
        super().__init__(message)

    def __str__(self):
        msg = self.args[0]
        if self.line is not None:
            return f"line {self.line}, column {self.column}: {msg}"
        if self.pos is not None:
            return f"{msg} (at position {self.pos})"
        return msg


class UnknownVariable(PolySyntaxError):
    pass


class GeneratorNotAllowed(PolySyntaxError):
    pass


class ZeroPolynomial(PartialZetaError, ValueError):
    pass


class InjectivityViolated(PartialZetaError):
    pass


class NonUnitConstantTerm(PartialZetaError, ValueError):
    pass


class InsufficientTerms(PartialZetaError, ValueError):
    pass


class ConvergenceFailure(PartialZetaError, ArithmeticError):
    pass


class IllConditioned(PartialZetaError, ArithmeticError):
    pass


class NonIntegerPrediction(PartialZetaError, ArithmeticError):
    pass


class ZeroDegree(PartialZetaError, ValueError):
    pass
