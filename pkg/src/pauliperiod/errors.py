"""Exception types shared across the package."""


class PauliPeriodError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PauliPeriodError, ValueError):
    pass


class NotNilpotent(PauliPeriodError, ValueError):
    pass


class SingularMatrix(PauliPeriodError, ValueError):
    pass


class MalformedTableau(PauliPeriodError, ValueError):
    pass


class ParseError(PauliPeriodError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonClifford(PauliPeriodError, ValueError):
    pass


class RingUnrepresentable(PauliPeriodError, ValueError):
    pass


class UnsupportedControl(PauliPeriodError, ValueError):
    pass


class UnsupportedGate(PauliPeriodError, ValueError):
    pass


class NonPermutationGate(PauliPeriodError, ValueError):
    pass


class BudgetExceeded(PauliPeriodError, RuntimeError):
    pass


class MismatchError(PauliPeriodError, AssertionError):
    """A theorem-level cross-check failed; always a bug signal."""


class NoFiniteOrder(PauliPeriodError, ValueError):
    pass


class NoSuchEigenphase(PauliPeriodError, ValueError):
    pass


class PostSelectImpossible(PauliPeriodError, ValueError):
    pass


class ZeroProjection(PauliPeriodError, ValueError):
    pass


class NotAnEigenstate(PauliPeriodError, ValueError):
    pass
