"""Exception types raised by the propagation engine."""


class ThzSagaError(Exception):
    """Base class for all engine errors."""


class OutOfDomainError(ThzSagaError, ValueError):
    """An argument lies outside the validity range of a model."""


class ConvergenceError(ThzSagaError, ArithmeticError):
    """A series or quadrature failed to converge to the requested tolerance."""


class SingularityError(ThzSagaError, ArithmeticError):
    """Evaluation hit a singular point of a formula (e.g. a resonant denominator)."""


class DegeneratePlasmaError(OutOfDomainError):
    """Plasma conditions outside the validity of the Coulomb-absorption model."""


class EvanescentRegimeError(OutOfDomainError):
    """Wave frequency at or below the plasma frequency: no propagating solution."""


class ModelDomainError(OutOfDomainError):
    """Atmospheric model evaluated where its defining assumptions break down."""


class DataFormatError(ThzSagaError, ValueError):
    """A data file failed schema validation.

    Carries a machine-readable ``reason`` and, when meaningful, the
    1-based ``line`` number of the offending record.
    """

    def __init__(self, reason: str, line: int | None = None, path: str | None = None):
        self.reason = reason
        self.line = line
        self.path = path
        loc = ""
        if path is not None:
            loc += f"{path}"
        if line is not None:
            loc += f":{line}"
        super().__init__(f"{loc}: {reason}" if loc else reason)


class NoSolutionError(ThzSagaError, ArithmeticError):
    """A solver has no feasible solution for the given inputs."""
