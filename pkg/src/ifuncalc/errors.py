"""Exception types shared across the package."""

from __future__ import annotations


class IFunCalcError(Exception):
    """Base class for every error raised by this library."""


class GammaPoleError(IFunCalcError, ValueError):
    """A gamma-function argument landed exactly on a pole (0, -1, -2, ...)."""


class ChiPoleError(GammaPoleError):
    """chi(s) was evaluated at a pole of one of its numerator factors."""

    def __init__(self, factor: str, s: complex):
        self.factor = factor
        self.s = s
        super().__init__(f"chi(s) has a pole from factor {factor} at s={s}")


class DomainError(IFunCalcError, ValueError):
    """Argument lies outside the implemented evaluation/continuation region."""


class NonConvergenceError(IFunCalcError, ArithmeticError):
    """A series or quadrature failed to reach the requested tolerance, or the
    configuration is non-convergent."""


class ContourError(IFunCalcError, ValueError):
    """The Mellin-Barnes contour conflicts with a pole or cannot separate the
    two pole clusters; the offset must be shifted."""


class HypothesisError(IFunCalcError, ValueError):
    """A theorem/lemma hypothesis inequality is violated."""

    def __init__(self, condition: str, margin: float):
        self.condition = condition
        self.margin = margin
        super().__init__(f"hypothesis violated: {condition} (margin {margin:.6g})")


class OrientationError(IFunCalcError, ValueError):
    """Operator side and power-weight orientation do not match."""


class ReductionError(IFunCalcError, ValueError):
    """No reduction relation applies to the given operator spec."""


class SchemaError(IFunCalcError, ValueError):
    """A model document failed schema validation."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
