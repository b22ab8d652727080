"""Exception hierarchy shared by all ddcalc modules."""

from __future__ import annotations


class DdcalcError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(DdcalcError):
    """Raised when expression text cannot be parsed.

    ``offset`` is the byte offset of the first offending character.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvalDomainError(DdcalcError):
    """An expression was evaluated outside the domain of one of its nodes."""

    def __init__(self, node: str, point: float, detail: str = ""):
        msg = f"domain error in '{node}' at x = {point!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.node = node
        self.point = point


class OutOfDomainError(DdcalcError):
    """A curve or kernel was evaluated outside its interval."""


class KernelDomainError(DdcalcError):
    """Kernel construction rejected the curve: a sqrt/log argument or a
    divisor is not bounded away from zero on the interval."""


class NotAPathError(DdcalcError):
    """The curve admits no continuous divided-difference kernel.

    ``witness`` locates the obstruction (a kink or slope jump).
    """

    def __init__(self, message: str, witness: float | None = None):
        if witness is not None:
            message += f" (witness near x = {witness!r})"
        super().__init__(message)
        self.witness = witness


class DimensionMismatchError(DdcalcError):
    """A linear map was applied to a value of the wrong dimension."""


class GlueError(DdcalcError):
    """Kernels passed to glue do not live on adjacent intervals."""


class GlueMismatchError(GlueError):
    """Diagonal values of the two kernels disagree at the junction."""

    def __init__(self, message: str, mismatch: float):
        super().__init__(message)
        self.mismatch = mismatch


class QuadratureBudgetError(DdcalcError):
    """Adaptive quadrature exhausted its subdivision budget.

    ``estimate`` carries the achieved error estimate at the point of failure.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (achieved error estimate {estimate:.3e})")
        self.estimate = estimate
