"""Expression ASTs in one variable, their evaluation, and pretty-printing.

Nodes are frozen dataclasses so trees hash and compare structurally. ``Relu``
and ``Abs`` are admitted by the grammar but flagged as kink nodes: evaluation
is always fine, kernel construction refuses them when the kink falls in the
interior of the working interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EvalDomainError

__all__ = [
    "Expr", "Const", "Var", "Add", "Sub", "Mul", "Div", "PowInt", "Neg",
    "Sin", "Cos", "Exp", "Sqrt", "Log", "Relu", "Abs",
    "FUNCTION_NODES", "eval_expr", "eval_expr_array", "to_text",
]


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not np.isfinite(self.value):
            raise ValueError(f"constants must be finite, got {self.value}")


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError("PowInt exponent must be a nonnegative integer; "
                             "write negative powers with division")


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Sin(Expr):
    operand: Expr


@dataclass(frozen=True)
class Cos(Expr):
    operand: Expr


@dataclass(frozen=True)
class Exp(Expr):
    operand: Expr


@dataclass(frozen=True)
class Sqrt(Expr):
    operand: Expr


@dataclass(frozen=True)
class Log(Expr):
    operand: Expr


@dataclass(frozen=True)
class Relu(Expr):
    operand: Expr


@dataclass(frozen=True)
class Abs(Expr):
    operand: Expr


FUNCTION_NODES = {
    "sin": Sin, "cos": Cos, "exp": Exp, "sqrt": Sqrt, "log": Log,
    "relu": Relu, "abs": Abs,
}


def _first_offender(x: np.ndarray, bad: np.ndarray) -> float:
    return float(np.asarray(x, dtype=float).ravel()[np.flatnonzero(bad.ravel())[0]])


def eval_expr_array(e: Expr, x: np.ndarray) -> np.ndarray:
    """Evaluate e at an ndarray of points; shape is preserved."""
    match e:
        case Const(value=c):
            return np.full(np.shape(x), c, dtype=float)
        case Var():
            return np.asarray(x, dtype=float) + 0.0
        case Add(left=a, right=b):
            return eval_expr_array(a, x) + eval_expr_array(b, x)
        case Sub(left=a, right=b):
            return eval_expr_array(a, x) - eval_expr_array(b, x)
        case Mul(left=a, right=b):
            return eval_expr_array(a, x) * eval_expr_array(b, x)
        case Div(left=a, right=b):
            num = eval_expr_array(a, x)
            den = eval_expr_array(b, x)
            zero = den == 0.0
            if np.any(zero):
                raise EvalDomainError("div", _first_offender(x, zero), "division by zero")
            return num / den
        case PowInt(base=a, exponent=n):
            return eval_expr_array(a, x) ** n
        case Neg(operand=a):
            return -eval_expr_array(a, x)
        case Sin(operand=a):
            return np.sin(eval_expr_array(a, x))
        case Cos(operand=a):
            return np.cos(eval_expr_array(a, x))
        case Exp(operand=a):
            return np.exp(eval_expr_array(a, x))
        case Sqrt(operand=a):
            u = eval_expr_array(a, x)
            neg = u < 0.0
            if np.any(neg):
                raise EvalDomainError("sqrt", _first_offender(x, neg), "negative argument")
            return np.sqrt(u)
        case Log(operand=a):
            u = eval_expr_array(a, x)
            bad = u <= 0.0
            if np.any(bad):
                raise EvalDomainError("log", _first_offender(x, bad), "argument must be positive")
            return np.log(u)
        case Relu(operand=a):
            return np.maximum(eval_expr_array(a, x), 0.0)
        case Abs(operand=a):
            return np.abs(eval_expr_array(a, x))
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: Expr, x: float) -> float:
    """Evaluate e at a single point in IEEE double arithmetic."""
    return float(eval_expr_array(e, np.asarray(x, dtype=float)))


_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _prec(e: Expr) -> int:
    match e:
        case Add() | Sub():
            return _ADD
        case Mul() | Div():
            return _MUL
        case Neg():
            return _NEG
        case PowInt():
            return _POW
        case _:
            return _ATOM


def to_text(e: Expr) -> str:
    """Render e in the input grammar; parsing the result reproduces e."""
    return _render(e, 0)


def _render(e: Expr, context: int) -> str:
    match e:
        case Const(value=c):
            text = repr(c) if c >= 0 else f"-{-c!r}"
        case Var():
            text = "x"
        case Add(left=a, right=b):
            text = f"{_render(a, _ADD)} + {_render(b, _ADD + 1)}"
        case Sub(left=a, right=b):
            text = f"{_render(a, _ADD)} - {_render(b, _ADD + 1)}"
        case Mul(left=a, right=b):
            text = f"{_render(a, _MUL)}*{_render(b, _MUL + 1)}"
        case Div(left=a, right=b):
            text = f"{_render(a, _MUL)}/{_render(b, _MUL + 1)}"
        case Neg(operand=a):
            text = f"-{_render(a, _NEG)}"
        case PowInt(base=a, exponent=n):
            text = f"{_render(a, _ATOM)}^{n}"
        case Sin(operand=a):
            text = f"sin({_render(a, 0)})"
        case Cos(operand=a):
            text = f"cos({_render(a, 0)})"
        case Exp(operand=a):
            text = f"exp({_render(a, 0)})"
        case Sqrt(operand=a):
            text = f"sqrt({_render(a, 0)})"
        case Log(operand=a):
            text = f"log({_render(a, 0)})"
        case Relu(operand=a):
            text = f"relu({_render(a, 0)})"
        case Abs(operand=a):
            text = f"abs({_render(a, 0)})"
        case _:
            raise TypeError(f"not an expression node: {e!r}")
    if _prec(e) < context:
        return f"({text})"
    return text
