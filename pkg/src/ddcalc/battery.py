"""The built-in battery of smooth test curves used by the verify suites.

Each member records its expression, interval and hand-written closed-form
derivative; the derivative text is the comparison target for derivative
checks and is never computed from the expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DEFAULT_TOLERANCES, Interval, ToleranceConfig
from .curves import SymbolicCurve
from .kernels import Path, make_path
from .parser import parse_components

__all__ = ["BatteryMember", "BATTERY", "battery_curve", "battery_derivative",
           "battery_paths"]

_PI = math.pi


@dataclass(frozen=True)
class BatteryMember:
    name: str
    text: str
    lo: float
    hi: float
    derivative_text: str

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)


BATTERY: tuple[BatteryMember, ...] = (
    BatteryMember("square", "x^2", 0.0, 1.0, "2*x"),
    BatteryMember("cube", "x^3", 0.0, 1.0, "3*x^2"),
    BatteryMember("affine", "1 + 2*x", 0.0, 1.0, "2"),
    BatteryMember("sine", "sin(x)", 0.0, _PI, "cos(x)"),
    BatteryMember("cosine", "cos(x)", 0.0, 2.0, "-sin(x)"),
    BatteryMember("expo", "exp(x)", 0.0, 2.0, "exp(x)"),
    BatteryMember("root", "sqrt(x + 2)", -1.0, 1.0, "1/(2*sqrt(x + 2))"),
    BatteryMember("logshift", "log(x + 2)", -1.0, 1.0, "1/(x + 2)"),
    BatteryMember("sinexp", "sin(x)*exp(x)", 0.0, 1.0,
                  "cos(x)*exp(x) + sin(x)*exp(x)"),
    BatteryMember("expsin", "exp(sin(x))", 0.0, 2.0, "cos(x)*exp(sin(x))"),
    BatteryMember("circle", "[sin(x), cos(x)]", 0.0, _PI,
                  "[cos(x), -sin(x)]"),
)


def battery_curve(member: BatteryMember) -> SymbolicCurve:
    return SymbolicCurve(parse_components(member.text), member.interval)


def battery_derivative(member: BatteryMember) -> SymbolicCurve:
    return SymbolicCurve(parse_components(member.derivative_text),
                         member.interval)


def battery_paths(config: ToleranceConfig = DEFAULT_TOLERANCES) -> list[tuple[BatteryMember, Path]]:
    """Every battery member with its verified path."""
    return [(m, make_path(battery_curve(m), config)) for m in BATTERY]
