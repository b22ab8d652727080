"""Derivative, averaging kernel, integral, antiderivative, Newton-Leibniz.

The derivative of a path is the diagonal of its kernel. In the other
direction, the averaging kernel av_f(x, y) is the mean value of f over
[x, y] (with av_f(x, x) = f(x)); it is the divided-difference kernel of any
antiderivative of f, so (b - a) av_f(a, b) is the integral and
reconstructing a curve from av_f is the antiderivative.

For an affine f(x) = c + x d the mean value is c + ((x + y)/2) d exactly;
polygonal curves are averaged in closed form per segment (the trapezoid rule
is exact on affine pieces), and general curves by the fixed-panel composite
Gauss-Legendre quadrature. Mean values are convex combinations of function
values, so evaluation near the diagonal is cancellation-free.
"""

from __future__ import annotations

import numpy as np

from .core import DEFAULT_TOLERANCES, ToleranceConfig
from .curves import Curve, DiagonalCurve, PolygonalCurve, ReconstructedCurve
from .errors import OutOfDomainError
from .kernels import AdKernel, Path
from .quadrature import PanelTable

__all__ = [
    "AveragingKernel", "averaging_kernel", "derivative", "integrate",
    "antiderivative", "newton_leibniz_residual",
]


class AveragingKernel(AdKernel):
    """av_f(x, y): the mean value of the source curve over [x, y]."""

    def __init__(self, source: Curve,
                 config: ToleranceConfig = DEFAULT_TOLERANCES):
        self.source = source
        self.domain = source.domain
        self.dim = source.dim
        if isinstance(source, PolygonalCurve):
            self._table = None
            self.error_estimate = 0.0
        else:
            self._table = PanelTable(source.eval, source.domain,
                                     config.quadrature_tol)
            self.error_estimate = self._table.error_estimate

    def _eval_pairs(self, x, y):
        s = np.minimum(x, y)
        t = np.maximum(x, y)
        out = np.empty(np.shape(x) + (self.dim,))
        same = s == t
        if np.any(same):
            out[same] = self.source.eval(s[same])
        off = ~same
        if np.any(off):
            s_off, t_off = s[off], t[off]
            if self._table is None:
                out[off] = self._polygonal_mean(s_off, t_off)
            else:
                width = (t_off - s_off)[:, None]
                out[off] = self._table.integral(s_off, t_off) / width
        return out

    def _polygonal_mean(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        poly: PolygonalCurve = self.source
        bps = poly.breakpoints
        vals = poly.values
        slopes = poly.slopes
        total = np.zeros(s.shape + (self.dim,))
        for i in range(bps.size - 1):
            lo = np.maximum(s, bps[i])
            hi = np.minimum(t, bps[i + 1])
            length = np.clip(hi - lo, 0.0, None)
            v_lo = vals[i] + slopes[i] * (lo - bps[i])[..., None]
            v_hi = vals[i] + slopes[i] * (hi - bps[i])[..., None]
            total += (0.5 * length)[..., None] * (v_lo + v_hi)
        return total / (t - s)[..., None]


def averaging_kernel(f: Curve,
                     config: ToleranceConfig = DEFAULT_TOLERANCES) -> AveragingKernel:
    """The averaging kernel of a continuous curve."""
    return AveragingKernel(f, config)


def derivative(p: Path) -> Curve:
    """The derivative of a path: diagonal evaluation of its kernel."""
    return DiagonalCurve(p.kernel)


def integrate(f: Curve, a: float, b: float,
              config: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """The integral of f from a to b, defined as (b - a) av_f(a, b).

    a > b is permitted and flips the sign; a == b gives the zero vector.
    """
    if not (f.domain.contains(a) and f.domain.contains(b)):
        raise OutOfDomainError(
            f"integration bounds outside curve domain "
            f"[{f.domain.lo}, {f.domain.hi}]")
    if a == b:
        return np.zeros(f.dim)
    av = averaging_kernel(f, config)
    return (b - a) * av.eval(a, b)


def antiderivative(f: Curve, a: float,
                   config: ToleranceConfig = DEFAULT_TOLERANCES) -> Path:
    """The path F(x) = integral of f from a to x, whose kernel is av_f."""
    av = averaging_kernel(f, config)
    curve = ReconstructedCurve(av, a, np.zeros(f.dim))
    return Path(curve, av)


def newton_leibniz_residual(p: Path, a: float, b: float,
                            config: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """|| integral of p' from a to b  -  (p(b) - p(a)) ||."""
    value = integrate(derivative(p), a, b, config)
    delta = p.curve.eval(b) - p.curve.eval(a)
    return float(np.linalg.norm(value - delta))
