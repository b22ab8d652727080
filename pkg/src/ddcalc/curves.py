"""Curve representations: continuous functions from an interval into R^n.

Every curve exposes ``domain``, ``dim`` and a vectorized ``eval`` that maps
points of shape S to values of shape S + (dim,). Variants:

* ``SymbolicCurve``   - a list of expression-AST components,
* ``PolygonalCurve``  - continuous piecewise-affine data on breakpoints,
* ``DiagonalCurve``   - x -> h(x, x) for a two-variable kernel h,
* ``MappedCurve``     - a matrix applied pointwise to another curve,
* ``ReconstructedCurve`` - a curve rebuilt from a kernel and one anchor value.
"""

from __future__ import annotations

import numpy as np

from .core import Interval
from .errors import OutOfDomainError
from .expr import Expr, eval_expr_array, to_text

__all__ = [
    "Curve", "SymbolicCurve", "PolygonalCurve", "DiagonalCurve",
    "MappedCurve", "ReconstructedCurve", "eval_curve", "polygonal_from_curve",
]


class Curve:
    """Base class; subclasses provide domain, dim and _eval_components."""

    domain: Interval
    dim: int

    def eval(self, x) -> np.ndarray:
        """Evaluate at x (scalar or ndarray); returns shape(x) + (dim,)."""
        arr = np.asarray(x, dtype=float)
        if not self.domain.contains(arr):
            raise OutOfDomainError(
                f"point outside curve domain [{self.domain.lo}, {self.domain.hi}]")
        return self._eval_components(arr)

    def _eval_components(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class SymbolicCurve(Curve):
    def __init__(self, components: list[Expr] | tuple[Expr, ...], domain: Interval):
        components = tuple(components)
        if len(components) < 1:
            raise ValueError("a symbolic curve needs at least one component")
        self.components = components
        self.domain = domain
        self.dim = len(components)

    def _eval_components(self, x: np.ndarray) -> np.ndarray:
        return np.stack([eval_expr_array(e, x) for e in self.components], axis=-1)

    def __repr__(self):
        body = ", ".join(to_text(e) for e in self.components)
        if self.dim > 1:
            body = f"[{body}]"
        return f"SymbolicCurve({body} on [{self.domain.lo}, {self.domain.hi}])"


class PolygonalCurve(Curve):
    """Piecewise-affine interpolant of values at strictly increasing breakpoints."""

    def __init__(self, breakpoints, values):
        bps = np.asarray(breakpoints, dtype=float)
        vals = np.asarray(values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        if bps.ndim != 1 or bps.size < 2:
            raise ValueError("need at least two breakpoints")
        if not np.all(np.diff(bps) > 0):
            raise ValueError("breakpoints must be strictly increasing")
        if vals.shape[0] != bps.size:
            raise ValueError("one value per breakpoint required")
        if not (np.all(np.isfinite(bps)) and np.all(np.isfinite(vals))):
            raise ValueError("breakpoints and values must be finite")
        bps.setflags(write=False)
        vals.setflags(write=False)
        self.breakpoints = bps
        self.values = vals
        self.domain = Interval(float(bps[0]), float(bps[-1]))
        self.dim = vals.shape[1]

    @property
    def slopes(self) -> np.ndarray:
        """Per-segment slope vectors, shape (segments, dim)."""
        return np.diff(self.values, axis=0) / np.diff(self.breakpoints)[:, None]

    def segment_index(self, x: np.ndarray) -> np.ndarray:
        """Index of the segment containing each x (right-continuous choice)."""
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return np.clip(idx, 0, self.breakpoints.size - 2)

    def _eval_components(self, x: np.ndarray) -> np.ndarray:
        idx = self.segment_index(x)
        x0 = self.breakpoints[idx]
        x1 = self.breakpoints[idx + 1]
        t = ((x - x0) / (x1 - x0))[..., None]
        return self.values[idx] * (1.0 - t) + self.values[idx + 1] * t


class DiagonalCurve(Curve):
    """The diagonal evaluation x -> h(x, x) of a kernel h."""

    def __init__(self, kernel):
        self.kernel = kernel
        self.domain = kernel.domain
        self.dim = kernel.dim

    def _eval_components(self, x: np.ndarray) -> np.ndarray:
        return self.kernel.eval(x, x)


class MappedCurve(Curve):
    """x -> u(f(x)) for a linear map u."""

    def __init__(self, u, inner: Curve):
        self.u = u
        self.inner = inner
        self.domain = inner.domain
        self.dim = u.out_dim

    def _eval_components(self, x: np.ndarray) -> np.ndarray:
        return self.inner.eval(x) @ self.u.matrix.T


class ReconstructedCurve(Curve):
    """y -> f0 + (y - x0) h(x0, y), the curve a kernel determines up to anchor."""

    def __init__(self, kernel, x0: float, f0):
        if not kernel.domain.contains(x0):
            raise OutOfDomainError(f"anchor {x0!r} outside kernel domain")
        self.kernel = kernel
        self.x0 = float(x0)
        self.f0 = np.atleast_1d(np.asarray(f0, dtype=float))
        if self.f0.shape != (kernel.dim,):
            raise ValueError(f"anchor value must have dimension {kernel.dim}")
        self.domain = kernel.domain
        self.dim = kernel.dim

    def _eval_components(self, x: np.ndarray) -> np.ndarray:
        return self.f0 + (x - self.x0)[..., None] * self.kernel.eval(self.x0, x)


def eval_curve(f: Curve, x):
    """Evaluate a curve at x; scalar x yields a vector value of shape (dim,)."""
    return f.eval(x)


def polygonal_from_curve(f: Curve, n: int) -> PolygonalCurve:
    """Interpolate f at n uniformly spaced breakpoints over its domain."""
    if n < 2:
        raise ValueError("need at least two breakpoints")
    bps = np.linspace(f.domain.lo, f.domain.hi, n)
    return PolygonalCurve(bps, f.eval(bps))
