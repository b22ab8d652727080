"""Shared value types: intervals, grids, norms, tolerance configuration.

Vector values are plain float ndarrays of shape ``(n,)`` (or a batch shape
ending in ``n``); every operation in the package acts componentwise on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Interval",
    "Grid",
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "as_vector",
    "norm_vec",
    "sup_norm_curve",
    "sup_norm_kernel",
    "make_grid",
]


@dataclass(frozen=True)
class Interval:
    """A nondegenerate compact interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"interval must satisfy lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lo) and np.all(x <= self.hi))

    def is_adjacent_to(self, other: "Interval") -> bool:
        return self.hi == other.lo


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances threaded explicitly through every check; no global state."""

    residual_tol: float = 1e-10
    quadrature_tol: float = 1e-10
    path_detect_tol: float = 1e-6
    grid_default: int = 201

    def __post_init__(self):
        for name in ("residual_tol", "quadrature_tol", "path_detect_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if not self.grid_default > 0:
            raise ValueError("grid_default must be strictly positive")


DEFAULT_TOLERANCES = ToleranceConfig()


class Grid:
    """Strictly increasing sample points spanning an interval."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a grid needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("grid points must be finite")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        pts.setflags(write=False)
        self.points = pts

    @property
    def count(self) -> int:
        return self.points.size

    @property
    def interval(self) -> Interval:
        return Interval(float(self.points[0]), float(self.points[-1]))

    def __repr__(self):
        return f"Grid({self.points[0]!r}..{self.points[-1]!r}, n={self.count})"


def make_grid(iv: Interval, n: int) -> Grid:
    """n uniformly spaced points over iv, endpoints included exactly."""
    if n < 2:
        raise ValueError(f"grid size must be at least 2, got {n}")
    return Grid(np.linspace(iv.lo, iv.hi, n))


def as_vector(values, dim: int | None = None) -> np.ndarray:
    """Validate and normalize a vector value to a float ndarray."""
    v = np.atleast_1d(np.asarray(values, dtype=float))
    if v.ndim != 1 or v.size < 1:
        raise ValueError("vector values are nonempty 1-d float arrays")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector components must be finite, got {v}")
    if dim is not None and v.size != dim:
        raise ValueError(f"expected dimension {dim}, got {v.size}")
    return v


def norm_vec(v) -> float:
    """Euclidean norm of a vector value."""
    return float(np.linalg.norm(as_vector(v)))


def sup_norm_curve(f, g: Grid) -> float:
    """Grid approximation of the sup norm of a curve: max_x ||f(x)||."""
    vals = f.eval(g.points)
    return float(np.max(np.linalg.norm(vals, axis=-1)))


def sup_norm_kernel(h, g: Grid) -> float:
    """Grid approximation of the sup norm of a two-variable kernel over g x g."""
    x, y = np.meshgrid(g.points, g.points, indexing="ij")
    vals = h.eval(x.ravel(), y.ravel())
    return float(np.max(np.linalg.norm(vals, axis=-1)))
