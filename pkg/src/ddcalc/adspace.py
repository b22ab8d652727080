"""Operations on the space of divided-difference kernels.

Residual measurement for the defining algebraic identities (cocycle and
symmetry), diagonal evaluation, curve reconstruction, gluing of kernels on
adjacent intervals, and a numerical decision procedure for path membership.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, ToleranceConfig, make_grid
from .curves import Curve, DiagonalCurve, ReconstructedCurve
from .kernels import AdKernel, GluedKernel

__all__ = [
    "PathReport", "cocycle_residual", "symmetry_residual", "diagonal_eval",
    "reconstruct_from_kernel", "glue", "check_path",
]

_PROBE_POINTS = 101
_K_MIN, _K_MAX = 8, 40
_SPREAD_WINDOW = 8


@dataclass(frozen=True)
class PathReport:
    """Outcome of numerical path detection."""

    is_path: bool
    oscillation: float
    witness: float | None
    tol: float

    def to_dict(self) -> dict:
        return {
            "is_path": self.is_path,
            "oscillation": self.oscillation,
            "witness": self.witness,
            "tol": self.tol,
        }


def cocycle_residual(h: AdKernel, triples) -> float:
    """max over triples of ||(y-x)h(x,y) + (z-y)h(y,z) + (x-z)h(z,x)||."""
    arr = np.asarray(triples, dtype=float).reshape(-1, 3)
    x, y, z = arr[:, 0], arr[:, 1], arr[:, 2]
    total = ((y - x)[:, None] * h.eval(x, y)
             + (z - y)[:, None] * h.eval(y, z)
             + (x - z)[:, None] * h.eval(z, x))
    return float(np.max(np.linalg.norm(total, axis=1)))


def symmetry_residual(h: AdKernel, pairs) -> float:
    """max over pairs of ||h(x,y) - h(y,x)||."""
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    x, y = arr[:, 0], arr[:, 1]
    return float(np.max(np.linalg.norm(h.eval(x, y) - h.eval(y, x), axis=1)))


def diagonal_eval(h: AdKernel) -> Curve:
    """The curve x -> h(x, x)."""
    return DiagonalCurve(h)


def reconstruct_from_kernel(h: AdKernel, x0: float, f0) -> Curve:
    """The curve y -> f0 + (y - x0) h(x0, y) anchored at (x0, f0)."""
    return ReconstructedCurve(h, x0, f0)


def glue(h: AdKernel, k: AdKernel,
         config: ToleranceConfig = DEFAULT_TOLERANCES) -> AdKernel:
    """Glue kernels on adjacent intervals whose diagonals meet at the junction."""
    return GluedKernel(h, k, config)


def check_path(f: Curve, tol: float | None = None,
               config: ToleranceConfig = DEFAULT_TOLERANCES) -> PathReport:
    """Decide numerically whether f admits a continuous kernel.

    At each of 101 probe points the central, forward and backward difference
    quotients are computed over dyadic offsets 2^-k, k = 8..40 (pairs leaving
    the domain are dropped). The oscillation at a probe is the diameter of the
    last 8 valid quotients; f is accepted iff the worst oscillation is at
    most tol.

    Offsets where rounding noise in the quotient (about eps * ||f|| / delta)
    would exceed a small fraction of tol are excluded, otherwise evaluation
    noise at delta ~ 1e-12 would swamp any smooth function. Documented
    failure mode: a kink smaller than tol, or below the finest trusted
    offset, is accepted.
    """
    if tol is None:
        tol = config.path_detect_tol
    lo, hi = f.domain.lo, f.domain.hi
    grid = make_grid(f.domain, _PROBE_POINTS)
    sup = 1.0 + float(np.max(np.linalg.norm(f.eval(grid.points), axis=1)))
    eps = np.finfo(float).eps
    delta_floor = 8.0 * eps * sup / tol
    ks = np.arange(_K_MIN, _K_MAX + 1)
    deltas = 2.0 ** -ks.astype(float)
    keep = deltas >= delta_floor
    keep[: min(3, keep.size)] = True  # always probe the coarsest scales
    deltas = deltas[keep]

    worst_osc = 0.0
    worst_at = float(grid.points[0])
    for x in grid.points:
        # per offset: central, forward, backward; C-order ravel keeps the
        # quotients ordered by scale, coarse to fine
        a = np.stack([x - deltas, np.full_like(deltas, x), x - deltas], axis=1).ravel()
        b = np.stack([x + deltas, x + deltas, np.full_like(deltas, x)], axis=1).ravel()
        valid = (a >= lo) & (b <= hi)
        a, b = a[valid], b[valid]
        if a.size < 2:
            continue
        quotients = (f.eval(b) - f.eval(a)) / (b - a)[:, None]
        window = quotients[-_SPREAD_WINDOW:]
        diffs = window[:, None, :] - window[None, :, :]
        osc = float(np.max(np.linalg.norm(diffs, axis=-1)))
        if osc > worst_osc:
            worst_osc = osc
            worst_at = float(x)
    is_path = worst_osc <= tol
    return PathReport(is_path=is_path, oscillation=worst_osc,
                      witness=None if is_path else worst_at, tol=tol)
