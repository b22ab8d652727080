"""Functor, naturality and isometry law checks over the matrix probe category.

The probe category has objects R^n and morphisms real matrices. Three functors
act on it: curves by postcomposition, two-variable kernels by postcomposition,
and the restriction of the latter to divided-difference kernels. Diagonal
evaluation is a natural isometric isomorphism between the kernel functor and
the curve functor; every clause of that statement is rendered here as a
finite-sample residual check that returns a LawReport.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import averaging_kernel
from .core import (
    DEFAULT_TOLERANCES, Grid, ToleranceConfig, make_grid, sup_norm_curve,
    sup_norm_kernel,
)
from .curves import Curve, DiagonalCurve, MappedCurve
from .errors import DimensionMismatchError
from .kernels import AdKernel, MappedKernel

__all__ = [
    "LinearMap", "LawReport", "map_curve", "map_kernel", "check_naturality",
    "check_isometry", "check_functor_laws", "check_natural_iso_roundtrip",
]


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A matrix R^n -> R^m, the morphisms of the probe category."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.atleast_2d(np.asarray(self.matrix, dtype=float))
        if m.ndim != 2 or m.size == 0:
            raise ValueError("a linear map is a nonempty 2-d matrix")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def out_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def in_dim(self) -> int:
        return self.matrix.shape[1]

    def apply(self, values: np.ndarray) -> np.ndarray:
        return np.asarray(values) @ self.matrix.T

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if self.in_dim != other.out_dim:
            raise DimensionMismatchError(
                f"cannot compose {self.in_dim}-input map after "
                f"{other.out_dim}-output map")
        return LinearMap(self.matrix @ other.matrix)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(np.eye(n))

    @classmethod
    def random(cls, rng: np.random.Generator, out_dim: int, in_dim: int) -> "LinearMap":
        return cls(rng.uniform(-1.0, 1.0, size=(out_dim, in_dim)))


@dataclass
class LawReport:
    """Result of one finite-sample law check."""

    name: str
    max_residual: float
    tolerance: float
    sample_count: int
    passed: bool
    witness: dict = field(default_factory=dict)
    note: str = ""
    expected_fail: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "sample_count": self.sample_count,
            "passed": self.passed,
            "witness": self.witness,
            "note": self.note,
            "expected_fail": self.expected_fail,
        }


def map_curve(u: LinearMap, f: Curve) -> Curve:
    """The curve functor on morphisms: f -> u o f."""
    if u.in_dim != f.dim:
        raise DimensionMismatchError(
            f"map expects dimension {u.in_dim}, curve has {f.dim}")
    return MappedCurve(u, f)


def map_kernel(u: LinearMap, h: AdKernel) -> AdKernel:
    """The kernel functor on morphisms: h -> u o h."""
    if u.in_dim != h.dim:
        raise DimensionMismatchError(
            f"map expects dimension {u.in_dim}, kernel has {h.dim}")
    return MappedKernel(u, h)


def check_naturality(u: LinearMap, h: AdKernel, g: Grid,
                     tol_coeff: float = 1e-12) -> LawReport:
    """Commutativity of diagonal evaluation with a linear map.

    Compares x -> (u o h)(x, x) against x -> u(h(x, x)) on the grid.
    """
    left = DiagonalCurve(map_kernel(u, h)).eval(g.points)
    right = u.apply(DiagonalCurve(h).eval(g.points))
    residuals = np.linalg.norm(left - right, axis=-1)
    i = int(np.argmax(residuals))
    scale = 1.0 + float(np.max(np.linalg.norm(right, axis=-1)))
    tol = tol_coeff * scale
    res = float(residuals[i])
    return LawReport(
        name="naturality", max_residual=res, tolerance=tol,
        sample_count=g.count, passed=res <= tol,
        witness={"x": float(g.points[i])})


def check_isometry(h: AdKernel, g: Grid, tol_base: float = 1e-3) -> LawReport:
    """Sup norm over the square vs. sup norm over the diagonal.

    The kernel-side sample refines near the diagonal (midpoint and
    half-offset pairs) where kernel extrema sit. The tolerance scales with
    grid spacing, calibrated to tol_base at 201 points; the report carries a
    sampled Lipschitz estimate of the diagonal for context.
    """
    pts = g.points
    mids = 0.5 * (pts[:-1] + pts[1:])
    xs = np.concatenate([np.repeat(pts, pts.size), mids, pts[:-1]])
    ys = np.concatenate([np.tile(pts, pts.size), mids, mids])
    sup_square = float(np.max(np.linalg.norm(h.eval(xs, ys), axis=-1)))
    diag = DiagonalCurve(h)
    sup_diag = sup_norm_curve(diag, g)
    residual = abs(sup_square - sup_diag)
    diag_vals = diag.eval(pts)
    spacing = float(pts[1] - pts[0])
    lipschitz = float(np.max(
        np.linalg.norm(np.diff(diag_vals, axis=0), axis=-1))) / spacing
    tol = tol_base * 200.0 / (g.count - 1)
    return LawReport(
        name="isometry", max_residual=residual, tolerance=tol,
        sample_count=xs.size + g.count, passed=residual <= tol,
        witness={"sup_square": sup_square, "sup_diagonal": sup_diag},
        note=f"diagonal Lipschitz estimate {lipschitz:.3e}")


def _probe_samples(probe, grid_n: int):
    """Sample points for a probe: grid for curves, grid pairs for kernels."""
    g = make_grid(probe.domain, grid_n)
    if isinstance(probe, AdKernel):
        x = np.repeat(g.points, g.count)
        y = np.tile(g.points, g.count)
        return (x, y)
    return (g.points,)


def _probe_eval(probe, samples) -> np.ndarray:
    return probe.eval(*samples)


def _map_probe(u: LinearMap, probe):
    if isinstance(probe, AdKernel):
        return map_kernel(u, probe)
    return map_curve(u, probe)


def check_functor_laws(variance: str, chains, probes,
                       grid_n: int = 41, tol_coeff: float = 1e-12) -> LawReport:
    """Identity and composition laws for the mapping functors.

    variance "covariant" checks F(id) = id and F(v o u) = F(v) o F(u) on every
    probe/chain with compatible dimensions, plus associativity and identity
    spot checks for matrix composition itself. variance "contravariant"
    checks F(v o u) = F(u) o F(v) instead; for these functors that law fails,
    so it serves as a negative control.
    """
    if variance not in ("covariant", "contravariant"):
        raise ValueError("variance must be 'covariant' or 'contravariant'")
    worst = 0.0
    worst_witness: dict = {}
    scale = 1.0
    checked = 0
    for p_idx, probe in enumerate(probes):
        samples = _probe_samples(probe, grid_n)
        base = _probe_eval(probe, samples)
        scale = max(scale, 1.0 + float(np.max(np.linalg.norm(base, axis=-1))))
        if variance == "covariant":
            ident = _probe_eval(_map_probe(LinearMap.identity(probe.dim), probe),
                                samples)
            res = float(np.max(np.linalg.norm(ident - base, axis=-1)))
            checked += 1
            if res > worst:
                worst, worst_witness = res, {"law": "identity", "probe": p_idx}
        for c_idx, chain in enumerate(chains):
            if chain[0].in_dim != probe.dim:
                continue
            composed = chain[0]
            for u in chain[1:]:
                composed = u.compose(composed)
            if variance == "covariant":
                stepwise = probe
                for u in chain:
                    stepwise = _map_probe(u, stepwise)
            else:
                # F2b: apply in reversed order; well-typed only for
                # dimension-preserving chains
                if any(u.in_dim != u.out_dim or u.in_dim != probe.dim
                       for u in chain):
                    continue
                stepwise = probe
                for u in reversed(chain):
                    stepwise = _map_probe(u, stepwise)
            res_vals = (_probe_eval(_map_probe(composed, probe), samples)
                        - _probe_eval(stepwise, samples))
            res = float(np.max(np.linalg.norm(res_vals, axis=-1)))
            checked += 1
            if res > worst:
                worst, worst_witness = res, {
                    "law": "composition", "probe": p_idx, "chain": c_idx}
    if variance == "covariant":
        # category axioms for the probe category itself (spot checks)
        for c_idx, chain in enumerate(chains):
            if len(chain) >= 3:
                u, v, w = chain[0], chain[1], chain[2]
                lhs = w.compose(v).compose(u).matrix
                rhs = w.compose(v.compose(u)).matrix
                res = float(np.max(np.abs(lhs - rhs)))
                checked += 1
                if res > worst:
                    worst, worst_witness = res, {
                        "law": "associativity", "chain": c_idx}
            u = chain[0]
            res = float(np.max(np.abs(
                u.compose(LinearMap.identity(u.in_dim)).matrix - u.matrix)))
            checked += 1
            if res > worst:
                worst, worst_witness = res, {"law": "unit", "chain": c_idx}
    tol = tol_coeff * scale
    return LawReport(
        name=f"functor-laws[{variance}]", max_residual=worst, tolerance=tol,
        sample_count=checked, passed=worst <= tol, witness=worst_witness)


def check_natural_iso_roundtrip(f: Curve, h: AdKernel, g: Grid,
                                config: ToleranceConfig = DEFAULT_TOLERANCES,
                                tol_coeff: float = 1e-9) -> LawReport:
    """Both round trips of the diagonal/averaging pair.

    Forward: the diagonal of av_f reproduces f on the grid. Backward: the
    averaging kernel of the diagonal of h reproduces h on grid pairs (the
    kernel of a curve is unique, so equality is forced). Quadrature-limited.
    """
    av_f = averaging_kernel(f, config)
    forward = float(np.max(np.linalg.norm(
        DiagonalCurve(av_f).eval(g.points) - f.eval(g.points), axis=-1)))
    av_back = averaging_kernel(DiagonalCurve(h), config)
    x = np.repeat(g.points, g.count)
    y = np.tile(g.points, g.count)
    backward = float(np.max(np.linalg.norm(
        av_back.eval(x, y) - h.eval(x, y), axis=-1)))
    scale = 1.0 + max(sup_norm_curve(f, g), sup_norm_kernel(h, g))
    tol = tol_coeff * scale
    res = max(forward, backward)
    return LawReport(
        name="natural-iso-roundtrip", max_residual=res, tolerance=tol,
        sample_count=2 * g.count * g.count + g.count, passed=res <= tol,
        witness={"forward": forward, "backward": backward})
