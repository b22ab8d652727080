"""Divided-difference kernels built by exact structural rules.

For a curve f the kernel h_f satisfies f(y) - f(x) = (y - x) h_f(x, y) with a
regular diagonal h_f(x, x) = f'(x). Instead of filling the diagonal with
limits, kernels are assembled by recursion over the expression tree:

    const          -> 0
    x              -> 1
    f + g          -> h_f + h_g
    f * g          -> f(x) h_g(x,y) + h_f(x,y) g(y)
    1 / g          -> -h_g(x,y) / (g(x) g(y))
    g o f          -> h_g(f(x), f(y)) h_f(x,y)
    x^n            -> sum_{k<n} x^k y^(n-1-k)
    exp            -> exp((x+y)/2) sinhc((y-x)/2)
    sin            -> cos((x+y)/2) sinc((y-x)/2)
    cos            -> -sin((x+y)/2) sinc((y-x)/2)
    sqrt           -> 1 / (sqrt(x) + sqrt(y))
    log            -> (2/(x+y)) atanhc((y-x)/(x+y))

Every rule is an algebraic identity, so evaluation is cancellation-free even
at separations far below sqrt(machine epsilon). The asymmetric product rule is
intentional: symmetry of the result is a consequence, not an input, and the
test suite checks it rather than imposing it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, Interval, ToleranceConfig, make_grid
from .curves import Curve, PolygonalCurve, SymbolicCurve
from .errors import (
    DdcalcError, GlueError, GlueMismatchError, KernelDomainError,
    NotAPathError, OutOfDomainError,
)
from .expr import (
    Abs, Add, Const, Cos, Div, Exp, Expr, Log, Mul, Neg, PowInt, Relu, Sin,
    Sqrt, Sub, Var, to_text,
)
from .special import stable_atanhc, stable_sinc, stable_sinhc

__all__ = [
    "AdKernel", "SymbolicKernel", "PolygonalKernel", "GluedKernel",
    "MappedKernel", "Path", "build_kernel", "eval_kernel", "make_path",
    "naive_quotient",
]

# D-10: sqrt/log arguments and divisors are sampled on this many points and
# rejected when they come closer to zero than the threshold. Sound in
# practice, not formally sound.
_DOMAIN_SAMPLES = 1025
_MIN_MAGNITUDE = 1e-9


class AdKernel:
    """Base class for two-variable kernels; subclasses fill _eval_pairs."""

    domain: Interval
    dim: int

    def eval(self, x, y) -> np.ndarray:
        """Evaluate at (x, y); scalars or broadcastable ndarrays accepted."""
        x_arr = np.asarray(x, dtype=float)
        y_arr = np.asarray(y, dtype=float)
        if not (self.domain.contains(x_arr) and self.domain.contains(y_arr)):
            raise OutOfDomainError(
                f"pair outside kernel domain [{self.domain.lo}, {self.domain.hi}]^2")
        x_b, y_b = np.broadcast_arrays(x_arr, y_arr)
        return self._eval_pairs(x_b, y_b)

    def _eval_pairs(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError


def _sign_change_witness(xs: np.ndarray, vals: np.ndarray) -> float:
    """Approximate location of a sign change in sampled values.

    Exact zeros between the signed samples are skipped so the crossing is
    interpolated between genuinely opposite values.
    """
    signs = np.sign(vals)
    nonzero = np.flatnonzero(signs != 0)
    flips = np.flatnonzero(signs[nonzero][:-1] * signs[nonzero][1:] < 0)
    i = nonzero[flips[0]]
    j = nonzero[flips[0] + 1]
    a, b = xs[i], xs[j]
    fa, fb = vals[i], vals[j]
    return float(a - fa * (b - a) / (fb - fa))


def _build_rules(e: Expr, xs: np.ndarray):
    """Return (value, kernel) evaluators for e; both accept ndarrays.

    xs is the D-10 sample grid over the working interval, used to validate
    divisors, sqrt/log arguments and kink-node signs at build time.
    """
    match e:
        case Const(value=c):
            return (lambda x: np.full(np.shape(x), c, dtype=float),
                    lambda x, y: np.zeros(np.shape(x), dtype=float))
        case Var():
            return (lambda x: np.asarray(x, dtype=float) + 0.0,
                    lambda x, y: np.ones(np.shape(x), dtype=float))
        case Neg(operand=a):
            va, ka = _build_rules(a, xs)
            return (lambda x: -va(x), lambda x, y: -ka(x, y))
        case Add(left=a, right=b):
            va, ka = _build_rules(a, xs)
            vb, kb = _build_rules(b, xs)
            return (lambda x: va(x) + vb(x),
                    lambda x, y: ka(x, y) + kb(x, y))
        case Sub(left=a, right=b):
            va, ka = _build_rules(a, xs)
            vb, kb = _build_rules(b, xs)
            return (lambda x: va(x) - vb(x),
                    lambda x, y: ka(x, y) - kb(x, y))
        case Mul(left=a, right=b):
            va, ka = _build_rules(a, xs)
            vb, kb = _build_rules(b, xs)
            return (lambda x: va(x) * vb(x),
                    lambda x, y: va(x) * kb(x, y) + ka(x, y) * vb(y))
        case Div(left=a, right=b):
            va, ka = _build_rules(a, xs)
            vb, kb = _build_rules(b, xs)
            den = vb(xs)
            if np.min(np.abs(den)) < _MIN_MAGNITUDE or np.min(den) * np.max(den) < 0:
                raise KernelDomainError(
                    f"divisor '{to_text(b)}' is not bounded away from zero "
                    f"on the interval (sampled min |.| = {np.min(np.abs(den)):.3e})")
            return (lambda x: va(x) / vb(x),
                    lambda x, y: ka(x, y) / vb(y)
                    - va(x) * kb(x, y) / (vb(x) * vb(y)))
        case PowInt(base=a, exponent=n):
            va, ka = _build_rules(a, xs)
            if n == 0:
                return (lambda x: np.ones(np.shape(x), dtype=float),
                        lambda x, y: np.zeros(np.shape(x), dtype=float))

            def power_outer(u, v, n=n):
                acc = np.zeros(np.shape(u), dtype=float)
                for k in range(n):
                    acc += u**k * v**(n - 1 - k)
                return acc

            return (lambda x: va(x) ** n,
                    lambda x, y: power_outer(va(x), va(y)) * ka(x, y))
        case Sin(operand=a):
            va, ka = _build_rules(a, xs)
            return (lambda x: np.sin(va(x)),
                    lambda x, y: _sin_outer(va(x), va(y)) * ka(x, y))
        case Cos(operand=a):
            va, ka = _build_rules(a, xs)
            return (lambda x: np.cos(va(x)),
                    lambda x, y: _cos_outer(va(x), va(y)) * ka(x, y))
        case Exp(operand=a):
            va, ka = _build_rules(a, xs)
            return (lambda x: np.exp(va(x)),
                    lambda x, y: _exp_outer(va(x), va(y)) * ka(x, y))
        case Sqrt(operand=a):
            va, ka = _build_rules(a, xs)
            arg = va(xs)
            if np.min(arg) < _MIN_MAGNITUDE:
                raise KernelDomainError(
                    f"sqrt argument '{to_text(a)}' is not bounded away from zero "
                    f"on the interval (sampled min = {np.min(arg):.3e})")
            return (lambda x: np.sqrt(va(x)),
                    lambda x, y: ka(x, y) / (np.sqrt(va(x)) + np.sqrt(va(y))))
        case Log(operand=a):
            va, ka = _build_rules(a, xs)
            arg = va(xs)
            if np.min(arg) < _MIN_MAGNITUDE:
                raise KernelDomainError(
                    f"log argument '{to_text(a)}' is not bounded away from zero "
                    f"on the interval (sampled min = {np.min(arg):.3e})")
            return (lambda x: np.log(va(x)),
                    lambda x, y: _log_outer(va(x), va(y)) * ka(x, y))
        case Relu(operand=a):
            va, ka = _build_rules(a, xs)
            arg = va(xs)
            if np.min(arg) >= 0.0:
                return (lambda x: np.maximum(va(x), 0.0), ka)
            if np.max(arg) <= 0.0:
                return (lambda x: np.maximum(va(x), 0.0),
                        lambda x, y: np.zeros(np.shape(x), dtype=float))
            raise NotAPathError(
                f"relu({to_text(a)}) has a kink inside the interval",
                witness=_sign_change_witness(xs, arg))
        case Abs(operand=a):
            va, ka = _build_rules(a, xs)
            arg = va(xs)
            if np.min(arg) >= 0.0:
                return (lambda x: np.abs(va(x)), ka)
            if np.max(arg) <= 0.0:
                return (lambda x: np.abs(va(x)),
                        lambda x, y: -ka(x, y))
            raise NotAPathError(
                f"abs({to_text(a)}) has a kink inside the interval",
                witness=_sign_change_witness(xs, arg))
    raise TypeError(f"not an expression node: {e!r}")


def _sin_outer(u, v):
    return np.cos(0.5 * (u + v)) * stable_sinc(0.5 * (v - u))


def _cos_outer(u, v):
    return -np.sin(0.5 * (u + v)) * stable_sinc(0.5 * (v - u))


def _exp_outer(u, v):
    return np.exp(0.5 * (u + v)) * stable_sinhc(0.5 * (v - u))


def _log_outer(u, v):
    return (2.0 / (u + v)) * stable_atanhc((v - u) / (v + u))


class SymbolicKernel(AdKernel):
    """Kernel of a symbolic curve, assembled from the rule table."""

    def __init__(self, source: SymbolicCurve,
                 config: ToleranceConfig = DEFAULT_TOLERANCES):
        xs = np.linspace(source.domain.lo, source.domain.hi, _DOMAIN_SAMPLES)
        self.source = source
        self.domain = source.domain
        self.dim = source.dim
        self._rules = [_build_rules(e, xs) for e in source.components]

    def _eval_pairs(self, x, y):
        return np.stack([ker(x, y) for _, ker in self._rules], axis=-1)


class PolygonalKernel(AdKernel):
    """Exact divided difference of a piecewise-affine interpolant.

    h(x, y) is the length-weighted average of the segment slopes covered by
    [x, y], which is cancellation-free for any separation. A genuine corner
    (distinct slopes at an interior breakpoint) means the interpolant has no
    continuous kernel, so construction refuses it.
    """

    def __init__(self, source: PolygonalCurve,
                 config: ToleranceConfig = DEFAULT_TOLERANCES):
        slopes = source.slopes
        jump = np.linalg.norm(np.diff(slopes, axis=0), axis=1)
        corner_tol = config.path_detect_tol * (1.0 + float(np.max(np.abs(slopes))))
        corners = np.flatnonzero(jump > corner_tol)
        if corners.size:
            raise NotAPathError(
                "polygonal curve has a corner inside the interval",
                witness=float(source.breakpoints[corners[0] + 1]))
        self.source = source
        self.domain = source.domain
        self.dim = source.dim
        self._slopes = slopes

    def _eval_pairs(self, x, y):
        bps = self.source.breakpoints
        a = np.minimum(x, y)
        b = np.maximum(x, y)
        total = np.zeros(np.shape(x) + (self.dim,))
        for i in range(bps.size - 1):
            lo = np.maximum(a, bps[i])
            hi = np.minimum(b, bps[i + 1])
            length = np.clip(hi - lo, 0.0, None)
            total += length[..., None] * self._slopes[i]
        width = b - a
        off = width > 0.0
        safe = np.where(off, width, 1.0)
        return np.where(off[..., None], total / safe[..., None],
                        self._slopes[self.source.segment_index(x)])


class GluedKernel(AdKernel):
    """Unique common extension of kernels on adjacent intervals.

    On the two blocks it delegates bit-exactly to the inputs; across the
    junction b it uses the convex-combination formula
    l(x, y) = ((b - x) h(x, b) + (y - b) k(b, y)) / (y - x), which is the
    divided difference of the underlying curve glued at b.
    """

    def __init__(self, left: AdKernel, right: AdKernel,
                 config: ToleranceConfig = DEFAULT_TOLERANCES):
        if left.dim != right.dim:
            raise DdcalcError(
                f"cannot glue kernels of dimensions {left.dim} and {right.dim}")
        if not left.domain.is_adjacent_to(right.domain):
            raise GlueError(
                f"kernel domains [{left.domain.lo}, {left.domain.hi}] and "
                f"[{right.domain.lo}, {right.domain.hi}] are not adjacent")
        junction = left.domain.hi
        dl = left.eval(junction, junction)
        dr = right.eval(junction, junction)
        mismatch = float(np.linalg.norm(dl - dr))
        scale = 1.0 + float(np.linalg.norm(dl))
        if mismatch > config.residual_tol * scale:
            raise GlueMismatchError(
                f"diagonal values at the junction {junction!r} differ by "
                f"{mismatch:.3e}", mismatch)
        self.left = left
        self.right = right
        self.junction = junction
        self.domain = Interval(left.domain.lo, right.domain.hi)
        self.dim = left.dim

    def _eval_pairs(self, x, y):
        b = self.junction
        s = np.minimum(x, y)
        t = np.maximum(x, y)
        out = np.empty(np.shape(x) + (self.dim,))
        in_left = t <= b
        in_right = (s >= b) & ~in_left
        cross = ~(in_left | in_right)
        if np.any(in_left):
            out[in_left] = self.left.eval(x[in_left], y[in_left])
        if np.any(in_right):
            out[in_right] = self.right.eval(x[in_right], y[in_right])
        if np.any(cross):
            sc = s[cross]
            tc = t[cross]
            num = ((b - sc)[:, None] * self.left.eval(sc, b)
                   + (tc - b)[:, None] * self.right.eval(b, tc))
            out[cross] = num / (tc - sc)[:, None]
        return out


class MappedKernel(AdKernel):
    """(x, y) -> u(h(x, y)) for a linear map u; stays in the ad-space."""

    def __init__(self, u, inner: AdKernel):
        self.u = u
        self.inner = inner
        self.domain = inner.domain
        self.dim = u.out_dim

    def _eval_pairs(self, x, y):
        return self.inner.eval(x, y) @ self.u.matrix.T


@dataclass(frozen=True)
class Path:
    """A curve bundled with its divided-difference kernel."""

    curve: Curve
    kernel: AdKernel


def build_kernel(f: Curve, config: ToleranceConfig = DEFAULT_TOLERANCES) -> AdKernel:
    """Construct the divided-difference kernel of a symbolic or polygonal curve."""
    if isinstance(f, SymbolicCurve):
        return SymbolicKernel(f, config)
    if isinstance(f, PolygonalCurve):
        return PolygonalKernel(f, config)
    raise TypeError("build_kernel accepts symbolic or polygonal curves")


def eval_kernel(h: AdKernel, x, y) -> np.ndarray:
    """Evaluate a kernel at a pair; scalars yield a vector value of shape (dim,)."""
    return h.eval(x, y)


def naive_quotient(f: Curve, x, y) -> np.ndarray:
    """The raw difference quotient (f(y) - f(x)) / (y - x); x != y required.

    Kept as the comparison baseline: it loses roughly eps/|y - x| accuracy
    near the diagonal, which the rule-built kernels do not.
    """
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if np.any(x_arr == y_arr):
        raise ValueError("naive quotient is undefined on the diagonal")
    return (f.eval(y_arr) - f.eval(x_arr)) / np.asarray(y_arr - x_arr)[..., None]


def make_path(f: Curve, config: ToleranceConfig = DEFAULT_TOLERANCES) -> Path:
    """Build the kernel of f and verify the defining identity on a grid."""
    h = build_kernel(f, config)
    g = make_grid(f.domain, config.grid_default)
    x, y = np.meshgrid(g.points, g.points, indexing="ij")
    x = x.ravel()
    y = y.ravel()
    vals = f.eval(g.points)
    fx = vals[np.repeat(np.arange(g.count), g.count)]
    fy = vals[np.tile(np.arange(g.count), g.count)]
    residual = np.max(np.linalg.norm(
        fy - fx - (y - x)[:, None] * h.eval(x, y), axis=1))
    scale = 1.0 + float(np.max(np.linalg.norm(vals, axis=1)))
    if residual > config.residual_tol * scale:
        raise DdcalcError(
            f"kernel consistency check failed: residual {residual:.3e} "
            f"exceeds {config.residual_tol * scale:.3e}")
    return Path(f, h)
