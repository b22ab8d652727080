"""ddcalc: limit-free calculus on divided-difference kernels.

Curves carry exact two-variable kernels h_f with
f(y) - f(x) = (y - x) h_f(x, y); differentiation is diagonal evaluation of
the kernel, integration is the averaging (mean-value) kernel, and the functor,
naturality and isometry laws tying the two together are checkable as
finite-sample residuals.
"""

from .adspace import (
    PathReport, check_path, cocycle_residual, diagonal_eval, glue,
    reconstruct_from_kernel, symmetry_residual,
)
from .battery import BATTERY, BatteryMember, battery_curve, battery_paths
from .calculus import (
    AveragingKernel, antiderivative, averaging_kernel, derivative, integrate,
    newton_leibniz_residual,
)
from .core import (
    DEFAULT_TOLERANCES, Grid, Interval, ToleranceConfig, make_grid, norm_vec,
    sup_norm_curve, sup_norm_kernel,
)
from .curves import (
    Curve, DiagonalCurve, MappedCurve, PolygonalCurve, ReconstructedCurve,
    SymbolicCurve, eval_curve, polygonal_from_curve,
)
from .errors import (
    DdcalcError, DimensionMismatchError, EvalDomainError, ExprSyntaxError,
    GlueError, GlueMismatchError, KernelDomainError, NotAPathError,
    OutOfDomainError, QuadratureBudgetError,
)
from .expr import Expr, eval_expr, to_text
from .kernels import (
    AdKernel, GluedKernel, MappedKernel, Path, PolygonalKernel,
    SymbolicKernel, build_kernel, eval_kernel, make_path, naive_quotient,
)
from .laws import (
    LawReport, LinearMap, check_functor_laws, check_isometry,
    check_natural_iso_roundtrip, check_naturality, map_curve, map_kernel,
)
from .parser import parse, parse_components
from .special import stable_atanhc, stable_sinc, stable_sinhc
from .verify import SUITE_NAMES, run_suite, run_suites

__version__ = "0.1.0"
