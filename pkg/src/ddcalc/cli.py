"""Command-line front end.

Commands: derive, integrate, check-path, kernel, glue, verify. Output is
human-readable text or, with --json, a stable object
{command, status, payload, diagnostics[, seed]} whose floats are printed in
shortest round-trip form.

Exit codes: 0 success, 1 usage error, 2 parse/domain/not-a-path error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .adspace import check_path, glue
from .calculus import averaging_kernel, derivative
from .core import DEFAULT_TOLERANCES, Interval, ToleranceConfig, make_grid
from .curves import SymbolicCurve
from .errors import DdcalcError
from .kernels import build_kernel, make_path, naive_quotient
from .verify import SUITE_NAMES, run_suites

__all__ = ["main", "build_arg_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VERIFY_FAIL = 3

_DIAG_PAIRS = 128  # sampled pairs for the consistency diagnostic
_DIAG_SEED = 0

# accepts values like "-1,1" or "-0.5e1,2" so they are not mistaken for flags
_NEGATIVE_VALUE = re.compile(
    r"^-(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:,\S*)?$")


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_VALUE

    def error(self, message):
        raise UsageError(message)


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'a,b', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"expected two numbers, got {text!r}") from None


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="ddcalc",
        description="limit-free calculus on divided-difference kernels")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_ArgumentParser)

    def add_common(p):
        p.add_argument("--json", action="store_true",
                       help="emit a machine-readable result object")
        p.add_argument("--tol", type=float, default=None,
                       help="residual tolerance (default 1e-10)")
        p.add_argument("--quad-tol", type=float, default=None,
                       help="quadrature tolerance (default 1e-10)")
        p.add_argument("--path-tol", type=float, default=None,
                       help="path detection tolerance (default 1e-6)")

    p = sub.add_parser("derive", help="derivative of a curve via its kernel")
    p.add_argument("expr")
    p.add_argument("--domain", required=True, type=_pair, metavar="LO,HI")
    p.add_argument("--at", type=float, default=None)
    p.add_argument("--grid", type=int, default=None,
                   help="grid size when --at is not given")
    add_common(p)
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("integrate", help="integral via the averaging kernel")
    p.add_argument("expr")
    p.add_argument("--from", dest="lower", required=True, type=float)
    p.add_argument("--to", dest="upper", required=True, type=float)
    p.add_argument("--domain", type=_pair, default=None, metavar="LO,HI",
                   help="declared domain (default: the integration bounds)")
    add_common(p)
    p.set_defaults(handler=cmd_integrate)

    p = sub.add_parser("check-path", help="numerical path membership test")
    p.add_argument("expr")
    p.add_argument("--domain", required=True, type=_pair, metavar="LO,HI")
    add_common(p)
    p.set_defaults(handler=cmd_check_path)

    p = sub.add_parser("kernel", help="evaluate a divided-difference kernel")
    p.add_argument("expr")
    p.add_argument("--domain", required=True, type=_pair, metavar="LO,HI")
    p.add_argument("--at", required=True, type=_pair, metavar="X,Y")
    add_common(p)
    p.set_defaults(handler=cmd_kernel)

    p = sub.add_parser("glue", help="glue kernels on adjacent intervals")
    p.add_argument("expr_left")
    p.add_argument("expr_right")
    p.add_argument("--left", required=True, type=_pair, metavar="A,B")
    p.add_argument("--right", required=True, type=_pair, metavar="B,C")
    p.add_argument("--at", type=_pair, default=None, metavar="X,Y",
                   help="evaluate the glued kernel at this pair")
    add_common(p)
    p.set_defaults(handler=cmd_glue)

    p = sub.add_parser("verify", help="run the seeded property suites")
    p.add_argument("--suite", default="all",
                   choices=("all",) + SUITE_NAMES)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(handler=cmd_verify)

    return parser


def _config(args) -> ToleranceConfig:
    base = DEFAULT_TOLERANCES
    return ToleranceConfig(
        residual_tol=args.tol if args.tol is not None else base.residual_tol,
        quadrature_tol=(args.quad_tol if args.quad_tol is not None
                        else base.quadrature_tol),
        path_detect_tol=(args.path_tol if args.path_tol is not None
                         else base.path_detect_tol),
        grid_default=base.grid_default,
    )


def _curve(text: str, domain: tuple[float, float]) -> SymbolicCurve:
    from .parser import parse_components
    return SymbolicCurve(parse_components(text), Interval(*domain))


def _vec(values) -> list[float]:
    return [float(v) for v in np.atleast_1d(values)]


def _consistency_diagnostic(curve, kernel) -> dict:
    rng = np.random.default_rng(_DIAG_SEED)
    lo, hi = curve.domain.lo, curve.domain.hi
    x = rng.uniform(lo, hi, _DIAG_PAIRS)
    y = rng.uniform(lo, hi, _DIAG_PAIRS)
    residual = np.max(np.linalg.norm(
        curve.eval(y) - curve.eval(x) - (y - x)[:, None] * kernel.eval(x, y),
        axis=1))
    return {"consistency_residual": float(residual), "pairs": _DIAG_PAIRS}


def cmd_derive(args) -> dict:
    cfg = _config(args)
    curve = _curve(args.expr, args.domain)
    path = make_path(curve, cfg)
    dcurve = derivative(path)
    if args.at is not None:
        payload = {"x": args.at, "value": _vec(dcurve.eval(args.at))}
    else:
        g = make_grid(curve.domain, args.grid or cfg.grid_default)
        payload = {
            "points": [float(v) for v in g.points],
            "values": [_vec(v) for v in dcurve.eval(g.points)],
        }
    return _result("derive", "ok", payload,
                   _consistency_diagnostic(curve, path.kernel))


def cmd_integrate(args) -> dict:
    cfg = _config(args)
    a, b = args.lower, args.upper
    domain = args.domain or (min(a, b), max(a, b))
    if a == b:
        from .parser import parse_components
        dim = len(parse_components(args.expr))
        return _result("integrate", "ok",
                       {"from": a, "to": b, "value": [0.0] * dim},
                       {"error_estimate": 0.0})
    curve = _curve(args.expr, domain)
    av = averaging_kernel(curve, cfg)
    value = (b - a) * av.eval(a, b)
    return _result("integrate", "ok",
                   {"from": a, "to": b, "value": _vec(value)},
                   {"error_estimate": float(av.error_estimate)})


def cmd_check_path(args) -> dict:
    cfg = _config(args)
    curve = _curve(args.expr, args.domain)
    report = check_path(curve, cfg.path_detect_tol, cfg)
    return _result("check-path", "ok", report.to_dict(), {})


def cmd_kernel(args) -> dict:
    cfg = _config(args)
    curve = _curve(args.expr, args.domain)
    path = make_path(curve, cfg)
    x, y = args.at
    value = path.kernel.eval(x, y)
    diagnostics = {}
    if x != y:
        quotient = naive_quotient(curve, x, y)
        diagnostics = {
            "naive_quotient": _vec(quotient),
            "difference": float(np.linalg.norm(value - quotient)),
        }
    return _result("kernel", "ok",
                   {"x": x, "y": y, "value": _vec(value)}, diagnostics)


def cmd_glue(args) -> dict:
    cfg = _config(args)
    left = build_kernel(_curve(args.expr_left, args.left), cfg)
    right = build_kernel(_curve(args.expr_right, args.right), cfg)
    glued = glue(left, right, cfg)
    junction = glued.junction
    payload = {
        "junction": float(junction),
        "left_diagonal": _vec(left.eval(junction, junction)),
        "right_diagonal": _vec(right.eval(junction, junction)),
    }
    if args.at is not None:
        x, y = args.at
        payload["x"] = x
        payload["y"] = y
        payload["value"] = _vec(glued.eval(x, y))
    return _result("glue", "ok", payload, {})


def cmd_verify(args) -> dict:
    cfg = _config(args)
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = run_suites(names, args.seed, cfg)
    failed = [r.name for r in reports if not r.passed]
    status = "fail" if failed else "ok"
    payload = {"reports": [r.to_dict() for r in reports], "failed": failed}
    result = _result("verify", status, payload, {})
    result["seed"] = args.seed
    return result


def _result(command: str, status: str, payload: dict, diagnostics: dict) -> dict:
    return {"command": command, "status": status,
            "payload": payload, "diagnostics": diagnostics}


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _emit(result: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(result, indent=2))
        return
    print(f"command: {result['command']}")
    print(f"status: {result['status']}")
    payload = result["payload"]
    if result["command"] == "verify":
        for rep in payload["reports"]:
            tag = "PASS" if rep["passed"] else "FAIL"
            line = (f"[{tag}] {rep['name']}: max_residual={rep['max_residual']!r} "
                    f"tolerance={rep['tolerance']!r} n={rep['sample_count']}")
            if rep["expected_fail"]:
                line += " (negative control)"
            print(line)
        print(f"seed: {result['seed']}")
    else:
        for key, value in payload.items():
            print(f"{key}: {_fmt(value)}")
    for key, value in result["diagnostics"].items():
        print(f"{key}: {_fmt(value)}")


def main(argv=None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DdcalcError as e:
        result = _result(args.command, "error", {},
                         {"error": str(e), "kind": type(e).__name__})
        _emit(result, args.json)
        return EXIT_INPUT
    _emit(result, args.json)
    return EXIT_OK if result["status"] == "ok" else EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
