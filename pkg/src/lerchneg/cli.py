"""Command-line front end: ``eval``, ``deriv``, ``check`` and ``sweep``.

Output is JSON lines by default (``--format csv`` for CSV). Floats are
written with ``repr``, the shortest string that parses back to the same
double. Exit codes: 0 ok, 1 usage, 2 domain, 3 convergence, 4 a property
check failed.
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from typing import Callable, Dict, List, Optional, Sequence

import mpmath

from .checks import run_suite
from .hurwitz import HurwitzMethod, genfunc_f, hurwitz_zeta
from .neglerch import lerch_neg, polylog_neg_closed, polylog_neg_stirling, polylog_neg_transf
from .numcore import ConvergenceError, DomainError, PrecisionConfig, to_complex
from .quadrature import QuadratureSpec
from .trigderiv import (
    cot_deriv,
    csc_deriv,
    exp_ratio_deriv_at_zero,
    oracle_deriv,
    sec_deriv,
    tan_deriv,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_PROPERTY = 0, 1, 2, 3, 4

_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*({_FLOAT})(?:([+-])({_FLOAT[5:]})i)?\s*$")

RECORD_FIELDS = ["function", "params", "value_re", "value_im", "condition", "method", "elapsed_us"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """Parse ``FLOAT`` or ``FLOAT SIGN FLOAT i`` (e.g. ``0.3``, ``0.3-0.2i``)."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise UsageError(f"not a number: {text!r} (expected FLOAT or FLOAT+FLOATi)")
    re_, sign, im = m.groups()
    if sign is None:
        return complex(float(re_), 0.0)
    return complex(float(re_), float(im) if sign == "+" else -float(im))


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _fmt_real(x: float) -> str:
    return str(int(x)) if x.is_integer() and abs(x) < 2**53 else repr(x)


def _fmt_param(v) -> str:
    if isinstance(v, complex):
        if v.imag == 0:
            return _fmt_real(v.real)
        return f"{_fmt_real(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt_real(abs(v.imag))}i"
    return str(v)


def _record(function: str, params: Dict, result=None, elapsed_us: int = 0, **extra) -> Dict:
    rec = {"function": function, "params": {k: _fmt_param(v) for k, v in params.items()}}
    if result is not None:
        v = to_complex(result.value)
        rec.update(value_re=v.real, value_im=v.imag, condition=float(result.condition), method=result.method)
    else:
        rec.update(value_re=None, value_im=None, condition=None, method=None)
    rec["elapsed_us"] = elapsed_us
    rec.update(extra)
    return rec


class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self._writer = None
        self._columns: Optional[List[str]] = None

    def emit(self, rec: Dict) -> None:
        if self.fmt == "jsonl":
            self.out.write(json.dumps(rec) + "\n")
            return
        flat = dict(rec)
        if isinstance(flat.get("params"), dict):
            flat["params"] = ";".join(f"{k}={v}" for k, v in flat["params"].items())
        if self._writer is None:
            self._columns = list(flat)
            self._writer = csv.writer(self.out, lineterminator="\n")
            self._writer.writerow(self._columns)
        self._writer.writerow(["" if flat.get(c) is None else _csv_cell(flat.get(c)) for c in self._columns])


def _csv_cell(v):
    return repr(v) if isinstance(v, float) else v


def _config(args) -> PrecisionConfig:
    return PrecisionConfig(args.precision, args.guard)


def _quad(args) -> QuadratureSpec:
    return QuadratureSpec(order=args.quad_order, tol=args.quad_tol, max_subdiv=args.quad_max_subdiv)


def _timed(fn: Callable, timing: bool):
    t0 = time.perf_counter()
    res = fn()
    return res, (int(round((time.perf_counter() - t0) * 1e6)) if timing else 0)


# ---- evaluation targets shared by eval and sweep ------------------------------

def _int_param(params, name):
    v = params[name]
    if isinstance(v, complex):
        if v.imag != 0 or v.real != int(v.real):
            raise UsageError(f"{name} must be an integer")
        v = int(v.real)
    return int(v)


def _real_param(params, name, default=None):
    if name not in params:
        if default is None:
            raise UsageError(f"missing parameter {name}")
        return default
    v = complex(params[name])
    if v.imag != 0:
        raise UsageError(f"{name} must be real")
    return v.real


def _evaluate(function: str, params: Dict, args):
    config = _config(args)
    if function == "lerch":
        return lerch_neg(_int_param(params, "m"), params["z"], params["u"], config)
    if function == "polylog":
        form = getattr(args, "form", "closed")
        fn = {"closed": polylog_neg_closed, "stirling": polylog_neg_stirling, "transf": polylog_neg_transf}[form]
        return fn(_int_param(params, "m"), params["z"], config)
    if function == "hurwitz":
        k = params["k"]
        method = args.method
        k = _int_param(params, "k") if method != "series" else k
        return hurwitz_zeta(k, params["b"], method, _quad(args), config, tol=args.tol or 1e-12)
    if function == "genfunc":
        return genfunc_f(params["x"], params["b"], _quad(args), config)
    if function in ("cot", "csc", "tan", "sec"):
        fn = {"cot": cot_deriv, "csc": csc_deriv, "tan": tan_deriv, "sec": sec_deriv}[function]
        return fn(_int_param(params, "k"), _real_param(params, "a"), _real_param(params, "x"),
                  _real_param(params, "shift", 0.0), config)
    if function == "expratio":
        return exp_ratio_deriv_at_zero(_int_param(params, "k"), params["a"], params["b"], config)
    raise UsageError(f"unknown function {function!r}")


def _expratio_oracle(k: int, a: complex, b: complex) -> complex:
    ctx = mpmath.MPContext()
    ctx.prec = 200
    # central differences at high precision; the stencil never lands on x = 0
    return complex(ctx.diff(lambda x: x / (ctx.exp(a * x + b) - 1), 0, k, h=ctx.mpf("1e-20")))


# ---- commands -----------------------------------------------------------------

EVAL_PARAMS = {
    "lerch": ("m", "z", "u"),
    "polylog": ("m", "z"),
    "hurwitz": ("k", "b"),
    "genfunc": ("x", "b"),
}
DERIV_PARAMS = {
    "cot": ("k", "a", "x", "shift"),
    "csc": ("k", "a", "x", "shift"),
    "tan": ("k", "a", "x", "shift"),
    "sec": ("k", "a", "x", "shift"),
    "expratio": ("k", "a", "b"),
}


def cmd_eval(args, emitter: Emitter) -> int:
    params = {name: getattr(args, name) for name in EVAL_PARAMS[args.function]}
    res, us = _timed(lambda: _evaluate(args.function, params, args), args.timing)
    emitter.emit(_record(args.function, params, res, us))
    return EXIT_OK


def cmd_deriv(args, emitter: Emitter) -> int:
    params = {name: getattr(args, name) for name in DERIV_PARAMS[args.function]}
    res, us = _timed(lambda: _evaluate(args.function, params, args), args.timing)
    extra = {}
    if args.oracle:
        if args.function == "expratio":
            o = _expratio_oracle(int(params["k"].real), params["a"], params["b"])
        else:
            o = complex(oracle_deriv(args.function, int(params["k"].real), params["a"].real,
                                     params["x"].real, params["shift"].real))
        extra = {"oracle_re": o.real, "oracle_im": o.imag,
                 "discrepancy": abs(to_complex(res.value) - o)}
    emitter.emit(_record(args.function, params, res, us, **extra))
    return EXIT_OK


def cmd_check(args, emitter: Emitter) -> int:
    kwargs = {"seed": args.seed}
    if args.max_k is not None:
        kwargs["max_k"] = args.max_k
    if args.tol is not None:
        kwargs["tol"] = args.tol
    kwargs["quad"] = QuadratureSpec(order=args.quad_order, tol=args.quad_tol, max_subdiv=args.quad_max_subdiv)
    results = run_suite(args.suite, **kwargs)
    ok = True
    for r in results:
        ok &= r.passed
        emitter.emit({"suite": r.suite, "property": r.name, "passed": r.passed,
                      "worst": r.worst, "tol": r.tol, "cases": r.cases})
    return EXIT_OK if ok else EXIT_PROPERTY


def parse_range(text: str) -> List:
    """Values for one sweep axis.

    ``a..b``          integers a..b inclusive
    ``a..b:step``     a, a+step, ... strictly below b (exact decimal steps)
    ``circle:R:N``    N points R exp(2 pi i j/N)
    ``v1,v2,...``     explicit list (complex literals allowed)
    """
    text = text.strip()
    if text.startswith("circle:"):
        try:
            _, r, n = text.split(":")
            r, n = float(r), int(n)
        except ValueError:
            raise UsageError(f"bad circle range {text!r}")
        return [complex(r * math.cos(2 * math.pi * j / n), r * math.sin(2 * math.pi * j / n)) for j in range(n)]
    if ".." in text:
        lo, _, rest = text.partition("..")
        hi, _, step = rest.partition(":")
        try:
            if not step:
                return [complex(v) for v in range(int(lo), int(hi) + 1)]
            a, b, h = Decimal(lo), Decimal(hi), Decimal(step)
        except Exception:
            raise UsageError(f"bad range {text!r}")
        if h <= 0:
            raise UsageError("range step must be positive")
        out, v = [], a
        while v < b:
            out.append(complex(float(v)))
            v += h
        return out
    return [parse_complex(t) for t in text.split(",")]


SWEEP_PARAMS = dict(EVAL_PARAMS, **{k: v for k, v in DERIV_PARAMS.items() if k != "expratio"})


def cmd_sweep(args, emitter: Emitter) -> int:
    names = SWEEP_PARAMS[args.function]
    axes: Dict[str, List] = {}
    for tok in args.grid:
        if "=" not in tok:
            raise UsageError(f"grid axis must look like NAME=RANGE, got {tok!r}")
        name, _, rng = tok.partition("=")
        if name not in names:
            raise UsageError(f"{args.function} has no parameter {name!r} (expected {', '.join(names)})")
        axes[name] = parse_range(rng)
    if "shift" in names and "shift" not in axes:
        axes["shift"] = [0j]
    missing = [n for n in names if n not in axes]
    if missing:
        raise UsageError(f"missing grid axes: {', '.join(missing)}")
    points = [dict(zip(names, combo)) for combo in itertools.product(*(axes[n] for n in names))]

    def one(params):
        try:
            res, us = _timed(lambda: _evaluate(args.function, params, args), args.timing)
            return _record(args.function, params, res, us)
        except DomainError as exc:
            return _record(args.function, params, None, error="domain", message=str(exc))
        except ConvergenceError as exc:
            return _record(args.function, params, None, error="convergence", message=str(exc))
        except (ValueError, UsageError) as exc:
            return _record(args.function, params, None, error="usage", message=str(exc))

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(one, points))
    else:
        records = [one(p) for p in points]
    for rec in records:
        emitter.emit(rec)
    return EXIT_OK


# ---- parser -------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.add_argument("--precision", choices=["double", "dd"], default="double")
    p.add_argument("--guard", type=float, default=1e-12)
    p.add_argument("--quad-tol", type=float, default=1e-10)
    p.add_argument("--quad-max-subdiv", type=int, default=2000)
    p.add_argument("--quad-order", type=int, default=15)
    p.add_argument("--timing", action="store_true", help="fill elapsed_us (output is then not reproducible)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="lerchneg", description="Lerch Phi, polylog and Hurwitz zeta at integer orders")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one function")
    evsub = ev.add_subparsers(dest="function", required=True, parser_class=_Parser)
    p = evsub.add_parser("lerch", parents=[common], help="Phi(z, -m, u)")
    p.add_argument("-m", type=_complex_arg, required=True)
    p.add_argument("-z", type=_complex_arg, required=True)
    p.add_argument("-u", type=_complex_arg, required=True)
    p = evsub.add_parser("polylog", parents=[common], help="Li_{-m}(z)")
    p.add_argument("-m", type=_complex_arg, required=True)
    p.add_argument("-z", type=_complex_arg, required=True)
    p.add_argument("--form", choices=["closed", "stirling", "transf"], default="closed")
    p = evsub.add_parser("hurwitz", parents=[common], help="zeta(k, b)")
    p.add_argument("-k", type=_complex_arg, required=True)
    p.add_argument("-b", type=_complex_arg, required=True)
    p.add_argument("--method", choices=[m.value for m in HurwitzMethod if m is not HurwitzMethod.GENFUNC],
                   default="series")
    p.add_argument("--tol", type=float, default=None, help="series tolerance")
    p = evsub.add_parser("genfunc", parents=[common], help="f(x) = sum_k x^k zeta(k, b)")
    p.add_argument("-x", type=_complex_arg, required=True)
    p.add_argument("-b", type=_complex_arg, required=True)

    dv = sub.add_parser("deriv", help="k-th derivative of cot/csc/tan/sec, or x/(e^(ax+b)-1) at 0")
    dvsub = dv.add_subparsers(dest="function", required=True, parser_class=_Parser)
    for name in ("cot", "csc", "tan", "sec"):
        p = dvsub.add_parser(name, parents=[common])
        p.add_argument("-k", type=_complex_arg, required=True)
        p.add_argument("-a", type=_complex_arg, required=True)
        p.add_argument("-x", type=_complex_arg, required=True)
        p.add_argument("--shift", type=_complex_arg, default=0j)
        p.add_argument("--oracle", action="store_true")
    p = dvsub.add_parser("expratio", parents=[common])
    p.add_argument("-k", type=_complex_arg, required=True)
    p.add_argument("-a", type=_complex_arg, required=True)
    p.add_argument("-b", type=_complex_arg, required=True)
    p.add_argument("--oracle", action="store_true")

    ck = sub.add_parser("check", parents=[common], help="run property suites")
    ck.add_argument("suite", choices=["exact", "identities", "trig", "hurwitz", "all"])
    ck.add_argument("--max-k", type=int, default=None)
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--tol", type=float, default=None)

    sw = sub.add_parser("sweep", parents=[common], help="evaluate over a Cartesian grid")
    sw.add_argument("function", choices=sorted(SWEEP_PARAMS))
    sw.add_argument("grid", nargs="+", help="NAME=RANGE axes, e.g. k=2..4 b=0.1..0.9:0.2")
    sw.add_argument("--method", choices=[m.value for m in HurwitzMethod if m is not HurwitzMethod.GENFUNC],
                    default="series")
    sw.add_argument("--form", choices=["closed", "stirling", "transf"], default="closed")
    sw.add_argument("--tol", type=float, default=None)
    sw.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {"eval": cmd_eval, "deriv": cmd_deriv, "check": cmd_check, "sweep": cmd_sweep}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    emitter = Emitter(args.format, out)
    try:
        return COMMANDS[args.command](args, emitter)
    except UsageError as exc:
        print(f"lerchneg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"lerchneg: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"lerchneg: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"lerchneg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
