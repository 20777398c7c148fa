"""Command-line front end: solve instances, run verification suites, emit reports.

Subcommands
-----------
root           solve one instance (or a --spec batch) by any method
verify         run a seeded property suite; nonzero exit on failure
contour-trace  dump integrand samples along the contour as CSV
series         print the p = 1 Taylor coefficients of Z^alpha

Reports are JSON (--json) with a fixed field order; all randomness comes
from one seeded generator echoed in the report, so identical seeds and
flags reproduce the report byte for byte (timing fields aside).
Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import (ConvergenceConditionError, ContinuationError,
                     DivergentIntegralError, GammaOverflowError, PoleError,
                     QuadratureError, RootConvergenceError, StepTooSmallError)
from .hyper import check_functional_equation, pde_residual, series_coefficients
from .identities import (build_rank_one_matrix, det_cofactor, det_rank_one,
                         dirichlet_integral)
from .mellin import (Contour, MellinParams, contour_integrand, default_contour,
                     forward_mellin_check, principal_root_mb)
from .oracle import Problem, all_roots, epsilon_family, principal_root
from .param import ParamPoint, jacobian_det, principal_root_param, psi_forward
from . import sampling

ENV_TOL = "MELLINROOTS_TOL"

_NUMERICAL_ERRORS = (
    PoleError, GammaOverflowError, ConvergenceConditionError,
    DivergentIntegralError, QuadratureError, RootConvergenceError,
    ContinuationError, StepTooSmallError,
)


def _num(v):
    if isinstance(v, complex) and not isinstance(v, float):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    return v


def _entry(name, method, value, err=None, tol=None, passed=None, **extra):
    e = {"name": name, "method": method, "value": _num(value),
         "error_estimate": err}
    if tol is not None:
        e["tolerance"] = tol
        e["passed"] = bool(passed)
    e.update(extra)
    return e


class _Report:
    def __init__(self, command: str, inputs: dict, seed=None):
        self.data = {"command": command, "inputs": inputs}
        if seed is not None:
            self.data["seed"] = seed
        self.data["results"] = []
        self.data["timing"] = {}
        self._t0 = time.perf_counter()

    def add(self, entry: dict) -> None:
        self.data["results"].append(entry)

    def step(self, name: str, t_start: float) -> None:
        self.data["timing"][name] = time.perf_counter() - t_start

    def finish(self) -> dict:
        self.data["timing"]["total"] = time.perf_counter() - self._t0
        return self.data

    @property
    def failed(self) -> bool:
        return any(r.get("passed") is False for r in self.data["results"])


def _emit(report: dict, args) -> None:
    if args.json or args.out:
        text = json.dumps(report, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return
    for r in report["results"]:
        val = r["value"]
        if isinstance(val, list):
            val = complex(val[0], val[1])
        line = f"{r['name']:<34s} {r['method']:<10s} {val}"
        if r.get("error_estimate") is not None:
            line += f"  err={r['error_estimate']:.3g}"
        if "passed" in r:
            line += f"  [{'PASS' if r['passed'] else 'FAIL'} tol={r['tolerance']:g}]"
        print(line)
    print(f"total {report['timing']['total']:.3f} s")


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip() != ""]


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _default_tol(args, fallback: float) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get(ENV_TOL)
    if env:
        return float(env)
    return fallback


def _problem_from_args(args) -> Problem:
    return Problem(args.n, _parse_int_list(args.exps), _parse_float_list(args.coeffs))


# ----------------------------- root -----------------------------------------

class _MethodFailure(Exception):
    """A solver failed on a structurally valid problem."""


def _solve_one(problem: Problem, methods: list[str], alpha: float, tol: float,
               report: _Report, label: str = "") -> None:
    values = {}
    for method in methods:
        t0 = time.perf_counter()
        try:
            if method == "param":
                z = principal_root_param(problem)
                value, err = z ** alpha, 1e-13  # level-equation accuracy bound
            elif method == "oracle":
                z = principal_root(problem)
                value, err = z ** alpha, 1e-13  # Newton accuracy bound
            elif method == "mb":
                res = principal_root_mb(problem, alpha=alpha)
                value, err = res.value.real, res.err_estimate
            else:
                raise ValueError(f"unknown method {method}")
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            raise _MethodFailure(f"method {method} failed: {exc}") from exc
        values[method] = (value, err)
        report.add(_entry(f"{label}root^alpha[{method}]", method, value, err=err))
        report.step(f"{label}{method}", t0)

    names = list(values)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, ea = values[names[i]]
            b, eb = values[names[j]]
            diff = abs(a - b)
            bound = max(tol, (ea or 0.0) + (eb or 0.0))
            report.add(_entry(
                f"{label}|{names[i]} - {names[j]}|", "compare", diff,
                tol=bound, passed=diff <= bound))


def cmd_root(args) -> int:
    tol = _default_tol(args, 1e-9)
    alpha = args.alpha
    if args.spec:
        with open(args.spec) as fh:
            instances = json.load(fh)
        problems = [(Problem(d["n"], d["exps"], d["coeffs"]),
                     float(d.get("alpha", alpha))) for d in instances]
        inputs = {"spec": args.spec, "method": args.method, "tol": tol}
    else:
        problems = [(_problem_from_args(args), alpha)]
        inputs = {"n": problems[0][0].n, "exps": list(problems[0][0].exps),
                  "coeffs": list(problems[0][0].coeffs),
                  "alpha": alpha, "method": args.method, "tol": tol}
    report = _Report("root", inputs)

    for k, (problem, a) in enumerate(problems):
        label = f"[{k}]" if len(problems) > 1 else ""
        if args.method == "all":
            methods = ["param", "oracle"] + (["mb"] if problem.p <= 2 else [])
        else:
            methods = [args.method]
        _solve_one(problem, methods, a, tol, report, label)

    _emit(report.finish(), args)
    return 1 if report.failed else 0


# ----------------------------- verify ---------------------------------------

def _replay(suite: str, seed: int, count: int, tol: float) -> str:
    return f"mellinroots verify --suite {suite} --seed {seed} --count {count} --tol {tol:g}"


def _suite_det(rng, count, tol, report, replay):
    worst_ok = True
    for i in range(count):
        p = int(rng.integers(1, 9))
        nums = rng.integers(-9, 10, size=p)
        dens = rng.integers(1, 10, size=p)
        y = [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]
        ok = det_rank_one(y) == det_cofactor(build_rank_one_matrix(y))
        if not ok:
            worst_ok = False
            report.add(_entry(f"det[{i}]", "det", 1.0, tol=0.0, passed=False,
                              instance={"y": [str(v) for v in y]}, replay=replay))
    report.add(_entry("det", "det", 0.0 if worst_ok else 1.0, tol=0.0,
                      passed=worst_ok))


def _fd_jacobian(xi, shape):
    p = len(xi)
    J = np.empty((p, p))
    for j in range(p):
        h = 6e-6 * (1.0 + abs(xi[j]))
        hi = list(xi)
        lo = list(xi)
        hi[j] += h
        lo[j] -= h
        fp = psi_forward(ParamPoint.from_xi(hi), shape)
        fm = psi_forward(ParamPoint.from_xi(lo), shape)
        J[:, j] = (np.asarray(fp) - np.asarray(fm)) / (2.0 * h)
    return float(np.linalg.det(J))


def _suite_jacobian(rng, count, tol, report, replay):
    worst = 0.0
    bad = None
    for i in range(count):
        p = int(rng.integers(1, 5))
        shape = sampling.random_shape(rng, p, n_max=9)
        xi = rng.uniform(0.0, 5.0, size=p)
        point = ParamPoint.from_xi(xi)
        closed = jacobian_det(point, shape)
        fd = _fd_jacobian(list(xi), shape)
        rel = abs(closed - fd) / abs(closed)
        if rel > worst:
            worst, bad = rel, {"shape": [shape[0], list(shape[1])], "xi": list(map(float, xi))}
        if rel > tol:
            report.add(_entry(f"jacobian[{i}]", "jacobian", rel, tol=tol,
                              passed=False, instance=bad, replay=replay))
    report.add(_entry("jacobian", "jacobian", worst, tol=tol, passed=worst <= tol))


def _suite_mellin(rng, count, tol, report, replay):
    worst = 0.0
    ok = True
    for i in range(count):
        p = 1 if i % 3 else 2
        shape, alpha, u_list = sampling.random_forward_tuple(rng, p)
        params = MellinParams.for_shape(shape, alpha, u_list)
        lhs, rhs = forward_mellin_check(shape, params, tol=tol)
        rel = abs(lhs - rhs) / abs(rhs)
        worst = max(worst, rel)
        if rel > tol:
            ok = False
            report.add(_entry(
                f"mellin[{i}]", "mellin", rel, tol=tol, passed=False,
                instance={"shape": [shape[0], list(shape[1])], "alpha": alpha,
                          "u": list(u_list)}, replay=replay))
    report.add(_entry("mellin", "mellin", worst, tol=tol, passed=ok))


def _suite_dirichlet(rng, count, tol, report, replay):
    worst = 0.0
    ok = True
    for i in range(count):
        p = i % 3 + 1
        u, omega = sampling.random_dirichlet_tuple(rng, p)
        numeric, closed = dirichlet_integral(u, omega, tol=tol)
        rel = abs(numeric - closed) / abs(closed)
        worst = max(worst, rel)
        if rel > tol:
            ok = False
            report.add(_entry(
                f"dirichlet[{i}]", "dirichlet", rel, tol=tol, passed=False,
                instance={"u": [_num(v) for v in u], "omega": omega}, replay=replay))
    report.add(_entry("dirichlet", "dirichlet", worst, tol=tol, passed=ok))


def _suite_funceq(rng, count, tol, report, replay):
    worst = 0.0
    ok = True
    for i in range(count):
        p = int(rng.integers(1, 4))
        shape = sampling.random_shape(rng, p)
        alpha = float(rng.uniform(0.5, 4.0))
        u = [complex(rng.uniform(0.3, 1.5), rng.uniform(0.2, 1.0)) for _ in range(p)]
        err = check_functional_equation(shape, alpha, u)
        worst = max(worst, err)
        if err > tol:
            ok = False
            report.add(_entry(
                f"funceq[{i}]", "funceq", err, tol=tol, passed=False,
                instance={"shape": [shape[0], list(shape[1])], "alpha": alpha,
                          "u": [_num(v) for v in u]}, replay=replay))
    report.add(_entry("funceq", "funceq", worst, tol=tol, passed=ok))


def _suite_pde(rng, count, tol, report, replay):
    worst = 0.0
    ok = True
    for i in range(count):
        problem, alpha = sampling.random_pde_problem(rng)
        res = pde_residual(problem, alpha, h=1e-2)
        worst = max(worst, res)
        if res > tol:
            ok = False
            report.add(_entry(
                f"pde[{i}]", "pde", res, tol=tol, passed=False,
                instance={"n": problem.n, "exps": list(problem.exps),
                          "coeffs": list(problem.coeffs), "alpha": alpha},
                replay=replay))
    report.add(_entry("pde", "pde", worst, tol=tol, passed=ok))


def _match_multisets(a, b):
    """Greatest distance in a greedy nearest matching of two root multisets."""
    b = list(b)
    worst = 0.0
    for z in a:
        j = min(range(len(b)), key=lambda k: abs(z - b[k]))
        worst = max(worst, abs(z - b[j]))
        b.pop(j)
    return worst


def _suite_epsilon(rng, count, tol, report, replay):
    worst = 0.0
    ok = True
    for i in range(count):
        problem = sampling.random_small_problem(rng)
        fam = epsilon_family(problem)
        comp = all_roots(problem).roots
        dist = _match_multisets(fam, comp)
        worst = max(worst, dist)
        if dist > tol:
            ok = False
            report.add(_entry(
                f"epsilon[{i}]", "epsilon", dist, tol=tol, passed=False,
                instance={"n": problem.n, "exps": list(problem.exps),
                          "coeffs": list(problem.coeffs)}, replay=replay))
    report.add(_entry("epsilon", "epsilon", worst, tol=tol, passed=ok))


_SUITES = {
    "det": (_suite_det, 1000, 0.0),
    "jacobian": (_suite_jacobian, 500, 1e-6),
    "mellin": (_suite_mellin, 20, 1e-6),
    "dirichlet": (_suite_dirichlet, 30, 1e-6),
    "funceq": (_suite_funceq, 50, 1e-11),
    "pde": (_suite_pde, 10, 1e-4),
    "epsilon": (_suite_epsilon, 100, 1e-9),
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    inputs = {"suite": args.suite, "count": args.count, "tol": args.tol}
    report = _Report("verify", inputs, seed=args.seed)
    for name in names:
        fn, default_count, default_tol = _SUITES[name]
        count = args.count if args.count is not None else default_count
        tol = args.tol if args.tol is not None else float(
            os.environ.get(ENV_TOL, default_tol) if name != "det" else default_tol)
        rng = np.random.Generator(np.random.PCG64(args.seed))
        t0 = time.perf_counter()
        fn(rng, count, tol, report, _replay(name, args.seed, count, tol))
        report.step(name, t0)
    _emit(report.finish(), args)
    return 1 if report.failed else 0


# ----------------------------- contour-trace --------------------------------

def cmd_contour_trace(args) -> int:
    problem = _problem_from_args(args)
    if problem.p > 2:
        raise ValueError("contour tracing supports p <= 2")
    base = default_contour(problem, args.alpha)
    contour = Contour(
        abscissas=base.abscissas,
        height=args.height if args.height is not None else base.height,
        nodes_per_line=args.nodes if args.nodes is not None else base.nodes_per_line,
    )
    pts, vals = contour_integrand(problem, args.alpha, contour)
    try:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            if problem.p == 1:
                writer.writerow(["im_u1", "re_integrand", "im_integrand", "abs_integrand"])
                for (t1,), v in zip(pts, vals):
                    writer.writerow([repr(float(t1)), repr(float(v.real)),
                                     repr(float(v.imag)), repr(float(abs(v)))])
            else:
                writer.writerow(["im_u1", "im_u2", "re_integrand", "im_integrand", "abs_integrand"])
                for (t1, t2), v in zip(pts, vals):
                    writer.writerow([repr(float(t1)), repr(float(t2)), repr(float(v.real)),
                                     repr(float(v.imag)), repr(float(abs(v)))])
    except OSError as exc:
        print(f"error: cannot write trace to {args.out}: {exc}", file=sys.stderr)
        return 3
    if not args.json:
        print(f"wrote {len(pts)} rows to {args.out}")
    return 0


# ----------------------------- series ---------------------------------------

def cmd_series(args) -> int:
    exps = _parse_int_list(args.exps)
    if len(exps) != 1:
        raise ValueError("series requires exactly one exponent (p = 1)")
    coeffs = series_coefficients((args.n, tuple(exps)), args.alpha, args.kmax)
    if args.json or args.out:
        report = _Report("series", {"n": args.n, "exps": exps,
                                    "alpha": args.alpha, "kmax": args.kmax})
        for k, c in enumerate(coeffs):
            report.add(_entry(f"c[{k}]", "residue", c))
        _emit(report.finish(), args)
    else:
        for c in coeffs:
            print(repr(c))
    return 0


# ----------------------------- parser ---------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mellinroots",
        description="Principal roots of Z^n + x1*Z^n1 + ... + xp*Z^np = 1 "
                    "and verification of the transform identities behind them.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--out", default=None, help="write output to this path")

    sp = sub.add_parser("root", help="solve one instance")
    sp.add_argument("--n", type=int)
    sp.add_argument("--exps", type=str, help="comma-separated exponents")
    sp.add_argument("--coeffs", type=str, help="comma-separated coefficients")
    sp.add_argument("--method", choices=["param", "mb", "oracle", "all"], default="all")
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--spec", default=None, help="JSON file with a batch of instances")
    common(sp)
    sp.set_defaults(fn=cmd_root)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=[*_SUITES, "all"], default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--tol", type=float, default=None)
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("contour-trace", help="dump contour integrand samples to CSV")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--exps", type=str, required=True)
    sp.add_argument("--coeffs", type=str, required=True)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--height", type=float, default=None)
    sp.add_argument("--nodes", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_contour_trace)

    sp = sub.add_parser("series", help="print p = 1 series coefficients")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--exps", type=str, required=True)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--kmax", type=int, default=10)
    common(sp)
    sp.set_defaults(fn=cmd_series)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "root" and not args.spec:
        if args.n is None or args.exps is None or args.coeffs is None:
            parser.error("root requires --n, --exps and --coeffs (or --spec)")
    try:
        return args.fn(args)
    except _MethodFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        if isinstance(exc, _NUMERICAL_ERRORS):
            print(f"error: {exc}", file=sys.stderr)
            return 3
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
