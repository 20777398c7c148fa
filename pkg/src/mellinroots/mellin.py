"""Forward Mellin-transform identity and inverse Mellin-Barnes evaluation.

The forward side checks, by direct quadrature over the orthant, that the
transform of Z^alpha equals the gamma-ratio kernel

    F(u_1, ..., u_p) = (alpha/n) Gamma(u) prod Gamma(u_i) / Gamma(omega),
    u = alpha/n - sum (n_i/n) u_i,   omega = u + sum u_i + 1.

The inverse side recovers Z^alpha as a p-fold integral of F * prod x_s^{-u_s}
along vertical lines Re u_s = a_s, evaluated by the trapezoid rule, which is
spectrally accurate for analytic integrands decaying on the lines.  The
truncation height comes from the Stirling decay of the kernel: the count of
gamma factors upstairs exceeds downstairs by p, giving exponential decay at
rate at least pi*n_s/n per line (minus |arg x_s| for complex coefficients,
whence the validity sector |arg x_s| < n_s*pi/(2n)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceConditionError, QuadratureError
from .gamma import gamma_ratio, log_gamma_array
from .oracle import Problem
from .quadrature import integrate_orthant_log, log_one_plus_sum_exp

__all__ = [
    "MellinParams", "Contour", "QuadResult", "kernel", "kernel_value",
    "forward_mellin_check", "default_contour", "principal_root_mb",
    "quadratic_mb_check", "contour_integrand",
]

Shape = tuple[int, tuple[int, ...]]

# drop grid points whose Stirling-bound magnitude is below e^-50 of the center
_MASK_CUT = 50.0


@dataclass(frozen=True)
class MellinParams:
    """Transform parameters: power alpha, arguments u_1..u_p, derived u."""

    alpha: float
    u_list: tuple[complex, ...]
    u: complex

    @classmethod
    def for_shape(cls, shape: Shape, alpha: float, u_list: Sequence[complex]) -> "MellinParams":
        n, exps = shape
        alpha = float(alpha)
        u_list = tuple(complex(v) for v in u_list)
        if len(u_list) != len(exps):
            raise ValueError(f"{len(u_list)} arguments for {len(exps)} exponents")
        if alpha <= 0:
            raise ConvergenceConditionError(f"alpha must be positive, got {alpha}")
        u = alpha / n - sum((e / n) * uv for e, uv in zip(exps, u_list))
        if any(uv.real <= 0 for uv in u_list):
            raise ConvergenceConditionError(
                f"all Re u_i must be positive, got {u_list}")
        if u.real <= 0:
            raise ConvergenceConditionError(
                f"Re u = {u.real:g} <= 0: alpha too small for these u_i")
        return cls(alpha=alpha, u_list=u_list, u=u)

    @property
    def omega(self) -> complex:
        return self.u + sum(self.u_list) + 1.0


@dataclass(frozen=True)
class Contour:
    """Vertical-line data: abscissas a_s, truncation height T, nodes per line."""

    abscissas: tuple[float, ...]
    height: float
    nodes_per_line: int

    def __post_init__(self):
        if any(a <= 0 for a in self.abscissas):
            raise ConvergenceConditionError(
                f"abscissas must be positive, got {self.abscissas}")
        if self.height <= 0:
            raise ConvergenceConditionError("height must be positive")
        if self.nodes_per_line < 9 or self.nodes_per_line % 2 == 0:
            raise ConvergenceConditionError("nodes_per_line must be odd and >= 9")

    def validate_for(self, shape: Shape, alpha: float) -> None:
        n, exps = shape
        slack = alpha - math.fsum(e * a for e, a in zip(exps, self.abscissas))
        if slack <= 0:
            raise ConvergenceConditionError(
                f"alpha - sum n_s a_s = {slack:g} must be positive")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    evaluations: int


def kernel_value(shape: Shape, alpha: float, u_list: Sequence[complex]) -> complex:
    """Gamma-ratio kernel at arbitrary pole-free arguments (no convergence check)."""
    n, exps = shape
    u_list = [complex(v) for v in u_list]
    u = alpha / n - sum((e / n) * uv for e, uv in zip(exps, u_list))
    omega = u + sum(u_list) + 1.0
    return (alpha / n) * gamma_ratio([u, *u_list], [omega])


def kernel(params: MellinParams, shape: Shape) -> complex:
    """Kernel at validated transform parameters, formed in log space."""
    return kernel_value(shape, params.alpha, params.u_list)


def forward_mellin_check(
    shape: Shape,
    params: MellinParams,
    tol: float = 1e-6,
) -> tuple[complex, complex]:
    """Both sides of the transform identity for Z^alpha.

    The left side integrates Z^alpha * prod x_i^{u_i-1} over the orthant
    numerically, after the parametric substitution turns it into a
    Dirichlet-type integrand in xi; the right side is the gamma-ratio
    kernel.  Returns (lhs, rhs); callers assert |lhs - rhs| <= tol*|rhs|.
    """
    n, exps = shape
    p = len(exps)
    if p > 2:
        raise ValueError("forward check integrates numerically only for p <= 2")
    if any(abs(uv.imag) > 0 for uv in params.u_list):
        raise ValueError("forward check requires real u_i")

    omega = params.omega
    u_re = [uv.real for uv in params.u_list]
    log_ratios = [math.log(e / n) for e in exps]

    def log_integrand(L: list[np.ndarray]) -> np.ndarray:
        lse_w = log_one_plus_sum_exp(L)                       # ln(1 + sum xi)
        lse_c = log_one_plus_sum_exp(
            [lr + Li for lr, Li in zip(log_ratios, L)])       # ln(1 + sum (n_k/n) xi_k)
        acc = lse_c - omega.real * lse_w
        for uv, Li in zip(u_re, L):
            acc = acc + (uv - 1.0) * Li
        return acc

    lhs, _, _ = integrate_orthant_log(
        log_integrand, p, rel_tol=tol / 3.0,
        max_level=7 if p == 1 else 6)
    rhs = kernel(params, shape)
    return lhs, rhs


def _sector_rate(shape: Shape, x: Sequence[complex]) -> float:
    """Worst-case exponential decay rate of the contour integrand per line."""
    n, exps = shape
    rate = math.inf
    for e, xv in zip(exps, x):
        r = math.pi * e / n - abs(cmath.phase(complex(xv)))
        rate = min(rate, r)
    return rate


def default_contour(
    problem: Problem,
    alpha: float,
    tol: float = 1e-7,
    coeffs: Sequence[complex] | None = None,
) -> Contour:
    """Contour sized from the Stirling decay bound so the tail is < tol/10.

    Abscissas balance the two analyticity-strip constraints (the poles of
    Gamma(u_s) at 0 and of Gamma(u) at 0): a = alpha/(n_1 + sum n_k), capped
    at 1/2; the trapezoid step then resolves the strip to the same tolerance.
    """
    n, exps = problem.shape
    x = [complex(c) for c in (coeffs if coeffs is not None else problem.coeffs)]
    rate = _sector_rate(problem.shape, x)
    if rate <= 0:
        raise ConvergenceConditionError(
            "coefficients outside the validity sector |arg x_s| < n_s*pi/(2n)")
    a = min(0.5, alpha / (exps[0] + sum(exps)))
    u0 = (alpha - a * sum(exps)) / n
    strip = min(a, min(u0 * n / e for e in exps))
    # x^-u oscillates like exp(-i t ln|x|), which eats into the alias margin
    osc = max(abs(cmath.log(abs(xv))) for xv in x)
    height = (0.8 * math.log(30.0 / tol) + 5.0 + 0.3 * osc) / rate
    step = 3.0 * math.pi * strip / (math.log(30.0 / tol) + 3.0 + 3.0 * strip * osc)
    m = max(9, int(math.ceil(2.0 * height / step)) | 1)
    return Contour(abscissas=(a,) * len(exps), height=height, nodes_per_line=m)


def _log_kernel_grid(shape: Shape, alpha: float, u_axes: list[np.ndarray]) -> np.ndarray:
    """log F on a broadcast grid of line arguments."""
    n, exps = shape
    u = alpha / n + 0j
    for e, ua in zip(exps, u_axes):
        u = u - (e / n) * ua
    omega = u + 1.0
    for ua in u_axes:
        omega = omega + ua
    out = math.log(alpha / n) + log_gamma_array(u) - log_gamma_array(omega)
    for ua in u_axes:
        out = out + log_gamma_array(ua)
    return out


def _line_nodes(T: float, m: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Symmetric trapezoid nodes: t_j = j*h is exactly antisymmetric."""
    h = 2.0 * T / (m - 1)
    t = (np.arange(m) - (m - 1) // 2) * h
    w = np.ones(m)
    w[0] = w[-1] = 0.5
    return t, w, h


def _mb_line_sum_1d(shape, alpha, x, a, T, m, full_grid):
    t, w, h = _line_nodes(T, m)
    logx = cmath.log(complex(x[0]))
    real_x = complex(x[0]).imag == 0.0 and complex(x[0]).real > 0.0

    if real_x and not full_grid:
        half = t >= 0.0
        u1 = a[0] + 1j * t[half]
        logI = _log_kernel_grid(shape, alpha, [u1]) - u1 * logx
        f = np.exp(logI) * w[half]
        s = 2.0 * np.sum(f.real) - f[0].real  # t = 0 counted once
        return complex(s) * h / (2.0 * math.pi), int(u1.size)
    u1 = a[0] + 1j * t
    logI = _log_kernel_grid(shape, alpha, [u1]) - u1 * logx
    s = np.sum(np.exp(logI) * w)
    return complex(s) * h / (2.0 * math.pi), int(u1.size)


def _stirling_exponent(shape, t1, t2, argx):
    """Leading Stirling log-decay of |integrand| relative to the grid center."""
    n, exps = shape
    im_u = -(exps[0] * t1 + exps[1] * t2) / n
    im_om = im_u + t1 + t2
    E = (math.pi / 2.0) * (np.abs(im_u) + np.abs(t1) + np.abs(t2) - np.abs(im_om))
    return E - (t1 * argx[0] + t2 * argx[1])


def _mb_masked_block(shape, alpha, x, a, t1, w1, t2, w2):
    """Weighted integrand sum over one t1 x t2 block, Stirling-masked."""
    n, exps = shape
    argx = [cmath.phase(complex(v)) for v in x]
    E = _stirling_exponent(shape, t1[:, None], t2[None, :], argx)
    keep = E <= _MASK_CUT
    i_idx, j_idx = np.nonzero(keep)
    if i_idx.size == 0:
        return 0.0 + 0.0j, 0
    # per-line factors depend on one t only: evaluate once per line, gather
    v1 = a[0] + 1j * t1
    v2 = a[1] + 1j * t2
    line1 = log_gamma_array(v1) - v1 * cmath.log(complex(x[0]))
    line2 = log_gamma_array(v2) - v2 * cmath.log(complex(x[1]))
    u1 = v1[i_idx]
    u2 = v2[j_idx]
    u = alpha / n - (exps[0] * u1 + exps[1] * u2) / n
    omega = u + u1 + u2 + 1.0
    logI = (math.log(alpha / n) + log_gamma_array(u) - log_gamma_array(omega)
            + line1[i_idx] + line2[j_idx])
    vals = np.exp(logI) * (w1[i_idx] * w2[j_idx])
    return complex(np.sum(vals)), int(i_idx.size)


def _mb_line_sum_2d(shape, alpha, x, a, T, m, full_grid):
    t, w, h = _line_nodes(T, m)
    mid = (m - 1) // 2
    real_x = all(complex(v).imag == 0.0 and complex(v).real > 0.0 for v in x)

    if real_x and not full_grid:
        # f(-t1,-t2) = conj f(t1,t2): fold onto t1 > 0 plus the t1 = 0 half line
        s_pos, n_pos = _mb_masked_block(
            shape, alpha, x, a, t[mid + 1:], w[mid + 1:], t, w)
        s_axis, n_axis = _mb_masked_block(
            shape, alpha, x, a, t[mid:mid + 1], w[mid:mid + 1], t[mid + 1:], w[mid + 1:])
        u0 = np.asarray([a[0] + 0j]), np.asarray([a[1] + 0j])
        f00 = complex(np.exp(_log_kernel_grid(shape, alpha, [u0[0], u0[1]])[0]
                             - (a[0]) * cmath.log(complex(x[0]))
                             - (a[1]) * cmath.log(complex(x[1]))))
        total = 2.0 * (s_pos + s_axis).real + f00.real
        return complex(total) * (h / (2.0 * math.pi)) ** 2, n_pos + n_axis + 1
    s, cnt = _mb_masked_block(shape, alpha, x, a, t, w, t, w)
    return s * (h / (2.0 * math.pi)) ** 2, cnt


def _mb_eval(shape, alpha, x, a, T, m, full_grid):
    if len(x) == 1:
        return _mb_line_sum_1d(shape, alpha, x, a, T, m, full_grid)
    return _mb_line_sum_2d(shape, alpha, x, a, T, m, full_grid)


def principal_root_mb(
    problem: Problem,
    alpha: float = 1.0,
    contour: Contour | None = None,
    tol: float | None = None,
    coeffs: Sequence[complex] | None = None,
    _full_grid: bool = False,
) -> QuadResult:
    """Z(x)^alpha by the p-fold vertical-line integral of the kernel.

    The returned value refines the base contour by node doubling and tail
    extension; err_estimate is the a posteriori change under doubling the
    node count and the truncation height.  For real positive coefficients
    the imaginary part of the value is bounded by err_estimate.  ``coeffs``
    overrides the problem's coefficients for evaluation at complex points
    inside the validity sector |arg x_s| < n_s*pi/(2n).
    """
    p = problem.p
    if p > 2:
        raise ValueError("contour evaluation is implemented for p <= 2 "
                         "(use the parametric solver for higher p)")
    x = [complex(c) for c in (coeffs if coeffs is not None else problem.coeffs)]
    if len(x) != p:
        raise ValueError(f"{len(x)} coefficients for p = {p}")
    if any(c == 0 for c in x):
        raise ConvergenceConditionError(
            "contour evaluation needs strictly positive |x_s| (x^-u undefined at 0)")
    if _sector_rate(problem.shape, x) <= 0:
        raise ConvergenceConditionError(
            "coefficients outside the validity sector |arg x_s| < n_s*pi/(2n)")
    if contour is None:
        contour = default_contour(problem, alpha, tol if tol is not None else 1e-7,
                                  coeffs=x)
    contour.validate_for(problem.shape, alpha)

    a = list(contour.abscissas)
    T, m = contour.height, contour.nodes_per_line
    v_base, n1 = _mb_eval(problem.shape, alpha, x, a, T, m, _full_grid)
    v_fine, n2 = _mb_eval(problem.shape, alpha, x, a, T, 2 * m - 1, _full_grid)
    v_tall, n3 = _mb_eval(problem.shape, alpha, x, a, 2.0 * T, 2 * m - 1, _full_grid)

    value = v_fine + (v_tall - v_base)
    err = abs(v_fine - v_base) + abs(v_tall - v_base) + 1e-15 * (1.0 + abs(value))
    if tol is not None and err > tol:
        raise QuadratureError(
            f"contour integral error estimate {err:g} exceeds requested {tol:g}")
    return QuadResult(value=value, err_estimate=err, evaluations=n1 + n2 + n3)


def quadratic_mb_check(x: float, tol: float = 1e-8) -> tuple[float, float]:
    """Contour-integral value of the quadratic's root against its closed form.

    Evaluates (1/(4 pi i)) * integral over Re z = 1/2 of
    Gamma(z) Gamma((1-z)/2) / Gamma((3+z)/2) * x^-z dz and compares with
    -x/2 + sqrt(1 + (x/2)^2), the principal root of Z^2 + x Z - 1 = 0.
    (The x^-z / Gamma((1-z)/2) combination is forced: the frequently
    misprinted x^z / Gamma((1+z)/2) variant has a double pole at z = -1
    and is not an algebraic function of x at all.)
    """
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    rate = math.pi / 2.0
    T = (math.log(30.0 / tol) + 6.0 + abs(math.log(x))) / rate
    step = 2.0 * math.pi * 0.5 / (math.log(30.0 / tol) + 3.0 + abs(math.log(x)))
    m = max(9, int(math.ceil(2.0 * T / step)) | 1)

    def line_sum(TT, mm):
        t = np.linspace(0.0, TT, (mm + 1) // 2)
        w = np.ones(t.size)
        w[-1] = 0.5
        h = TT / (t.size - 1)
        z = 0.5 + 1j * t
        logI = (log_gamma_array(z) + log_gamma_array((1.0 - z) / 2.0)
                - log_gamma_array((3.0 + z) / 2.0) - z * math.log(x))
        f = np.exp(logI) * w
        s = 2.0 * np.sum(f.real) - f[0].real
        return s * h / (4.0 * math.pi)

    v1 = line_sum(T, m)
    v2 = line_sum(2.0 * T, 4 * m - 3)
    err = abs(v2 - v1) + 1e-15
    if err > tol:
        raise QuadratureError(f"truncation error {err:g} above tol {tol:g}")
    closed = -x / 2.0 + math.sqrt(1.0 + (x / 2.0) ** 2)
    return v2, closed


def contour_integrand(
    problem: Problem,
    alpha: float,
    contour: Contour,
) -> tuple[np.ndarray, np.ndarray]:
    """Raw integrand samples along the contour, for tracing.

    Returns (points, values): for p = 1, points has shape (m, 1) holding
    Im u_1; for p = 2, shape (m*m, 2) over the tensor grid in row-major
    order.  Values are kernel * prod x_s^{-u_s} without the (2 pi i)^-p.
    """
    p = problem.p
    if p > 2:
        raise ValueError("contour tracing is implemented for p <= 2")
    contour.validate_for(problem.shape, alpha)
    x = [complex(c) for c in problem.coeffs]
    T, m = contour.height, contour.nodes_per_line
    t, _, _ = _line_nodes(T, m)
    a = contour.abscissas
    if p == 1:
        u1 = a[0] + 1j * t
        logI = _log_kernel_grid(problem.shape, alpha, [u1]) - u1 * cmath.log(x[0])
        return t.reshape(-1, 1), np.exp(logI)
    tt1, tt2 = np.meshgrid(t, t, indexing="ij")
    u1 = a[0] + 1j * tt1.ravel()
    u2 = a[1] + 1j * tt2.ravel()
    logI = (_log_kernel_grid(problem.shape, alpha, [u1, u2])
            - u1 * cmath.log(x[0]) - u2 * cmath.log(x[1]))
    pts = np.column_stack([tt1.ravel(), tt2.ravel()])
    return pts, np.exp(logI)
