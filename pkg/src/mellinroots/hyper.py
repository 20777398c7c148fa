"""Shift structure of the gamma-ratio kernel and the PDE system it induces.

Shifting one kernel argument by n multiplies the kernel by a ratio of
polynomials f_s/g_s that factors completely into linear forms
c_1 u_1 + ... + c_p u_p + a with rational c_i (built from the gamma
recurrence).  Because monomials x^{-u} are eigenfunctions of the Euler
operators theta_i = -x_i d/dx_i, those shift relations turn into a system
of finite-order PDEs for y = Z^alpha, which this module verifies by
finite differences in log coordinates (where theta_i = -d/dt_i).

For p = 1 the kernel's left pole ladder also yields the Taylor
coefficients of Z^alpha as residues; truncated sums are checked against
the Newton solver.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import PoleError, StepTooSmallError
from .gamma import is_pole, log_gamma
from .mellin import kernel_value
from .oracle import Problem
from .param import psi_inverse

__all__ = [
    "LinearFactor", "FactorPair", "shift_ratio_factors",
    "check_functional_equation", "pde_residual", "series_coefficients",
    "fd_weights",
]

Shape = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class LinearFactor:
    """The linear form c_1 u_1 + ... + c_p u_p + a with rational c_i."""

    coeffs: tuple[Fraction, ...]
    offset: float

    def __call__(self, u_list: Sequence[complex]) -> complex:
        return self.offset + sum(float(c) * u for c, u in zip(self.coeffs, u_list))

    def shifted(self, delta: float) -> "LinearFactor":
        return LinearFactor(self.coeffs, self.offset + delta)


@dataclass(frozen=True)
class FactorPair:
    """Numerator/denominator factorizations of the shift ratio on line s."""

    f: tuple[LinearFactor, ...]
    g: tuple[LinearFactor, ...]
    index: int

    @property
    def degree(self) -> int:
        return max(len(self.f), len(self.g))

    def ratio(self, u_list: Sequence[complex]) -> complex:
        num = 1.0 + 0.0j
        for fac in self.f:
            num *= fac(u_list)
        den = 1.0 + 0.0j
        for fac in self.g:
            den *= fac(u_list)
        return num / den


def shift_ratio_factors(shape: Shape, alpha: float) -> list[FactorPair]:
    """Factor pairs (f_s, g_s) with F(..., u_s + n, ...) = (f_s/g_s) F(u).

    Shifting u_s by n lowers u by n_s and raises u + sum(u) + 1 by
    n - n_s, so the gamma recurrence gives
    f_s = prod_{j=0}^{n-1} (u_s + j),
    g_s = prod_{j=1}^{n_s} (u - j) * prod_{j=1}^{n-n_s} (u + sum(u) + j).
    Every factor is a linear form with rational coefficients.
    """
    n, exps = shape
    p = len(exps)
    u_form = LinearFactor(
        coeffs=tuple(Fraction(-e, n) for e in exps), offset=alpha / n)
    sum_form = LinearFactor(
        coeffs=tuple(Fraction(n - e, n) for e in exps), offset=alpha / n)

    pairs = []
    for s, ns in enumerate(exps):
        basis = tuple(Fraction(1) if i == s else Fraction(0) for i in range(p))
        f = tuple(LinearFactor(basis, float(j)) for j in range(n))
        g = tuple(u_form.shifted(-float(j)) for j in range(1, ns + 1)) + \
            tuple(sum_form.shifted(float(j)) for j in range(1, n - ns + 1))
        pairs.append(FactorPair(f=f, g=g, index=s))
    return pairs


def check_functional_equation(
    shape: Shape,
    alpha: float,
    u_sample: Sequence[complex],
    kernel_fn: Callable[[Sequence[complex]], complex] | None = None,
) -> float:
    """Worst relative error of the shift relation over all lines at u_sample."""
    n, exps = shape
    if kernel_fn is None:
        kernel_fn = lambda ul: kernel_value(shape, alpha, ul)
    pairs = shift_ratio_factors(shape, alpha)
    u = [complex(v) for v in u_sample]
    base = kernel_fn(u)
    worst = 0.0
    for pair in pairs:
        shifted = list(u)
        shifted[pair.index] += n
        lhs = kernel_fn(shifted)
        rhs = pair.ratio(u) * base
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return worst


def fd_weights(order: int, offsets: Sequence[float]) -> np.ndarray:
    """Finite-difference weights for the order-th derivative at 0 (Fornberg)."""
    x = np.asarray(offsets, dtype=float)
    npt = x.size
    if order >= npt:
        raise ValueError("need more points than the derivative order")
    c = np.zeros((npt, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0]
    for i in range(1, npt):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def _stencil_halfwidth(order: int) -> int:
    # smallest symmetric stencil that is 4th-order accurate for this order
    return (order + 1) // 2 + 1 if order > 0 else 0


def _expand_factors(factors: Sequence[LinearFactor], p: int) -> dict[tuple[int, ...], float]:
    """Multiply linear factors into monomial coefficients over theta indices."""
    poly = {(0,) * p: 1.0}
    for fac in factors:
        new: dict[tuple[int, ...], float] = {}
        for beta, coef in poly.items():
            if fac.offset != 0.0:
                new[beta] = new.get(beta, 0.0) + coef * fac.offset
            for i, c in enumerate(fac.coeffs):
                if c != 0:
                    b = list(beta)
                    b[i] += 1
                    b = tuple(b)
                    new[b] = new.get(b, 0.0) + coef * float(c)
        poly = new
    return poly


def _mixed_derivative(grid: np.ndarray, beta: tuple[int, ...], h: float) -> float:
    """D^beta of grid data at the center, minimal 4th-order stencils per axis."""
    out = grid
    for mu in beta:
        k = out.shape[0] // 2
        if mu == 0:
            out = out[k]
            continue
        w = _stencil_halfwidth(mu)
        wts = fd_weights(mu, np.arange(-w, w + 1)) / h ** mu
        out = np.tensordot(wts, out[k - w: k + w + 1], axes=(0, 0))
    return float(out)


def _apply_theta_poly(poly, grid, h) -> tuple[float, float]:
    """(value, magnitude scale) of poly(theta) applied to grid data at center."""
    total = 0.0
    scale = 0.0
    for beta, coef in poly.items():
        term = coef * (-1.0) ** sum(beta) * _mixed_derivative(grid, beta, h)
        total += term
        scale += abs(term)
    return total, scale


def _root_power_grid(problem: Problem, alpha: float, h: float, H: int) -> np.ndarray:
    p = problem.p
    t0 = np.log(problem.coeffs)
    size = 2 * H + 1
    grid = np.empty((size,) * p)
    for idx in np.ndindex(*grid.shape):
        offs = np.array(idx) - H
        coeffs = np.exp(t0 + h * offs)
        point = psi_inverse(coeffs, problem.shape)
        grid[idx] = point.W ** (-alpha / problem.n)
    return grid


def _pde_residual_at(problem: Problem, alpha: float, h: float) -> float:
    n, exps = problem.shape
    p = problem.p
    H = _stencil_halfwidth(n)
    y = _root_power_grid(problem, alpha, h, H)
    pairs = shift_ratio_factors(problem.shape, alpha)

    offs = np.arange(-H, H + 1)
    worst = 0.0
    for pair in pairs:
        s = pair.index
        # x_s^n * y on the same grid
        xs = problem.coeffs[s] * np.exp(h * offs)
        shape_vec = [1] * p
        shape_vec[s] = offs.size
        w = y * (xs ** n).reshape(shape_vec)

        poly_f = _expand_factors(pair.f, p)
        poly_g = _expand_factors(pair.g, p)
        lhs, sc1 = _apply_theta_poly(poly_f, y, h)
        rhs, sc2 = _apply_theta_poly(poly_g, w, h)
        res = abs(lhs - rhs) / max(sc1 + sc2, 1e-300)
        worst = max(worst, res)
    return worst


def pde_residual(problem: Problem, alpha: float, h: float = 1e-2) -> float:
    """Max normalized residual of f_s(theta) y = g_s(theta)(x_s^n y) over s.

    theta_i = -x_i d/dx_i is applied by 4th-order central differences in
    log coordinates.  Raises StepTooSmallError when halving the step makes
    the residual worse (roundoff domination).
    """
    if any(c <= 0 for c in problem.coeffs):
        raise ValueError("PDE check needs strictly positive coefficients")
    res = _pde_residual_at(problem, alpha, h)
    res_coarse = _pde_residual_at(problem, alpha, 2.0 * h)
    if res > max(res_coarse, 1e-14):
        raise StepTooSmallError(
            f"residual {res:g} at h={h:g} exceeds {res_coarse:g} at 2h: "
            "step dominated by roundoff")
    return res


def series_coefficients(shape: Shape, alpha: float, k_max: int) -> list[float]:
    """Taylor coefficients of Z(x)^alpha in x, from kernel residues (p = 1).

    The poles of Gamma(u_1) at u_1 = -k give
    c_k = (-1)^k/k! * (alpha/n) * Gamma(u(-k)) / Gamma(u(-k) - k + 1);
    a denominator pole means the coefficient vanishes.
    """
    n, exps = shape
    if len(exps) != 1:
        raise ValueError("residue series is implemented for p = 1 only")
    n1 = exps[0]
    out: list[float] = []
    for k in range(k_max + 1):
        num = alpha / n + (n1 / n) * k
        den = alpha / n - ((n - n1) / n) * k + 1.0
        if is_pole(num):
            raise PoleError(
                f"degenerate parameters: Gamma argument {num} at a pole for k={k}")
        if is_pole(den):
            out.append(0.0)
            continue
        val = cmath.exp(log_gamma(num) - log_gamma(den) - log_gamma(k + 1.0))
        out.append(((-1.0) ** k * (alpha / n) * val).real)
    return out
