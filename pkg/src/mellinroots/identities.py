"""Exact and numeric identities backing the transform machinery.

Three independent facts: the rank-one determinant det(I + 1 y^T) = 1 + sum y
(exact, rational arithmetic), the Dirichlet-type orthant integral equal to a
gamma ratio, and the term-by-term decomposition that reduces the forward
transform to those Dirichlet integrals.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DivergentIntegralError
from .gamma import log_gamma
from .quadrature import integrate_orthant_log, log_one_plus_sum_exp

__all__ = [
    "det_rank_one", "det_cofactor", "build_rank_one_matrix",
    "dirichlet_integral", "i0_ii_decomposition_check",
]

Shape = tuple[int, tuple[int, ...]]


def build_rank_one_matrix(y: Sequence[Fraction]) -> list[list[Fraction]]:
    """M[i][j] = delta_ij + y_i: identity plus a rank-one row pattern."""
    y = [Fraction(v) for v in y]
    p = len(y)
    return [[y[i] + (1 if i == j else 0) for j in range(p)] for i in range(p)]


def det_rank_one(y: Sequence[Fraction]) -> Fraction:
    """Closed-form determinant of build_rank_one_matrix(y): 1 + sum y, exact."""
    return Fraction(1) + sum((Fraction(v) for v in y), Fraction(0))


def det_cofactor(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by cofactor expansion (memoized over column subsets)."""
    p = len(matrix)
    cache: dict[tuple[int, tuple[int, ...]], Fraction] = {}

    def expand(row: int, cols: tuple[int, ...]) -> Fraction:
        if not cols:
            return Fraction(1)
        key = (row, cols)
        if key in cache:
            return cache[key]
        total = Fraction(0)
        for k, c in enumerate(cols):
            sub = cols[:k] + cols[k + 1:]
            term = matrix[row][c] * expand(row + 1, sub)
            total += term if k % 2 == 0 else -term
        cache[key] = total
        return total

    return expand(0, tuple(range(p)))


def dirichlet_integral(
    u: Sequence[complex],
    omega: float,
    tol: float = 1e-8,
) -> tuple[complex, complex]:
    """Orthant integral of prod xi_i^{u_i-1} / (1 + sum xi)^omega vs gamma form.

    Returns (numeric, gamma_form) with gamma_form =
    prod Gamma(u_i) * Gamma(omega - sum u_i) / Gamma(omega).  Convergence at
    infinity needs Re(omega - sum u_i) > 0 (the printed hypothesis
    omega > max Re u_i is weaker than the integral actually requires);
    violation raises DivergentIntegralError.
    """
    u = [complex(v) for v in u]
    p = len(u)
    if p > 3:
        raise ValueError("numeric Dirichlet integral implemented for p <= 3")
    if any(v.real <= 0 for v in u):
        raise DivergentIntegralError(f"all Re u_i must be positive, got {u}")
    rest = omega - sum(u)
    if rest.real <= 0:
        raise DivergentIntegralError(
            f"Re(omega - sum u_i) = {rest.real:g} <= 0: integral diverges at infinity")

    def log_integrand(L: list[np.ndarray]) -> np.ndarray:
        acc = (-omega) * log_one_plus_sum_exp(L)
        for uv, Li in zip(u, L):
            acc = acc + (uv - 1.0) * Li
        return acc

    numeric, _, _ = integrate_orthant_log(
        log_integrand, p, rel_tol=tol / 3.0,
        max_level={1: 7, 2: 6, 3: 5}[p])
    total = sum(log_gamma(v) for v in u) + log_gamma(rest) - log_gamma(omega)
    return numeric, cmath.exp(total)


def i0_ii_decomposition_check(
    u_list: Sequence[float],
    alpha: float,
    shape: Shape,
    tol: float = 1e-12,
) -> float:
    """Verify the decomposition I = I_0 + I_1 + ... + I_p of the forward transform.

    I_0 carries the constant of the (1 + sum (n_i/n) xi_i) factor and each
    I_i one Euler-weighted term; the gamma recurrence collapses them to
    I_i = (n_i u_i)/(n u) * I_0 and the total to (alpha/(n u)) * I_0, which
    equals the gamma-ratio kernel.  Returns the worst relative error over
    those identities, all evaluated through log-gamma.
    """
    n, exps = shape
    u_list = [float(v) for v in u_list]
    u = alpha / n - sum((e / n) * uv for e, uv in zip(exps, u_list))
    if u <= 0 or any(v <= 0 for v in u_list):
        raise DivergentIntegralError(
            f"inadmissible parameters: u={u:g}, u_i={u_list}")
    omega = u + math.fsum(u_list) + 1.0

    def ratio(nums, dens):
        return math.exp(sum(log_gamma(v).real for v in nums)
                        - sum(log_gamma(v).real for v in dens))

    # I_0 via Gamma(omega - sum u_i) = Gamma(u + 1)
    i0_a = ratio([omega - math.fsum(u_list), *u_list], [omega])
    i0_b = ratio([u + 1.0, *u_list], [omega])
    worst = abs(i0_a - i0_b) / abs(i0_b)

    total = i0_b
    for i, (e, uv) in enumerate(zip(exps, u_list)):
        nums = [omega - math.fsum(u_list) - 1.0]
        nums += [u_list[j] + (1.0 if j == i else 0.0) for j in range(len(u_list))]
        ii_direct = (e / n) * ratio(nums, [omega])
        ii_reduced = (e * uv) / (n * u) * i0_b
        worst = max(worst, abs(ii_direct - ii_reduced) / abs(ii_reduced))
        total += ii_direct

    closed = alpha / (n * u) * i0_b
    worst = max(worst, abs(total - closed) / abs(closed))

    kernel_rhs = (alpha / n) * ratio([u, *u_list], [omega])
    worst = max(worst, abs(total - kernel_rhs) / abs(kernel_rhs))
    return worst
