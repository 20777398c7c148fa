"""The parametric change of variables x_i = xi_i * W^{n_i/n - 1}, W = 1 + sum(xi).

Under this substitution the principal root is simply Z = W^{-1/n}, so
inverting the map on the positive orthant solves the equation.  The
inversion reduces to one scalar level equation in s = sum(xi): on each
level set the map is linear, so s is the only unknown.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import RootConvergenceError
from .oracle import Problem

__all__ = [
    "ParamPoint", "psi_forward", "psi_forward_complex", "jacobian_det",
    "psi_inverse", "principal_root_param",
]

Shape = tuple[int, tuple[int, ...]]

_MAX_NEWTON = 300


@dataclass(frozen=True)
class ParamPoint:
    """A point xi in [0, inf)^p together with s = sum(xi) and W = 1 + s."""

    xi: tuple[float, ...]
    s: float
    W: float

    @classmethod
    def from_xi(cls, xi: Sequence[float]) -> "ParamPoint":
        xi = tuple(float(v) for v in xi)
        if any(v < 0 for v in xi):
            raise ValueError(f"xi must be nonnegative, got {xi}")
        s = math.fsum(xi)
        return cls(xi=xi, s=s, W=1.0 + s)

    def __post_init__(self):
        if abs(self.s - math.fsum(self.xi)) > 1e-14 * (1.0 + abs(self.s)):
            raise ValueError("s is not the sum of xi")
        if self.W != 1.0 + self.s or self.W < 1.0:
            raise ValueError("W must equal 1 + s and be >= 1")


def _check_shape(shape: Shape, p: int) -> tuple[int, tuple[int, ...]]:
    n, exps = shape
    exps = tuple(int(e) for e in exps)
    if len(exps) != p:
        raise ValueError(f"shape has {len(exps)} exponents but point has {p} components")
    Problem(n, exps, (0.0,) * len(exps))  # reuse exponent validation
    return int(n), exps


def psi_forward(point: ParamPoint, shape: Shape) -> tuple[float, ...]:
    """Map xi to coefficients: x_i = xi_i * (1+s)^{n_i/n - 1}."""
    n, exps = _check_shape(shape, len(point.xi))
    W = point.W
    return tuple(v * W ** (e / n - 1.0) for v, e in zip(point.xi, exps))


def psi_forward_complex(xi: complex, shape: Shape) -> complex:
    """Complex-domain map for p = 1, on C minus {xi : 1 + xi <= 0}.

    Uses the branch of W^{1/n} that equals 1 at xi = 0 (principal powers).
    """
    n, exps = _check_shape(shape, 1)
    W = 1.0 + complex(xi)
    if W.imag == 0.0 and W.real <= 0.0:
        raise ValueError(f"xi = {xi} lies on the excluded set (1 + xi <= 0)")
    return xi * cmath.exp((exps[0] / n - 1.0) * cmath.log(W))


def jacobian_det(point: ParamPoint, shape: Shape) -> float:
    """Closed-form Jacobian determinant of the map at xi.

    (1+s)^{(n_1+...+n_p)/n - p - 1} * (1 + (1/n) sum n_k xi_k); strictly
    positive on the orthant.
    """
    n, exps = _check_shape(shape, len(point.xi))
    p = len(exps)
    W = point.W
    corr = 1.0 + math.fsum(e * v for e, v in zip(exps, point.xi)) / n
    return W ** (sum(exps) / n - p - 1.0) * corr


def _level_gap(s: float, coeffs, expo) -> float:
    # g(s) = s - sum x_i (1+s)^{1 - n_i/n}
    return math.fsum([s] + [-c * (1.0 + s) ** b for c, b in zip(coeffs, expo)])


def psi_inverse(coeffs: Sequence[float], shape: Shape) -> ParamPoint:
    """Unique xi >= 0 with psi_forward(xi) = coeffs.

    Solves the scalar level equation g(s) = s - sum x_i (1+s)^{1-n_i/n} = 0
    by bracketed Newton (g(0) <= 0 and g -> +inf), then back-substitutes
    xi_i = x_i (1+s)^{1-n_i/n}.
    """
    coeffs = tuple(float(c) for c in coeffs)
    n, exps = _check_shape(shape, len(coeffs))
    if any(c < 0 for c in coeffs):
        raise ValueError(f"coefficients must be nonnegative, got {coeffs}")
    if all(c == 0.0 for c in coeffs):
        return ParamPoint(xi=(0.0,) * len(coeffs), s=0.0, W=1.0)

    expo = tuple(1.0 - e / n for e in exps)  # each in (0, 1)
    total = math.fsum(coeffs)

    # initial bracket: g(0) = -sum(x) <= 0; expand hi geometrically until g > 0
    lo = 0.0
    try:
        guess = total ** (n / (n - exps[0]))
    except OverflowError:
        guess = 1e300
    hi = max(1.0, min(guess, 1e300) + 2.0 * total)
    for _ in range(200):
        if _level_gap(hi, coeffs, expo) > 0.0:
            break
        hi *= 4.0
    else:
        raise RootConvergenceError("could not bracket the level equation")

    s = min(hi, total)
    for _ in range(_MAX_NEWTON):
        g = _level_gap(s, coeffs, expo)
        if g > 0.0:
            hi = s
        elif g < 0.0:
            lo = s
        if abs(g) <= 1e-14 * (1.0 + s):
            break
        dg = 1.0 - math.fsum(c * b * (1.0 + s) ** (b - 1.0)
                             for c, b in zip(coeffs, expo))
        s_new = s - g / dg if dg > 0.0 else 0.5 * (lo + hi)
        if not lo < s_new < hi:
            s_new = 0.5 * (lo + hi)
        if abs(s_new - s) <= 1e-16 * (1.0 + abs(s)):
            s = s_new
            break
        s = s_new
    else:
        raise RootConvergenceError(
            f"level equation did not converge for coeffs={coeffs}")

    xi = tuple(c * (1.0 + s) ** b for c, b in zip(coeffs, expo))
    s_val = math.fsum(xi)
    return ParamPoint(xi=xi, s=s_val, W=1.0 + s_val)


def principal_root_param(problem: Problem) -> float:
    """Principal root as (1 + s)^{-1/n} with s from the inverted map."""
    point = psi_inverse(problem.coeffs, problem.shape)
    return point.W ** (-1.0 / problem.n)
