"""Tests for the forward transform identity and the contour-integral solver."""

import cmath
import math

import numpy as np
import pytest

from mellinroots import (ConvergenceConditionError, Problem, QuadratureError,
                         default_contour, forward_mellin_check, kernel,
                         kernel_value, principal_root, principal_root_mb,
                         principal_root_param, quadratic_mb_check)
from mellinroots.mellin import Contour, MellinParams

# frozen 40-digit reference values
KERNEL_A1_U05 = 3.496076739056159747286452786521492551577   # (1/2)G(.25)G(.5)/G(1.75)
FORWARD_RHS_A3_U05 = 1.498318602452639891694194051366353950676
QUAD_CLOSED = {
    0.1: 0.9512492197250392863848606074161302710743,
    0.2: 0.9049875621120890270219264912759576186945,
    0.5: 0.7807764064044151374553524639935192562868,
    1.0: 0.6180339887498948482045868343656381177203,
    2.0: 0.4142135623730950488016887242096980785697,
}


def test_kernel_frozen_values():
    params = MellinParams.for_shape((2, (1,)), 1.0, [0.5])
    assert params.u == pytest.approx(0.25)
    assert kernel(params, (2, (1,))).real == pytest.approx(KERNEL_A1_U05, rel=1e-13)

    params = MellinParams.for_shape((2, (1,)), 2.0, [1.0])
    assert params.u == pytest.approx(0.5)
    assert kernel(params, (2, (1,))).real == pytest.approx(4.0 / 3.0, rel=1e-13)


def test_kernel_conjugate_symmetry():
    shape = (3, (2, 1))
    u = [0.4 + 0.7j, 0.6 - 0.2j]
    a = kernel_value(shape, 2.0, u)
    b = kernel_value(shape, 2.0, [v.conjugate() for v in u])
    assert b == pytest.approx(a.conjugate(), rel=1e-13)


def test_params_validation():
    with pytest.raises(ConvergenceConditionError):
        MellinParams.for_shape((2, (1,)), 1.0, [3.0])       # Re u < 0
    with pytest.raises(ConvergenceConditionError):
        MellinParams.for_shape((2, (1,)), 1.0, [-0.5])      # Re u_1 < 0
    with pytest.raises(ConvergenceConditionError):
        MellinParams.for_shape((2, (1,)), -1.0, [0.5])


def test_forward_check_frozen_p1():
    shape = (2, (1,))
    params = MellinParams.for_shape(shape, 3.0, [0.5])
    lhs, rhs = forward_mellin_check(shape, params, tol=1e-8)
    assert rhs.real == pytest.approx(FORWARD_RHS_A3_U05, rel=1e-13)
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


def test_forward_check_exact_p1():
    # n=3, alpha=4, u1=1: u = 1, rhs = (4/3) Gamma(1)^2 / Gamma(3) = 2/3
    shape = (3, (1,))
    params = MellinParams.for_shape(shape, 4.0, [1.0])
    lhs, rhs = forward_mellin_check(shape, params, tol=1e-8)
    assert rhs.real == pytest.approx(2.0 / 3.0, rel=1e-13)
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


def test_forward_check_p2():
    shape = (3, (2, 1))
    params = MellinParams.for_shape(shape, 9.0, [0.7, 0.6])
    lhs, rhs = forward_mellin_check(shape, params, tol=1e-6)
    assert abs(lhs - rhs) <= 1e-5 * abs(rhs)


def test_forward_check_rejects_p3():
    shape = (5, (3, 2, 1))
    params = MellinParams.for_shape(shape, 9.0, [0.5, 0.5, 0.5])
    with pytest.raises(ValueError):
        forward_mellin_check(shape, params)


def test_mb_quadratic_unit():
    problem = Problem(2, [1], [1.0])
    res = principal_root_mb(problem, alpha=1.0)
    assert abs(res.value.real - QUAD_CLOSED[1.0]) <= max(1e-8, res.err_estimate)
    assert abs(res.value.imag) <= res.err_estimate


def test_mb_quadratic_alpha2():
    problem = Problem(2, [1], [0.5])
    res = principal_root_mb(problem, alpha=2.0)
    assert abs(res.value.real - QUAD_CLOSED[0.5] ** 2) <= max(1e-8, res.err_estimate)


def test_mb_p2_matches_param():
    problem = Problem(3, [2, 1], [0.3, 0.4])
    res = principal_root_mb(problem, alpha=1.0)
    assert abs(res.value.real - principal_root_param(problem)) <= max(1e-6, res.err_estimate)


def test_mb_power_consistency():
    problem = Problem(3, [1], [0.7])
    r1 = principal_root_mb(problem, alpha=1.0)
    r2 = principal_root_mb(problem, alpha=2.0)
    combined = r2.err_estimate + 2.0 * abs(r1.value) * r1.err_estimate + r1.err_estimate ** 2
    assert abs(r2.value - r1.value ** 2) <= max(1e-9, combined)


def test_mb_contour_independence():
    problem = Problem(2, [1], [0.8])
    base = default_contour(problem, 1.0)
    shifted = Contour(abscissas=(base.abscissas[0] * 0.6,),
                      height=base.height, nodes_per_line=base.nodes_per_line)
    r1 = principal_root_mb(problem, contour=base)
    r2 = principal_root_mb(problem, contour=shifted)
    assert abs(r1.value - r2.value) <= r1.err_estimate + r2.err_estimate + 1e-9


def test_mb_imaginary_part_vanishes_full_grid():
    for problem in [Problem(2, [1], [0.6]), Problem(4, [3, 1], [0.5, 1.1])]:
        res = principal_root_mb(problem, alpha=1.0, _full_grid=True)
        assert abs(res.value.imag) <= res.err_estimate


def _continued_root(n, n1, x):
    """Principal branch at complex x via Newton homotopy along the argument."""
    z = complex(principal_root(Problem(n, [n1], [abs(x)])))
    phase = cmath.phase(x)
    for k in range(1, 41):
        xt = abs(x) * cmath.exp(1j * phase * k / 40.0)
        for _ in range(60):
            f = z ** n + xt * z ** n1 - 1.0
            df = n * z ** (n - 1) + n1 * xt * z ** (n1 - 1)
            step = f / df
            z -= step
            if abs(step) <= 1e-15 * max(1.0, abs(z)):
                break
    return z


def test_mb_complex_coefficient_in_sector():
    # p = 1: arg(x) strictly inside (-n1 pi / 2n, n1 pi / 2n)
    for n, n1, r, frac in [(2, 1, 0.9, 0.5), (3, 2, 1.2, -0.6), (5, 3, 0.4, 0.3)]:
        x = r * cmath.exp(1j * frac * n1 * math.pi / (2.0 * n))
        problem = Problem(n, [n1], [r])
        res = principal_root_mb(problem, alpha=1.0, coeffs=[x])
        ref = _continued_root(n, n1, x)
        assert abs(res.value - ref) <= max(1e-6, res.err_estimate)


def test_mb_rejects_out_of_sector():
    problem = Problem(2, [1], [1.0])
    x = cmath.exp(1j * 0.6 * math.pi)  # |arg| > pi/4
    with pytest.raises(ConvergenceConditionError):
        principal_root_mb(problem, coeffs=[x])


def test_mb_rejects_zero_coefficient():
    with pytest.raises(ConvergenceConditionError):
        principal_root_mb(Problem(3, [2, 1], [0.0, 1.0]))


def test_mb_rejects_p3():
    with pytest.raises(ValueError):
        principal_root_mb(Problem(5, [3, 2, 1], [0.5, 0.5, 0.5]))


def test_contour_constraint_violation():
    problem = Problem(2, [1], [1.0])
    bad = Contour(abscissas=(1.5,), height=20.0, nodes_per_line=101)
    with pytest.raises(ConvergenceConditionError):
        principal_root_mb(problem, alpha=1.0, contour=bad)
    with pytest.raises(ConvergenceConditionError):
        Contour(abscissas=(-0.5,), height=20.0, nodes_per_line=101)


def test_mb_tol_enforcement():
    problem = Problem(2, [1], [1.0])
    coarse = Contour(abscissas=(0.5,), height=3.0, nodes_per_line=11)
    with pytest.raises(QuadratureError):
        principal_root_mb(problem, contour=coarse, tol=1e-10)


def test_mb_deterministic():
    problem = Problem(3, [2, 1], [0.4, 0.9])
    r1 = principal_root_mb(problem, alpha=2.0)
    r2 = principal_root_mb(problem, alpha=2.0)
    assert r1.value == r2.value and r1.err_estimate == r2.err_estimate


@pytest.mark.parametrize("x", [0.1, 0.2, 0.5, 1.0, 2.0])
def test_quadratic_mb_frozen_grid(x):
    mb, closed = quadratic_mb_check(x, tol=1e-8)
    assert closed == pytest.approx(QUAD_CLOSED[x], rel=1e-15)
    assert abs(mb - closed) <= 1e-8


def test_quadratic_mb_small_x_limit():
    mb, _ = quadratic_mb_check(1e-4, tol=1e-8)
    assert abs(mb - 1.0) <= 1e-3


def test_quadratic_mb_rejects_nonpositive():
    with pytest.raises(ValueError):
        quadratic_mb_check(-1.0)
