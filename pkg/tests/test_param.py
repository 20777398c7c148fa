"""Tests for the parametric map, its Jacobian, and the level-equation inverse."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mellinroots import (ParamPoint, Problem, jacobian_det, principal_root,
                         principal_root_param, psi_forward, psi_forward_complex,
                         psi_inverse)


def test_param_point_invariants():
    pt = ParamPoint.from_xi([1.0, 2.0])
    assert pt.s == 3.0 and pt.W == 4.0
    with pytest.raises(ValueError):
        ParamPoint.from_xi([-1.0])
    with pytest.raises(ValueError):
        ParamPoint(xi=(1.0,), s=2.0, W=3.0)  # s != sum(xi)


def test_forward_fixed_point():
    assert psi_forward(ParamPoint.from_xi([0.0, 0.0]), (3, (2, 1))) == (0.0, 0.0)


def test_forward_quadratic():
    # xi = 3, n = 2: x = 3 * 4^(-1/2) = 1.5
    x = psi_forward(ParamPoint.from_xi([3.0]), (2, (1,)))
    assert x[0] == pytest.approx(1.5, rel=1e-15)


def test_forward_two_vars():
    x = psi_forward(ParamPoint.from_xi([1.0, 1.0]), (3, (2, 1)))
    assert x[0] == pytest.approx(3.0 ** (-1.0 / 3.0), rel=1e-14)
    assert x[1] == pytest.approx(3.0 ** (-2.0 / 3.0), rel=1e-14)


def test_jacobian_at_zero():
    assert jacobian_det(ParamPoint.from_xi([0.0, 0.0, 0.0]), (5, (4, 2, 1))) == 1.0


def test_jacobian_quadratic_closed_value():
    # 4^(1/2 - 2) * (1 + 3/2) = 0.3125
    got = jacobian_det(ParamPoint.from_xi([3.0]), (2, (1,)))
    assert got == pytest.approx(0.3125, rel=1e-14)


def _fd_jacobian(xi, shape):
    p = len(xi)
    J = np.empty((p, p))
    for j in range(p):
        h = 5e-6 * (1.0 + abs(xi[j]))
        up = list(xi)
        dn = list(xi)
        up[j] += h
        dn[j] -= h
        fp = psi_forward(ParamPoint.from_xi(up), shape)
        fm = psi_forward(ParamPoint.from_xi(dn), shape)
        J[:, j] = (np.asarray(fp) - np.asarray(fm)) / (2.0 * h)
    return float(np.linalg.det(J))


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(20)
    for _ in range(200):
        p = int(rng.integers(1, 5))
        n = int(rng.integers(p + 1, 9))
        exps = np.sort(rng.choice(np.arange(1, n), size=p, replace=False))[::-1]
        xi = rng.uniform(0.0, 5.0, size=p)
        shape = (n, tuple(int(e) for e in exps))
        closed = jacobian_det(ParamPoint.from_xi(xi), shape)
        assert closed > 0.0
        assert abs(closed - _fd_jacobian(list(xi), shape)) <= 1e-6 * abs(closed)


def test_inverse_fixed_point():
    pt = psi_inverse([0.0, 0.0], (4, (3, 1)))
    assert pt.xi == (0.0, 0.0) and pt.s == 0.0 and pt.W == 1.0


def test_inverse_quadratic_closed_value():
    # x = 1.5 (n=2): s^2 = 2.25 (1+s) has positive root s = 3
    pt = psi_inverse([1.5], (2, (1,)))
    assert pt.s == pytest.approx(3.0, rel=1e-13)
    assert pt.xi[0] == pytest.approx(3.0, rel=1e-13)


def test_inverse_matches_quadratic_closed_form():
    # p = 1, n = 2: psi^-1(z) = -1 + (z/2 + sqrt(1 + (z/2)^2))^2
    rng = np.random.default_rng(21)
    for z in rng.uniform(0.0, 50.0, size=200):
        pt = psi_inverse([z], (2, (1,)))
        expected = -1.0 + (z / 2.0 + math.sqrt(1.0 + (z / 2.0) ** 2)) ** 2
        assert pt.xi[0] == pytest.approx(expected, rel=1e-11)


def test_round_trip_bulk():
    rng = np.random.default_rng(22)
    for _ in range(10_000):
        p = int(rng.integers(1, 7))
        n = int(rng.integers(p + 1, 13))
        exps = np.sort(rng.choice(np.arange(1, n), size=p, replace=False))[::-1]
        shape = (n, tuple(int(e) for e in exps))
        xi = rng.uniform(0.0, 100.0, size=p)
        x = psi_forward(ParamPoint.from_xi(xi), shape)
        back = psi_inverse(x, shape)
        for a, b in zip(back.xi, xi):
            assert abs(a - b) <= 1e-11 * (1.0 + abs(b))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0.0, 50.0), min_size=1, max_size=3))
def test_round_trip_property(xi):
    p = len(xi)
    shape = (p + 2, tuple(range(p + 1, 1, -1)))
    x = psi_forward(ParamPoint.from_xi(xi), shape)
    back = psi_inverse(x, shape)
    for a, b in zip(back.xi, xi):
        assert abs(a - b) <= 1e-10 * (1.0 + abs(b))


def test_substitution_identity():
    # x = psi(xi) and Z = W^(-1/n) satisfy the equation to near machine precision
    rng = np.random.default_rng(23)
    for _ in range(2000):
        p = int(rng.integers(1, 7))
        n = int(rng.integers(p + 1, 13))
        exps = np.sort(rng.choice(np.arange(1, n), size=p, replace=False))[::-1]
        shape = (n, tuple(int(e) for e in exps))
        pt = ParamPoint.from_xi(rng.uniform(0.0, 100.0, size=p))
        x = psi_forward(pt, shape)
        z = pt.W ** (-1.0 / n)
        assert abs(Problem(n, exps, x).residual(z)) <= 1e-13


def test_level_set_preservation():
    # forward images satisfy sum x_i (1+s)^(1 - n_i/n) = s
    rng = np.random.default_rng(24)
    for _ in range(500):
        p = int(rng.integers(1, 5))
        n = int(rng.integers(p + 1, 10))
        exps = np.sort(rng.choice(np.arange(1, n), size=p, replace=False))[::-1]
        shape = (n, tuple(int(e) for e in exps))
        pt = ParamPoint.from_xi(rng.uniform(0.0, 20.0, size=p))
        x = psi_forward(pt, shape)
        s = math.fsum(xv * pt.W ** (1.0 - e / n) for xv, e in zip(x, exps))
        assert s == pytest.approx(pt.s, rel=1e-12, abs=1e-12)


def test_principal_root_param_examples():
    assert principal_root_param(Problem(4, [2, 1], [0.0, 0.0])) == pytest.approx(1.0, abs=1e-15)
    assert principal_root_param(Problem(2, [1], [1.5])) == pytest.approx(0.5, abs=1e-14)


def test_principal_root_param_matches_oracle():
    rng = np.random.default_rng(25)
    for _ in range(500):
        p = int(rng.integers(1, 6))
        n = int(rng.integers(p + 1, 13))
        exps = np.sort(rng.choice(np.arange(1, n), size=p, replace=False))[::-1]
        problem = Problem(n, exps, rng.uniform(0.0, 10.0, size=p))
        assert abs(principal_root_param(problem) - principal_root(problem)) <= 1e-12


def test_complex_map_conformal_identity():
    # psi(-1 + e^(s+it)) = 2 sinh((s+it)/2) for the quadratic shape
    rng = np.random.default_rng(26)
    for _ in range(200):
        s = rng.uniform(-3.0, 3.0)
        t = rng.uniform(-math.pi + 1e-6, math.pi - 1e-6)
        w = complex(s, t)
        got = psi_forward_complex(-1.0 + cmath.exp(w), (2, (1,)))
        assert abs(got - 2.0 * cmath.sinh(w / 2.0)) <= 1e-12


def test_complex_map_rejects_cut():
    with pytest.raises(ValueError):
        psi_forward_complex(-2.0 + 0.0j, (2, (1,)))
