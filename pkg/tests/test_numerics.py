"""Tests for the scalar substrate: log-gamma, Pochhammer, branches, duals."""

import cmath
import math
import random

import pytest

from bergkern import (BranchError, dual_const, dual_var, log_gamma,
                      pochhammer, principal_pow, principal_sqrt)


def rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


def test_log_gamma_known_values():
    assert log_gamma(1.0) == 0.0
    assert rel(log_gamma(5.0), math.log(24.0)) < 1e-14
    assert rel(log_gamma(0.5), math.log(math.sqrt(math.pi))) < 1e-14


def test_log_gamma_wide_range_against_product():
    # Gamma(x+n) = (x)_n Gamma(x) lets the product extend a trusted small value.
    for x, n in [(1.0, 10), (0.5, 20), (1e-3, 5), (2.25, 40)]:
        lhs = log_gamma(x + n)
        rhs = log_gamma(x) + math.log(pochhammer(x, n))
        assert rel(lhs, rhs) < 1e-13


def test_log_gamma_domain_error():
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(-1.5)


def test_pochhammer_basics():
    assert pochhammer(3.7, 0) == 1.0
    assert pochhammer(2.0, 3) == 24.0
    assert pochhammer(-2.0, 5) == 0.0  # zero crossing is exact


def test_pochhammer_doubling_spot():
    # (2z)_{2k} = 4^k (z)_k (z+1/2)_k at z=1, k=2: both sides 120
    assert pochhammer(2.0, 4) == 120.0
    assert 4**2 * pochhammer(1.0, 2) * pochhammer(1.5, 2) == 120.0


def test_pochhammer_split_identity():
    rng = random.Random(7)
    for _ in range(300):
        a = rng.uniform(-5.0, 5.0)
        n = rng.randrange(0, 40)
        k = rng.randrange(0, 40)
        lhs = pochhammer(a, n + k)
        rhs = pochhammer(a, n) * pochhammer(a + n, k)
        if rhs == 0.0:
            assert lhs == 0.0
        else:
            assert rel(lhs, rhs) < 1e-12


def test_pochhammer_large_m_gamma_ratio_path():
    # the m > 64 branch must agree in log with the direct product
    for a in (0.5, 1.5, 3.25):
        for m in (65, 100, 150):
            direct = sum(math.log(a + k) for k in range(m))
            assert abs(math.log(pochhammer(a, m)) - direct) < 1e-11


def test_principal_sqrt_values():
    assert principal_sqrt(1.0) == 1.0
    assert rel(principal_sqrt(0.6), math.sqrt(0.6)) < 1e-15
    assert principal_sqrt(complex(4.0, 0.0)).real == 2.0


def test_principal_sqrt_squares_back():
    rng = random.Random(11)
    for _ in range(200):
        mag = 10.0 ** rng.uniform(-6, 6)
        ang = rng.uniform(-math.pi / 2 + 0.01, math.pi / 2 - 0.01)
        w = cmath.rect(mag, ang)  # right half-plane
        r = principal_sqrt(w)
        assert rel(r * r, w) < 1e-14


def test_principal_pow_values_and_branch_error():
    # (1 + sqrt(1-4*nu3))^(2/p) at nu3=0, p=2: base 2, exponent 1
    assert rel(principal_pow(2.0 + 0j, 1.0), 2.0) < 1e-15
    assert rel(principal_pow(2.0 + 0j, 0.5), math.sqrt(2.0)) < 1e-15
    with pytest.raises(BranchError):
        principal_pow(-1.0 + 0j, 0.5)
    with pytest.raises(BranchError):
        principal_pow(0.0 + 1j, 0.5)


def test_dual_constant_and_power_rule():
    c = dual_const(3.0 - 2.0j)
    assert c.grad == (0j, 0j, 0j, 0j)
    nu1 = dual_var(0.3 + 0.1j, 0)
    sq = nu1 * nu1
    assert sq.val == (0.3 + 0.1j) ** 2
    assert rel(sq.grad[0], 2 * (0.3 + 0.1j)) < 1e-15
    assert sq.grad[1] == 0j


def test_dual_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        dual_var(1.0, 0) / dual_const(0.0)
    with pytest.raises(ZeroDivisionError):
        1.0 / dual_const(0.0)


def _fd_gradient(f, nu, h=1e-5):
    grads = []
    for j in range(4):
        up = list(nu)
        dn = list(nu)
        up[j] += h
        dn[j] -= h
        grads.append((f(up) - f(dn)) / (2 * h))
    return grads


def _compound(nu):
    # holomorphic expression exercising sqrt, pow, quotient, product rules
    n1, n2, n3, n4 = nu
    w = principal_sqrt(1 - 4 * n3)
    return w * (1 + n1) / (1 - n4) + principal_pow(1 + n2, 2.5) - n1 * n2 * n4


def test_dual_sqrt_gradient_matches_finite_difference():
    nu = (0.0, 0.0, 0.05, 0.0)
    dual = principal_sqrt(1 - 4 * dual_var(0.05, 2))
    fd = _fd_gradient(lambda v: principal_sqrt(1 - 4 * complex(v[2])), nu)
    assert rel(dual.grad[2], fd[2]) < 1e-8


def test_dual_gradient_property_100_points():
    rng = random.Random(42)
    for _ in range(100):
        nu = tuple(complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)) for _ in range(4))
        duals = [dual_var(v, j) for j, v in enumerate(nu)]
        out = _compound(duals)
        fd = _fd_gradient(_compound, nu)
        for j in range(4):
            assert rel(out.grad[j], fd[j]) < 1e-6
