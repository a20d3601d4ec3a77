"""Integral-operator assembly and the boundary equation solver.

The strongest checks are closed forms on circles and analytic test
functions whose densities are known exactly.
"""

import numpy as np
import pytest

from conforminv.curves import make_amoeba, make_ellipse, make_polygon
from conforminv.kernel import (ConvergenceError, SolveConfig, apply_M,
                               apply_N, bounded_context, conjugate_periodic,
                               kernel_M1, kernel_N, solve_neumann_system,
                               unbounded_context)

INV_2PI = 1.0 / (2.0 * np.pi)


# ----------------------------------------------------- circle closed forms

def test_circle_matrices_closed_form(circle):
    # bounded, alpha = 0: N is the constant -1/(2 pi) and M1 vanishes;
    # at larger n the cotangent cancellation grows like n * eps, so the
    # tight entrywise bound is asserted on a small grid
    ctx = bounded_context(circle(16), 0.0)
    N, M1 = ctx.matrices()
    assert np.max(np.abs(N + INV_2PI)) <= 1e-14
    assert np.max(np.abs(M1)) <= 1e-14


def test_circle_matrices_closed_form_larger_n(circle):
    ctx = bounded_context(circle(256), 0.0)
    N, M1 = ctx.matrices()
    assert np.max(np.abs(N + INV_2PI)) <= 256 * 1e-14
    assert np.max(np.abs(M1)) <= 256 * 1e-13


def test_circle_unbounded_closed_form(circle):
    # clockwise circle with A = 1 gives the same constant kernel
    ctx = unbounded_context(circle(16, kind="exterior"))
    N, M1 = ctx.matrices()
    assert np.max(np.abs(N + INV_2PI)) <= 1e-14
    assert np.max(np.abs(M1)) <= 1e-14


def test_apply_N_circle_is_minus_mean(circle):
    ctx = bounded_context(circle(64), 0.0)
    t = ctx.curve.t
    np.testing.assert_allclose(apply_N(ctx, np.cos(t)), 0.0, atol=1e-13)
    np.testing.assert_allclose(apply_N(ctx, np.ones(64)), -1.0, atol=1e-13)
    rho = 2.0 + np.sin(3.0 * t)
    np.testing.assert_allclose(apply_N(ctx, rho), -np.mean(rho), atol=1e-13)


def test_apply_M_circle_is_conjugation(circle):
    ctx = bounded_context(circle(64), 0.0)
    t = ctx.curve.t
    np.testing.assert_allclose(apply_M(ctx, np.cos(t)), -np.sin(t), atol=1e-13)
    np.testing.assert_allclose(apply_M(ctx, np.sin(t)), np.cos(t), atol=1e-13)


# ------------------------------------------------------- row-sum structure

def test_row_sums_enforced_everywhere():
    # the diagonals are defined to make w * row sums exactly -1 (N) and 0
    # (M1); this must hold on cornered curves too
    curve = make_polygon([0.0, 2.0, 2.0 + 1.0j, 1.0j], 32)
    ctx = bounded_context(curve, 1.0 + 0.4j)
    N, M1 = ctx.matrices()
    w = curve.weight
    np.testing.assert_allclose(w * N.sum(axis=1), -1.0, atol=1e-12)
    np.testing.assert_allclose(w * M1.sum(axis=1), 0.0, atol=1e-12)
    # corner columns decouple: eta' = 0 kills the column factor (the
    # diagonal entry is exempt, it carries the row-sum defect)
    for c in curve.corners:
        off = np.delete(N[:, c], c)
        assert np.all(off == 0.0)


def test_rowsum_diagonal_matches_analytic_limit_on_smooth_curves():
    # on a smooth curve the row-sum diagonal and the pointwise limit agree
    # up to the (superalgebraically small) trapezoidal error
    curve = make_ellipse(1.0, 0.5, 256, "interior")
    ctx = bounded_context(curve, 0.2 + 0.1j)
    N, M1 = ctx.matrices()
    for i in (0, 17, 100, 255):
        assert abs(N[i, i] - kernel_N(ctx, i, i)) < 1e-10
        assert abs(M1[i, i] - kernel_M1(ctx, i, i)) < 1e-10


def test_scalar_kernels_match_matrices_off_diagonal():
    curve = make_amoeba(128)
    ctx = bounded_context(curve, 0.3 + 0.2j)
    N, M1 = ctx.matrices()
    rng = np.random.default_rng(7)
    for _ in range(40):
        i, j = (int(v) for v in rng.integers(0, 128, size=2))
        if i == j:
            continue
        # agreement up to the reassociation of the identical formulas
        assert abs(N[i, j] - kernel_N(ctx, i, j)) < 1e-14
        assert abs(M1[i, j] - kernel_M1(ctx, i, j)) < 1e-12


# -------------------------------------------------------- conjugation

def test_conjugate_periodic_multiplier():
    n = 64
    t = 2.0 * np.pi * np.arange(n) / n
    np.testing.assert_allclose(conjugate_periodic(np.cos(2 * t)), np.sin(2 * t),
                               atol=1e-13)
    np.testing.assert_allclose(conjugate_periodic(np.sin(5 * t)), -np.cos(5 * t),
                               atol=1e-13)
    # mean and Nyquist modes are annihilated
    np.testing.assert_allclose(conjugate_periodic(np.ones(n)), 0.0, atol=1e-15)
    np.testing.assert_allclose(conjugate_periodic(np.cos(32 * t)), 0.0, atol=1e-13)
    with pytest.raises(ValueError):
        conjugate_periodic(np.ones(9))


# ----------------------------------------------------------- full solves

def test_solve_analytic_data_bounded():
    # gamma = Re(A g) with g analytic inside forces rho = Im(A g), h = 0
    curve = make_ellipse(1.0, 0.6, 512, "interior")
    alpha = 0.3 + 0.1j
    ctx = bounded_context(curve, alpha)
    ag = (curve.eta - alpha) * (curve.eta ** 2 - curve.eta)
    sol = solve_neumann_system(ctx, ag.real)
    np.testing.assert_allclose(sol.rho, ag.imag, atol=1e-12)
    assert abs(sol.h) < 1e-13
    assert sol.h_spread < 1e-12
    assert sol.residual <= 1e-13


def test_solve_analytic_data_unbounded():
    # gamma = Re(f) with f analytic at infinity and f(inf) = 0 gives
    # rho = Im(f), h = 0
    curve = make_ellipse(2.0, 1.0, 512, "exterior")
    ctx = unbounded_context(curve)
    f = 1.0 / curve.eta
    sol = solve_neumann_system(ctx, f.real)
    np.testing.assert_allclose(sol.rho, f.imag, atol=1e-12)
    assert abs(sol.h) < 1e-13


def test_solve_circle_log_data(circle):
    # disk of radius 2 about alpha = 0: gamma = -log|eta| is constant, so
    # the map is the identity scaled by 1/2 and h = log 2
    cv = circle(128, radius=2.0)
    ctx = bounded_context(cv, 0.0)
    sol = solve_neumann_system(ctx, -np.log(np.abs(cv.eta)))
    np.testing.assert_allclose(sol.rho, 0.0, atol=1e-13)
    assert abs(sol.h - np.log(2.0)) < 1e-14
    assert sol.residual <= 1e-8


def test_dense_direct_matches_gmres():
    curve = make_ellipse(1.0, 0.4, 256, "interior")
    ctx = bounded_context(curve, 0.1 + 0.05j)
    gamma = -np.log(np.abs(ctx.A))
    it = solve_neumann_system(ctx, gamma, SolveConfig())
    de = solve_neumann_system(ctx, gamma, SolveConfig(dense_direct=True))
    np.testing.assert_allclose(it.rho, de.rho, atol=1e-12)
    assert abs(it.h - de.h) < 1e-13
    assert de.gmres_iters == 0


def test_gmres_iteration_cap_raises():
    curve = make_polygon([0.0, 2.0, 2.0 + 1.0j, 1.0j], 64)
    ctx = bounded_context(curve, 1.0 + 0.4j)
    gamma = -np.log(np.abs(ctx.A))
    with pytest.raises(ConvergenceError) as err:
        solve_neumann_system(ctx, gamma, SolveConfig(max_iters=2))
    assert err.value.residual > 0.0


def test_context_validation(circle):
    with pytest.raises(ValueError):
        bounded_context(circle(32, kind="exterior"), 0.0)
    with pytest.raises(ValueError):
        unbounded_context(circle(32))
    with pytest.raises(ValueError):
        bounded_context(circle(32), 1.0 + 0.0j)  # on the boundary
