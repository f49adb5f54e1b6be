import numpy as np
import pytest

from plantedmst.errors import ConvergenceError
from plantedmst.fixed_point import (
    GridFunction,
    cross_check,
    default_grid,
    iterate_path,
    iterate_tree,
    scalar_path,
    scalar_tree,
    threshold_s,
)

TOL = 1e-12


def gw_extinction(mean, lo=0.0, hi=1.0 - 1e-12):
    """Oracle: smallest root of x = exp(-mean (1 - x)) by plain bisection."""
    assert mean > 1.0

    def g(x):
        return np.exp(-mean * (1.0 - x)) - x

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def path_phi_root(s, F):
    """Oracle: direct bisection of the scalar path reduction."""
    def g(x):
        return np.exp(-s * (1 - x * (1 - F + F * x))) * (1 - F + F * x) - x

    lo, hi = 0.0, 1.0 - 1e-12
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def zero_cdf(s):
    return np.zeros_like(np.asarray(s, dtype=float))


def exp_cdf(mu):
    return lambda s: -np.expm1(-np.asarray(s, dtype=float) / mu)


class TestGridFunction:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridFunction(np.array([0.5, 1.0]), np.array([0.1, 0.2]))  # not from 0
        with pytest.raises(ValueError):
            GridFunction(np.array([0.0, 0.0, 1.0]), np.array([0.1, 0.2, 0.3]))
        with pytest.raises(ValueError):
            GridFunction(np.array([0.0, 1.0]), np.array([0.1, 1.5]))
        with pytest.raises(ValueError):
            GridFunction(np.array([0.0, 1.0]), np.array([0.1]))

    def test_interpolation_and_extrapolation(self):
        gf = GridFunction(np.array([0.0, 1.0, 2.0]), np.array([1.0, 0.5, 0.25]))
        assert gf(0.5) == pytest.approx(0.75)
        assert gf(10.0) == 0.25  # constant beyond the last knot


def test_default_grid_shape():
    g = default_grid(50.0)
    assert len(g) == 512
    assert g[0] == 0.0
    assert np.all(np.diff(g) > 0)
    assert g[-1] == pytest.approx(50.0)
    small = default_grid(1.5, points=64)
    assert len(small) == 64 and small[-1] == pytest.approx(1.5)


class TestScalarTree:
    def test_s_zero(self):
        assert scalar_tree(0.0, 0.0) == (1.0, 1.0)
        assert scalar_tree(0.0, 0.9) == (1.0, 1.0)

    def test_classical_reduction_at_F_zero(self):
        # with no planted filter the reduction is a Poisson(s + 1) process
        pU, pB = scalar_tree(1.0, 0.0)
        assert pB == pytest.approx(gw_extinction(2.0), abs=1e-11)
        assert pU == pytest.approx(pB, abs=1e-12)

    def test_root_residual(self):
        for s, F in [(0.5, 0.3), (2.0, 0.8), (7.0, 0.99)]:
            pU, pB = scalar_tree(s, F)
            phi = np.exp(-(1 - pB) * (s / (1 - F * pB) + 1.0))
            assert abs(phi - pB) < 1e-12

    def test_ratio_identity(self):
        for s, F in [(0.5, 0.3), (2.0, 0.8)]:
            for bush in (False, True):
                pU, pB = scalar_tree(s, F, bush_filter=bush)
                assert pU == pytest.approx(pB * (1 - F + F * pU), abs=1e-12)
                assert pU <= pB + 1e-15

    def test_bush_filter_subcritical_region(self):
        # with every planted edge thresholded the tree side goes critical
        # below the root of s / (1 - F) + F = 1
        sc = threshold_s("tree", exp_cdf(1.0), bush_filter=True)
        assert 0.40 < sc < 0.45
        assert scalar_tree(0.9 * sc, float(exp_cdf(1.0)(0.9 * sc)),
                           bush_filter=True) == (1.0, 1.0)
        pU, pB = scalar_tree(1.1 * sc, float(exp_cdf(1.0)(1.1 * sc)),
                             bush_filter=True)
        assert pB < 1.0

    def test_underflow_region_returns_zero(self):
        assert scalar_tree(800.0, 0.5) == (0.0, 0.0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            scalar_tree(-1.0, 0.5)
        with pytest.raises(ValueError):
            scalar_tree(1.0, 1.5)


class TestScalarPath:
    def test_subcritical_threshold(self):
        assert scalar_path(0.2, 0.0) == (1.0, 1.0)  # threshold is 1 at F = 0
        assert scalar_path(0.99, 0.0) == (1.0, 1.0)

    def test_classical_gw_at_F_zero(self):
        p, q = scalar_path(2.0, 0.0)
        assert p == pytest.approx(gw_extinction(2.0), abs=1e-11)
        assert q == pytest.approx(p, abs=1e-12)

    def test_value_against_oracle(self):
        F = 1.0 - np.exp(-1.0)
        p, q = scalar_path(1.0, F)
        assert p == pytest.approx(path_phi_root(1.0, F), abs=1e-10)
        assert p == pytest.approx(0.201, abs=5e-4)
        assert q == pytest.approx(p * (1 - F + F * p), abs=1e-12)

    def test_q_below_p(self):
        for s, F in [(1.0, 0.3), (2.0, 0.9), (5.0, 0.5)]:
            p, q = scalar_path(s, F)
            assert q <= p

    def test_degenerate_full_retention(self):
        assert scalar_path(3.0, 1.0) == (0.0, 0.0)


class TestIterateTree:
    def test_s_zero_is_one(self):
        sol = iterate_tree(zero_cdf, np.array([0.0, 2.0]))
        assert sol.minus.values[0] == 1.0
        assert sol.plus.values[0] == 1.0

    def test_injected_zero_cdf_matches_gw(self):
        sol = iterate_tree(zero_cdf, np.array([0.0, 1.0, 2.0]))
        assert sol.plus.values[2] == pytest.approx(gw_extinction(3.0), abs=1e-9)
        assert sol.plus.values[2] == pytest.approx(0.0595, abs=5e-4)

    def test_fixed_point_residual(self):
        mu = 1.0
        grid = default_grid(8.0, points=80)
        sol = iterate_tree(exp_cdf(mu), grid, tol=TOL)
        F = exp_cdf(mu)(grid)
        pU, pB = sol.minus.values, sol.plus.values
        pB_map = np.exp(-grid * (1 - pU) - (1 - pB))
        pU_map = pB_map * (1 - F + F * pU)
        interior = pB < 1.0
        assert np.max(np.abs(pB_map[interior] - pB[interior])) < 10 * TOL
        assert np.max(np.abs(pU_map[interior] - pU[interior])) < 10 * TOL
        assert sol.residual_sup_norm <= TOL

    def test_monotone_iterates_and_range(self):
        grid = default_grid(6.0, points=50)
        coarse = iterate_tree(exp_cdf(0.5), grid, tol=1e-4)
        fine = iterate_tree(exp_cdf(0.5), grid, tol=1e-12)
        # iteration is monotone from the zero start, so a longer run
        # can only move values up
        assert np.all(fine.minus.values >= coarse.minus.values - 1e-15)
        assert np.all(fine.plus.values >= coarse.plus.values - 1e-15)
        for vals in (fine.minus.values, fine.plus.values):
            assert np.all((vals >= 0.0) & (vals <= 1.0))

    def test_max_iter_raises(self):
        with pytest.raises(ConvergenceError) as err:
            iterate_tree(exp_cdf(1.0), default_grid(4.0, points=16), max_iter=3)
        assert err.value.residual is not None


class TestIteratePath:
    def test_s_zero_and_subcritical(self):
        sol = iterate_path(zero_cdf, np.array([0.0, 0.5, 2.0]))
        assert sol.minus.values[0] == 1.0
        assert sol.minus.values[1] == 1.0  # below the F=0 threshold of 1
        assert sol.minus.values[2] < 1.0

    def test_injected_zero_cdf_matches_gw(self):
        sol = iterate_path(zero_cdf, np.array([0.0, 2.0]))
        assert sol.minus.values[1] == pytest.approx(gw_extinction(2.0), abs=1e-9)
        assert sol.aux.values[1] == pytest.approx(gw_extinction(2.0), abs=1e-9)

    def test_ratio_identity_and_order(self):
        grid = default_grid(8.0, points=80)
        mu = 2.0
        sol = iterate_path(exp_cdf(mu), grid, tol=TOL)
        F = exp_cdf(mu)(grid)
        p, q = sol.minus.values, sol.aux.values
        assert np.max(np.abs(q - p * (1 - F + F * p))) < 10 * TOL
        assert np.all(q <= p + 1e-15)

    def test_minus_equals_plus(self):
        sol = iterate_path(exp_cdf(1.0), default_grid(4.0, points=30))
        assert np.array_equal(sol.minus.values, sol.plus.values)


def test_solutions_nonincreasing_in_s():
    grid = default_grid(10.0, points=120)
    tree = iterate_tree(exp_cdf(1.0), grid)
    path = iterate_path(exp_cdf(1.0), grid)
    for vals in (tree.minus.values, tree.plus.values,
                 path.minus.values, path.aux.values):
        assert np.all(np.diff(vals) <= 1e-10)


def test_smallest_fixed_point_below_all_ones():
    grid = default_grid(6.0, points=60)
    sol = iterate_tree(exp_cdf(1.0), grid)
    assert np.all(sol.plus.values <= 1.0)
    # strictly interior wherever an interior root exists (s > 0 here)
    assert np.all(sol.plus.values[1:] < 1.0)


class TestCrossCheck:
    def test_classical_grid(self):
        grid = np.array([0.0, 0.5, 1.0, 2.0, 3.0, 5.0])
        sol = iterate_tree(zero_cdf, grid)
        dev = cross_check(sol, scalar_tree, zero_cdf)
        assert dev < 1e-8
        solp = iterate_path(zero_cdf, grid)
        assert cross_check(solp, scalar_path, zero_cdf) < 1e-8

    def test_subthreshold_path_exact(self):
        grid = np.array([0.0, 0.2, 0.5])
        sol = iterate_path(zero_cdf, grid)
        assert cross_check(sol, scalar_path, zero_cdf) == 0.0

    def test_tree_exp_grid(self):
        grid = default_grid(12.0, points=200)
        sol = iterate_tree(exp_cdf(1.0), grid)
        assert cross_check(sol, scalar_tree, exp_cdf(1.0)) < 1e-6


def test_threshold_s_values():
    assert threshold_s("tree", zero_cdf) == 0.0
    assert threshold_s("path", zero_cdf) == pytest.approx(1.0, abs=1e-9)
    sc = threshold_s("path", exp_cdf(1.0))
    F = float(exp_cdf(1.0)(sc))
    assert sc * (1 + F) + F == pytest.approx(1.0, abs=1e-9)
