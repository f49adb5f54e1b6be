"""Threshold-extinction fixed points for the two planted-structure limits.

For a weight threshold s, removing every edge of weight >= s from the
local limit tree leaves branching processes whose extinction
probabilities solve the fixed-point systems below. Both solvers are
provided: functional iteration from the all-zero start (monotone, so it
converges to the smallest fixed point) and scalar bisection of the
one-dimensional reduction, which is strictly increasing and convex on
[0, 1] and therefore crosses the diagonal at most once in (0, 1).

Spanning-tree model (two coupled functions, p_U at spine-type vertices,
p_B at side-branch vertices):

    p_B = exp(-s (1 - p_U)) * exp(-c (1 - p_B))
    p_U = p_B * (1 - F(s) + F(s) p_U)

The coefficient ``c`` encodes the treatment of the Poisson(1) side-branch
("bush") edges under the threshold:

* ``bush_filter=False`` (module default): c = 1, bush edges are exempt
  from the weight threshold. This is the closed-form variant the `fp`
  command dumps; its scalar reduction is
  phi_s(x) = exp(-(1 - x) (s / (1 - F x) + 1)).
* ``bush_filter=True``: c = F(s), every planted edge is subject to the
  threshold. This variant agrees with the branching Monte Carlo oracle,
  with finite-instance simulation, and with the bundled reference table
  (see `theory`), which is why the theory predictions use it. The two
  variants differ substantially for the tree model at moderate mu; the
  acceptance suite quantifies the gap.

Hamiltonian-path model (p at on-path vertices, q at off-path vertices;
no variant, every planted edge carries the threshold filter):

    p = exp(-s (1 - q)) * (1 - F(s) + F(s) p)
    q = exp(-s (1 - q)) * (1 - F(s) + F(s) p)^2

The all-ones function always solves either system; an interior solution
exists exactly when the derivative of the scalar reduction at 1 exceeds
1. At or below that threshold (and at s = 0) the solvers return 1
analytically, since plain iteration converges only sublinearly there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

NEAR_CRITICAL_EPS = 1e-9
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10**6
DEFAULT_XTOL = 1e-13
BRACKET_HI = 1.0 - 1e-9
DEFAULT_GRID_POINTS = 512


@dataclass(frozen=True)
class GridFunction:
    """Sampled function on a strictly increasing grid over [0, S_max].

    Linear interpolation between knots, constant extrapolation beyond the
    last knot; values live in [0, 1].
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if len(grid) == 0 or grid[0] != 0.0:
            raise ValueError("grid must start at 0")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(values < 0) or np.any(values > 1):
            raise ValueError("values must lie in [0, 1]")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __call__(self, s):
        return np.interp(s, self.grid, self.values)


@dataclass(frozen=True)
class FixedPointSolution:
    model_kind: str  # "tree" | "path"
    minus: GridFunction  # p_U (tree) or p (path)
    plus: GridFunction  # p_B (tree) or p (path)
    aux: GridFunction | None  # q for the path model
    iterations_used: int
    residual_sup_norm: float
    bush_filter: bool | None  # tree only; None for path


def default_grid(s_max: float, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Half uniform on [0, 2), half geometric on [2, s_max].

    Solutions vary fastest at small s, so the uniform part is dense there.
    """
    if s_max <= 2.0:
        return np.linspace(0.0, s_max, points)
    half = points // 2
    uniform = np.linspace(0.0, 2.0, half, endpoint=False)
    geo = np.geomspace(2.0, s_max, points - half)
    return np.concatenate([uniform, geo])


def phi_prime_at_one(model_kind: str, s, F, bush_filter: bool = False):
    """Derivative of the scalar reduction at x = 1; > 1 means an interior root."""
    s = np.asarray(s, dtype=float)
    F = np.asarray(F, dtype=float)
    if model_kind == "tree":
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(F < 1.0, s / (1.0 - F), np.inf)
        return ratio + (F if bush_filter else 1.0)
    if model_kind == "path":
        return s * (1.0 + F) + F
    raise ValueError(f"unknown model kind {model_kind!r}")


def threshold_s(model_kind: str, cdf, bush_filter: bool = False) -> float:
    """Largest s with no interior fixed point (0 when every s > 0 has one)."""
    def h(s):
        return float(phi_prime_at_one(model_kind, s, float(cdf(s)), bush_filter)) - 1.0

    lo, hi = 0.0, 2.0
    if h(hi) <= 0.0:  # pathological cdf; expand
        while h(hi) <= 0.0 and hi < 1e6:
            hi *= 2
    if h(lo) >= 0.0:
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if h(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return 0.5 * (lo + hi)


def _as_grid_arrays(cdf, grid):
    grid = np.asarray(grid, dtype=float)
    F = np.asarray(cdf(grid), dtype=float)
    if F.shape != grid.shape:
        raise ValueError("cdf accessor must vectorize over the grid")
    return grid, F


def iterate_tree(
    cdf,
    grid,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    bush_filter: bool = False,
) -> FixedPointSolution:
    """Smallest fixed point of the spanning-tree system on a grid.

    Starts from the all-zero pair, so iterates are pointwise nondecreasing
    in the iteration index and stay in [0, 1]. Points with no interior
    root (s = 0, or near-critical per ``phi_prime_at_one``) are set to 1
    analytically and excluded from the sweep.
    """
    grid, F = _as_grid_arrays(cdf, grid)
    s = grid
    c = F if bush_filter else np.ones_like(F)
    active = phi_prime_at_one("tree", s, F, bush_filter) > 1.0 + NEAR_CRITICAL_EPS
    pU = np.where(active, 0.0, 1.0)
    pB = np.where(active, 0.0, 1.0)
    residual = 0.0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        pB_new = np.exp(-s * (1.0 - pU) - c * (1.0 - pB))
        pU_new = pB_new * (1.0 - F + F * pU)
        pB_new = np.where(active, pB_new, 1.0)
        pU_new = np.where(active, pU_new, 1.0)
        residual = max(
            float(np.max(np.abs(pB_new - pB))), float(np.max(np.abs(pU_new - pU)))
        )
        pU, pB = pU_new, pB_new
        if residual < tol:
            break
    else:
        raise ConvergenceError(
            f"tree fixed-point iteration did not reach tol={tol} "
            f"after {max_iter} sweeps (residual {residual:.3e})",
            residual=residual,
        )
    return FixedPointSolution(
        model_kind="tree",
        minus=GridFunction(grid, pU),
        plus=GridFunction(grid, pB),
        aux=None,
        iterations_used=iterations,
        residual_sup_norm=residual,
        bush_filter=bush_filter,
    )


def iterate_path(
    cdf,
    grid,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> FixedPointSolution:
    """Smallest fixed point of the Hamiltonian-path system on a grid."""
    grid, F = _as_grid_arrays(cdf, grid)
    s = grid
    active = phi_prime_at_one("path", s, F) > 1.0 + NEAR_CRITICAL_EPS
    p = np.where(active, 0.0, 1.0)
    q = np.where(active, 0.0, 1.0)
    residual = 0.0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        e = np.exp(-s * (1.0 - q))
        p_new = e * (1.0 - F + F * p)
        q_new = e * (1.0 - F + F * p_new) ** 2
        p_new = np.where(active, p_new, 1.0)
        q_new = np.where(active, q_new, 1.0)
        residual = max(
            float(np.max(np.abs(p_new - p))), float(np.max(np.abs(q_new - q)))
        )
        p, q = p_new, q_new
        if residual < tol:
            break
    else:
        raise ConvergenceError(
            f"path fixed-point iteration did not reach tol={tol} "
            f"after {max_iter} sweeps (residual {residual:.3e})",
            residual=residual,
        )
    return FixedPointSolution(
        model_kind="path",
        minus=GridFunction(grid, p),
        plus=GridFunction(grid, p),
        aux=GridFunction(grid, q),
        iterations_used=iterations,
        residual_sup_norm=residual,
        bush_filter=None,
    )


def _bisect_root(g, xtol: float):
    """Bracketed bisection of g on [0, BRACKET_HI]; g(0) > 0 > g(hi) required.

    The tolerance is relative to the root location, so roots that sit
    many orders of magnitude below 1 (deep supercritical thresholds) are
    still resolved to full relative precision.
    """
    lo, hi = 0.0, BRACKET_HI
    glo, ghi = g(lo), g(hi)
    if glo <= 0.0 or ghi >= 0.0:
        raise ConvergenceError(
            "bisection bracket failure: the interior-root test and the "
            f"bracket disagree (g(0)={glo:.3e}, g({hi})={ghi:.3e})"
        )
    for _ in range(2000):
        if hi - lo <= xtol * hi:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scalar_tree(
    s: float,
    F_s: float,
    bush_filter: bool = False,
    xtol: float = DEFAULT_XTOL,
) -> tuple[float, float]:
    """(p_U, p_B) at a single s via the scalar reduction.

    p_B is the unique interior root of
    phi_s(x) = exp(-(1 - x)(s / (1 - F x) + c)), then
    p_U = p_B (1 - F) / (1 - p_B F). Returns (1, 1) at s = 0 and whenever
    no interior root exists.
    """
    if not 0.0 <= F_s <= 1.0:
        raise ValueError(f"F_s must be a probability, got {F_s}")
    if s < 0:
        raise ValueError(f"s must be nonnegative, got {s}")
    if phi_prime_at_one("tree", s, F_s, bush_filter) <= 1.0 + NEAR_CRITICAL_EPS:
        return 1.0, 1.0
    c = F_s if bush_filter else 1.0

    def g(x):
        return np.exp(-(1.0 - x) * (s / (1.0 - F_s * x) + c)) - x

    if g(0.0) <= 0.0:  # phi_s(0) underflowed: the root sits below 5e-324
        return 0.0, 0.0
    try:
        x = _bisect_root(g, xtol)
    except ConvergenceError:
        # just above the analytic cutoff the root is within ~1e-5 of 1 and
        # g(1 - 1e-9) cancels below double resolution; 1 is the right answer
        if phi_prime_at_one("tree", s, F_s, bush_filter) <= 1.0 + 1e-6:
            return 1.0, 1.0
        raise
    pU = x * (1.0 - F_s) / (1.0 - x * F_s)
    return float(pU), float(x)


def scalar_path(
    s: float, F_s: float, xtol: float = DEFAULT_XTOL
) -> tuple[float, float]:
    """(p, q) at a single s via the scalar reduction.

    p is the unique interior root of
    phi_s(x) = exp(-s (1 - x (1 - F + F x))) (1 - F + F x), then
    q = p (1 - F + F p). Returns (1, 1) at or below the critical
    threshold s <= (1 - F) / (1 + F), and (0, 0) in the degenerate
    F = 1 limit where the planted line survives every threshold.
    """
    if not 0.0 <= F_s <= 1.0:
        raise ValueError(f"F_s must be a probability, got {F_s}")
    if s < 0:
        raise ValueError(f"s must be nonnegative, got {s}")
    if phi_prime_at_one("path", s, F_s) <= 1.0 + NEAR_CRITICAL_EPS:
        return 1.0, 1.0

    def g(x):
        return (
            np.exp(-s * (1.0 - x * (1.0 - F_s + F_s * x))) * (1.0 - F_s + F_s * x) - x
        )

    if g(0.0) <= 0.0:  # F_s == 1: survival is certain, extinction never
        return 0.0, 0.0
    try:
        p = _bisect_root(g, xtol)
    except ConvergenceError:
        if phi_prime_at_one("path", s, F_s) <= 1.0 + 1e-6:
            return 1.0, 1.0
        raise
    q = p * (1.0 - F_s + F_s * p)
    return float(p), float(q)


def cross_check(solution: FixedPointSolution, scalar_solver, cdf, grid=None) -> float:
    """Max absolute deviation between an iterative solution and a scalar solver.

    ``scalar_solver(s, F_s) -> pair`` is evaluated at every grid point and
    compared against (minus, plus) for the tree model or (minus, aux) for
    the path model.
    """
    if grid is None:
        grid = solution.minus.grid
    grid = np.asarray(grid, dtype=float)
    dev = 0.0
    for i, s in enumerate(grid):
        a, b = scalar_solver(float(s), float(cdf(s)))
        if solution.model_kind == "tree":
            dev = max(
                dev,
                abs(solution.minus.values[i] - a),
                abs(solution.plus.values[i] - b),
            )
        else:
            dev = max(
                dev,
                abs(solution.minus.values[i] - a),
                abs(solution.aux.values[i] - b),
            )
    return dev
