"""Asymptotic predictions by quadrature over the scalar fixed points.

The limiting overlap integrates the recovered-edge probability against the
planted weight density; the limiting normalized MST weight adds the
planted-edge weight integral and half the unplanted Lebesgue integral:

    overlap = int_0^inf (1 - (1 - p_-(s)) (1 - p_+(s))) f(s) ds
    weight  = int_0^inf s (1 - (1 - p_-(s)) (1 - p_+(s))) f(s) ds
              + 1/2 int_0^inf s (1 - (1 - x(s))^2) ds

with x = p_U for the spanning-tree model and x = q for the path model.
Integrals run in s-space against the closed-form exponential density,
truncated at S_max = mu ln(1e12) (tail mass below 1e-12); the Lebesgue
term doubles its upper limit from 40 until the integrand drops below
1e-12. Fixed points are solved by scalar bisection at the quadrature
nodes directly, so no grid interpolation enters the error budget.

Tree-model predictions default to ``bush_filter=True``: that variant of
the fixed point reproduces the bundled reference table (``TABLE1``) and
agrees with both the branching Monte Carlo oracle and finite-instance
simulation, while the unfiltered variant deviates from all three (see
``fixed_point`` and the acceptance suite). In the unplanted limit the
Lebesgue term alone evaluates to Apery's constant zeta(3).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import fixed_point, weight_models

ZETA3 = 1.2020569031595943
SCHEMA_VERSION = 1
_QUAD_EPS = 1e-11
_QUAD_LIMIT = 500
_LEBESGUE_START = 40.0
_LEBESGUE_CUTOFF = 1e-12
_TAIL_MASS = 1e-12

# Reference data points (mu; spanning-tree overlap, mean weight;
# Hamiltonian-path overlap, mean weight). The `table1` command and the
# acceptance suite compare quadrature output against these rows.
TABLE1 = (
    (0.089667, 0.913074, 0.076304, 0.906252, 0.072267),
    (0.311334, 0.789809, 0.213841, 0.788253, 0.200390),
    (0.402602, 0.752422, 0.258459, 0.753049, 0.242444),
    (4.418627, 0.282288, 0.852414, 0.289205, 0.840914),
    (8.434651, 0.178754, 0.982680, 0.182270, 0.977254),
    (12.852277, 0.127802, 1.045965, 0.129785, 1.043005),
    (17.269904, 0.099549, 1.080776, 0.100813, 1.078922),
    (21.285928, 0.082916, 1.101167, 0.083818, 1.099858),
    (25.703554, 0.070054, 1.116881, 0.070712, 1.115934),
    (30.121181, 0.060652, 1.128336, 0.061152, 1.127620),
    (34.137205, 0.054059, 1.136353, 0.054460, 1.135781),
    (38.554831, 0.048287, 1.143361, 0.048610, 1.142902),
    (42.972458, 0.043629, 1.149008, 0.043895, 1.148632),
    (46.988482, 0.040112, 1.153268, 0.040338, 1.152948),
    (51.406108, 0.036845, 1.157220, 0.037037, 1.156950),
    (55.823735, 0.034071, 1.160575, 0.034235, 1.160343),
    (59.839759, 0.031888, 1.163212, 0.032033, 1.163009),
)


@dataclass(frozen=True)
class TheoryPrediction:
    model_kind: str
    mu: float
    overlap_limit: float
    weight_limit: float
    s_max_planted: float
    s_max_unplanted: float
    bush_filter: bool
    diagnostics: dict

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "model": self.model_kind,
            "mu": self.mu,
            "overlap_limit": self.overlap_limit,
            "weight_limit": self.weight_limit,
            "s_max": self.s_max_planted,
            "diagnostics": dict(self.diagnostics, bush_filter=self.bush_filter),
        }


def zeta3() -> float:
    """Apery's constant, the unplanted-model limit of the mean MST weight."""
    return ZETA3


def _planted_mu(planted) -> float:
    if isinstance(planted, weight_models.EdgeWeightModel):
        fam = weight_models.FAMILIES[planted.planted_kind]
        if not fam.finite_mean:
            raise ValueError("planted law must have a finite mean")
        if planted.planted_kind != "exponential":
            raise NotImplementedError(
                "quadrature is specialized to the exponential planted family"
            )
        return planted.mu
    mu = float(planted)
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    return mu


def _solver(model_kind: str, bush_filter: bool):
    if model_kind == "tree":
        return lambda s, F: fixed_point.scalar_tree(s, F, bush_filter=bush_filter)
    if model_kind == "path":
        return lambda s, F: fixed_point.scalar_path(s, F)
    raise ValueError(f"unknown model kind {model_kind!r}")


def _minus_plus_unplanted(model_kind, solve, s, F):
    a, b = solve(s, F)
    if model_kind == "tree":
        return a, b, a  # p_U, p_B; unplanted term uses p_U
    return a, a, b  # p, p; unplanted term uses q


def _breakpoints(model_kind, mu, bush_filter, hi):
    sc = fixed_point.threshold_s(
        model_kind, weight_models.exponential_cdf(mu), bush_filter
    )
    return ([sc] if 0.0 < sc < hi else None), sc


def overlap_limit(
    model_kind: str,
    planted,
    bush_filter: bool = True,
    s_max: float | None = None,
    quad_eps: float = _QUAD_EPS,
) -> float:
    """Asymptotic expected overlap of the MST with the planted structure."""
    mu = _planted_mu(planted)
    solve = _solver(model_kind, bush_filter)
    hi = s_max if s_max is not None else mu * np.log(1.0 / _TAIL_MASS)
    points, _ = _breakpoints(model_kind, mu, bush_filter, hi)

    def integrand(s):
        a, b, _ = _minus_plus_unplanted(model_kind, solve, s, -np.expm1(-s / mu))
        return (1.0 - (1.0 - a) * (1.0 - b)) * np.exp(-s / mu) / mu

    val, _err = integrate.quad(
        integrand, 0.0, hi, points=points, limit=_QUAD_LIMIT,
        epsabs=quad_eps, epsrel=quad_eps,
    )
    return float(val)


def weight_limit(
    model_kind: str,
    planted,
    bush_filter: bool = True,
    s_max: float | None = None,
    quad_eps: float = _QUAD_EPS,
) -> float:
    """Asymptotic expected normalized MST weight under the planted model."""
    mu = _planted_mu(planted)
    solve = _solver(model_kind, bush_filter)
    hi = s_max if s_max is not None else mu * np.log(1.0 / _TAIL_MASS)
    points, sc = _breakpoints(model_kind, mu, bush_filter, hi)

    def planted_term(s):
        a, b, _ = _minus_plus_unplanted(model_kind, solve, s, -np.expm1(-s / mu))
        return s * (1.0 - (1.0 - a) * (1.0 - b)) * np.exp(-s / mu) / mu

    def unplanted_term(s):
        _, _, x = _minus_plus_unplanted(model_kind, solve, s, -np.expm1(-s / mu))
        return s * (1.0 - (1.0 - x) ** 2)

    wp, _ = integrate.quad(
        planted_term, 0.0, hi, points=points, limit=_QUAD_LIMIT,
        epsabs=quad_eps, epsrel=quad_eps,
    )
    L = _lebesgue_cap(unplanted_term)
    wl_points = [sc] if 0.0 < sc < L else None
    wl, _ = integrate.quad(
        unplanted_term, 0.0, L, points=wl_points, limit=_QUAD_LIMIT,
        epsabs=quad_eps, epsrel=quad_eps,
    )
    return float(wp + 0.5 * wl)


def _lebesgue_cap(integrand, start: float = _LEBESGUE_START) -> float:
    L = start
    for _ in range(20):
        if integrand(L) < _LEBESGUE_CUTOFF:
            return L
        L *= 2.0
    raise RuntimeError("unplanted integrand failed to decay below cutoff")


def predict(model_kind: str, planted, bush_filter: bool = True) -> TheoryPrediction:
    """Both limits plus quadrature diagnostics."""
    mu = _planted_mu(planted)
    solve = _solver(model_kind, bush_filter)
    s_max_planted = mu * np.log(1.0 / _TAIL_MASS)

    def unplanted_term(s):
        _, _, x = _minus_plus_unplanted(model_kind, solve, s, -np.expm1(-s / mu))
        return s * (1.0 - (1.0 - x) ** 2)

    s_max_unplanted = _lebesgue_cap(unplanted_term)
    ov = overlap_limit(model_kind, mu, bush_filter)
    w = weight_limit(model_kind, mu, bush_filter)
    diagnostics = {
        "overlap_tail_bound": float(np.exp(-s_max_planted / mu)),
        "weight_tail_bound": float(
            (s_max_planted + mu) * np.exp(-s_max_planted / mu)
        ),
        "unplanted_integrand_at_cap": float(unplanted_term(s_max_unplanted)),
        "s_max_unplanted": float(s_max_unplanted),
    }
    return TheoryPrediction(
        model_kind=model_kind,
        mu=mu,
        overlap_limit=ov,
        weight_limit=w,
        s_max_planted=float(s_max_planted),
        s_max_unplanted=float(s_max_unplanted),
        bush_filter=bush_filter,
        diagnostics=diagnostics,
    )


def _gw_extinction(s: float, xtol: float = 1e-13) -> float:
    """Extinction probability of a Poisson(s) branching process."""
    if s <= 1.0 + fixed_point.NEAR_CRITICAL_EPS:
        return 1.0
    lo, hi = 0.0, 1.0 - 1e-9

    def g(x):
        return np.exp(-s * (1.0 - x)) - x

    for _ in range(2000):
        if hi - lo <= xtol * hi:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gw_weight_integral() -> float:
    """(1/2) int s (1 - (1 - x(s))^2) ds with x(s) the Poisson(s) extinction root.

    This is the unplanted-model mean MST weight; it equals zeta(3).
    """
    def integrand(s):
        x = _gw_extinction(s)
        return s * (1.0 - (1.0 - x) ** 2)

    L = _lebesgue_cap(integrand)
    val, _ = integrate.quad(
        integrand, 0.0, L, points=[1.0], limit=_QUAD_LIMIT,
        epsabs=_QUAD_EPS, epsrel=_QUAD_EPS,
    )
    return float(0.5 * val)


def table1_rows(bush_filter: bool = True):
    """Comparison rows (mu, model, metric, reference, computed, abs_err)."""
    rows = []
    for mu, tree_ov, tree_w, path_ov, path_w in TABLE1:
        for model_kind, ref_ov, ref_w in (
            ("tree", tree_ov, tree_w),
            ("path", path_ov, path_w),
        ):
            ov = overlap_limit(model_kind, mu, bush_filter=bush_filter)
            w = weight_limit(model_kind, mu, bush_filter=bush_filter)
            rows.append((mu, model_kind, "overlap", ref_ov, ov, abs(ov - ref_ov)))
            rows.append((mu, model_kind, "weight", ref_w, w, abs(w - ref_w)))
    return rows
