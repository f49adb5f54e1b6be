"""Edge weight laws: the planted law P and the size-scaled unplanted law Q_n.

P is a fixed continuous distribution on [0, inf) with CDF F (default:
exponential with mean ``mu``). Q_n scales with the instance size so that
its density at the origin is asymptotically 1/n; the shipped default is
exactly exponential with mean ``n``, under which the lightest unplanted
weights at a vertex look like arrivals of a unit-rate Poisson process.

The family registry is extensible: registering a family requires a CDF,
a density, a sampler, the mean, and a finite-mean flag. Only the
exponential family ships by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class Family:
    """Distribution family: all callables take (s_or_size, scale)."""

    name: str
    cdf: Callable  # cdf(s, scale) -> probability, vectorized over s
    pdf: Callable  # pdf(s, scale) -> density, vectorized over s
    sample: Callable  # sample(rng, scale, size) -> draws
    mean: Callable  # mean(scale) -> float
    finite_mean: bool


def _exp_cdf(s, scale):
    return -np.expm1(-np.asarray(s, dtype=float) / scale)


def _exp_pdf(s, scale):
    return np.exp(-np.asarray(s, dtype=float) / scale) / scale


FAMILIES: dict[str, Family] = {}


def register_family(family: Family) -> None:
    if family.name in FAMILIES:
        raise ValueError(f"family {family.name!r} already registered")
    FAMILIES[family.name] = family


register_family(
    Family(
        name="exponential",
        cdf=_exp_cdf,
        pdf=_exp_pdf,
        sample=lambda rng, scale, size=None: rng.exponential(scale, size=size),
        mean=lambda scale: float(scale),
        finite_mean=True,
    )
)


@dataclass(frozen=True)
class EdgeWeightModel:
    """Planted law P (mean mu) and unplanted law Q_n (scale n)."""

    mu: float
    n: int
    planted_kind: str = "exponential"
    unplanted_kind: str = "exponential"

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not self.n >= 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        for kind in (self.planted_kind, self.unplanted_kind):
            if kind not in FAMILIES:
                raise ValueError(f"unknown weight family {kind!r}")


def _check_nonneg(s) -> np.ndarray:
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0):
        raise ValueError("weight threshold s must be nonnegative")
    return arr


def cdf_P(model: EdgeWeightModel, s):
    """F(s) of the planted law; monotone, F(0) = 0. Raises on negative s."""
    return FAMILIES[model.planted_kind].cdf(_check_nonneg(s), model.mu)


def pdf_P(model: EdgeWeightModel, s):
    """Density of the planted law at s >= 0."""
    return FAMILIES[model.planted_kind].pdf(_check_nonneg(s), model.mu)


def planted_mean(model: EdgeWeightModel) -> float:
    fam = FAMILIES[model.planted_kind]
    if not fam.finite_mean:
        raise ValueError(f"planted family {fam.name!r} has infinite mean")
    return fam.mean(model.mu)


def exponential_cdf(mu: float):
    """Standalone CDF accessor s -> F(s) for an exponential law with mean mu."""
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    return lambda s: _exp_cdf(_check_nonneg(s), mu)


def sample_planted(model: EdgeWeightModel, rng: np.random.Generator, size=None):
    return FAMILIES[model.planted_kind].sample(rng, model.mu, size)


def sample_unplanted(model: EdgeWeightModel, rng: np.random.Generator, size=None):
    return FAMILIES[model.unplanted_kind].sample(rng, float(model.n), size)
