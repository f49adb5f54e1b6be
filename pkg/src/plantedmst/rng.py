"""Deterministic substream derivation from a single 64-bit master seed.

Every source of randomness in the package flows through these helpers: a
master seed is combined with a purpose tag (a short string, hashed with
CRC-32 so it is stable across platforms and interpreter runs) and an index
(trial number, block number). Streams derived for distinct
(purpose, index) pairs are statistically independent, which makes trial
loops safe to parallelize: results never depend on scheduling order or
worker count.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _tag(purpose: str) -> int:
    return zlib.crc32(purpose.encode("utf-8"))


def seed_sequence(seed: int, purpose: str, index: int = 0) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed) & _MASK64, _tag(purpose), int(index)])


def substream(seed: int, purpose: str, index: int = 0) -> np.random.Generator:
    """Generator for the (seed, purpose, index) substream."""
    return np.random.default_rng(seed_sequence(seed, purpose, index))


def derive_seed(seed: int, purpose: str, index: int = 0) -> int:
    """Collapse a substream to a single recordable 64-bit child seed."""
    return int(seed_sequence(seed, purpose, index).generate_state(1, np.uint64)[0])
