"""Reproducible random streams for the Monte-Carlo oracles.

Streams come from numpy's Philox (a 64-bit counter-based generator) keyed on
``(seed, partition)``, so a fixed seed and partition count gives bit-identical
draws on every platform. Normals use an explicit Box-Muller transform rather
than numpy's ziggurat so the mapping from uniforms is fixed too.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, partition: int = 0) -> np.random.Generator:
    if seed < 0 or partition < 0:
        raise ValueError("seed and partition must be non-negative")
    return np.random.Generator(np.random.Philox(key=[seed, partition]))


def box_muller(gen: np.random.Generator, n: int) -> np.ndarray:
    """``n`` standard normal draws."""
    m = (n + 1) // 2
    u1 = 1.0 - gen.random(m)  # (0, 1], keeps log finite
    u2 = gen.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate((r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)))
    return z[:n]


def split_counts(n_samples: int, n_partitions: int) -> list[int]:
    """Split ``n_samples`` into ``n_partitions`` near-equal positive chunks."""
    if n_partitions < 1:
        raise ValueError("n_partitions must be >= 1")
    n_partitions = min(n_partitions, n_samples)
    base, extra = divmod(n_samples, n_partitions)
    return [base + (1 if i < extra else 0) for i in range(n_partitions)]
