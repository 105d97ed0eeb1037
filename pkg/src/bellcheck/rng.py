"""Reproducible counter-based random streams.

Each simulation shot gets its own Philox stream keyed by (seed, shot),
so results are reproducible for a fixed seed and independent of how
shots are scheduled or partitioned across workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def shot_stream(seed: int, shot: int) -> np.random.Generator:
    """Independent generator for one shot of a seeded experiment."""
    if seed < 0 or shot < 0:
        raise ValueError("seed and shot index must be non-negative")
    key = np.array([seed & _MASK64, shot & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
