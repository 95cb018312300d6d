"""
Random test pairs with mixed signs and scales.

The first vector has each coordinate present with probability ``density``,
magnitude uniform on [1e-3, 1e3] and a random sign. The second vector takes each
coordinate from one of three modes, chosen uniformly:

- copy the first vector's value,
- perturb it by a relative factor uniform on ``[1 - perturb, 1 + perturb]``,
- redraw it; with ``exclusive=True`` a redraw only fills coordinates the first
  vector leaves empty, and clears the others.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from gcwsnet.core.vectors import SparseVector

LOW, HIGH = 1e-3, 1e3


def _draw(rng: np.random.Generator, dim: int, density: float) -> np.ndarray:
    present = rng.random(dim) < density
    values = rng.uniform(LOW, HIGH, dim) * rng.choice([-1.0, 1.0], dim)
    return np.where(present, values, 0.0)


def random_pair(
    rng: np.random.Generator,
    dim: int = 32,
    density: float = 0.5,
    perturb: float = 0.5,
    exclusive: bool = False,
) -> Tuple[SparseVector, SparseVector]:
    """Two nonzero vectors of dimension ``dim``."""
    u = _draw(rng, dim, density)
    while not u.any():
        u = _draw(rng, dim, density)
    while True:
        mode = rng.integers(0, 3, dim)
        factor = rng.uniform(1.0 - perturb, 1.0 + perturb, dim)
        fresh = _draw(rng, dim, density)
        if exclusive:
            fresh = np.where(u == 0.0, fresh, 0.0)
        v = np.where(mode == 0, u, np.where(mode == 1, u * factor, fresh))
        if v.any():
            return SparseVector.from_dense(u), SparseVector.from_dense(v)


__all__ = ["random_pair"]
