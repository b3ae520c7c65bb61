"""Shared test utilities: seeded generators and structured random matrices."""

import numpy as np


def philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def complex_uniform(rng, shape):
    """Entries with independent real/imaginary parts uniform on [-1/2, 1/2]."""
    return (rng.random(shape) - 0.5) + 1j * (rng.random(shape) - 0.5)


def transformed_jordan_block(rng, dim: int, eigenvalue: complex = 0.0) -> np.ndarray:
    """Similarity transform of a single Jordan block, kept well conditioned."""
    block = np.diag(np.ones(dim - 1, dtype=complex), 1)
    s = np.eye(dim, dtype=complex) + 0.5 * complex_uniform(rng, (dim, dim))
    return eigenvalue * np.eye(dim) + s @ block @ np.linalg.inv(s)


def random_fixed_rank(rng, rows: int, cols: int, r: int) -> np.ndarray:
    """Dense matrix of exact rank r (product of two full-rank factors)."""
    return complex_uniform(rng, (rows, r)) @ complex_uniform(rng, (r, cols))


def random_distinct_spectrum(rng, dim: int, min_gap: float = 1e-2) -> np.ndarray:
    """Diagonalizable matrix whose eigenvalues are pairwise well separated."""
    while True:
        vals = complex_uniform(rng, dim) * 4.0
        gaps = np.abs(vals[:, None] - vals[None, :]) + np.eye(dim)
        if gaps.min() > min_gap:
            break
    s = np.eye(dim, dtype=complex) + 0.5 * complex_uniform(rng, (dim, dim))
    return s @ np.diag(vals) @ np.linalg.inv(s)
