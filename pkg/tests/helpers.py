"""Shared sampling helpers for the test suite."""

from __future__ import annotations

import numpy as np

from ghzbell import GhzDiagonalState


def random_ghz_state(
    rng: np.random.Generator,
    n_qubits: int,
    boundary_margin: float = 1e-9,
) -> GhzDiagonalState:
    """Random valid GHZ-diagonal state, away from classification boundaries.

    The two pair-0 weights are ordered so that lambda0+ >= lambda0-: the
    opposite ordering is the same state up to a local phase flip, and the
    distillability rule 2*lambda_j < delta is stated for the positive
    ordering.  Resamples until no split weight sits within boundary_margin
    of 2*lambda_j = delta, so tolerance-band tests cannot straddle the
    boundary.
    """
    top = 1 << (n_qubits - 1)
    while True:
        raw = rng.dirichlet(np.ones(top + 1))
        plus, minus = (float(raw[0]), float(raw[1]))
        if plus < minus:
            plus, minus = minus, plus
        delta = plus - minus
        lambdas = {j: float(raw[j + 1]) / 2.0 for j in range(1, top)}
        if all(
            abs(2.0 * w - delta) > boundary_margin for w in lambdas.values()
        ):
            return GhzDiagonalState(n_qubits, plus, minus, lambdas)


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random full-rank density matrix (normalized Wishart)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random dense Hermitian matrix with entries of order 1."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2.0
