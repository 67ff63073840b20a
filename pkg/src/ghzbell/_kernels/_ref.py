"""NumPy reference implementations of the two numerical hot loops.

These definitions carry the behavioural contract; the compiled module
`_fast` mirrors them exactly and is preferred at import time when present.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import NumericalError


def hermitian_eigenvalues(
    matrix, off_threshold: float = 1e-13, max_sweeps: int = 100
) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi.

    Sweeps the strict upper triangle in row-major order, annihilating each
    entry with a complex Givens rotation.  Convergence is declared once the
    off-diagonal Frobenius norm is at most off_threshold * max(1, ||A||_F);
    running past max_sweeps raises NumericalError.  The sweep order and
    rotation choice are fixed, so results are deterministic.
    """
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 1:
        return a.real.reshape(1).copy()
    stop = off_threshold * max(1.0, float(np.linalg.norm(a)))
    # Entries at or below stop/n are left alone: even a full triangle of
    # them keeps the off-diagonal norm within stop.
    skip = stop / n
    for _ in range(max_sweeps):
        if _off_norm(a) <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _rotate(a, p, q)
    else:
        if _off_norm(a) > stop:
            raise NumericalError(
                f"Jacobi eigensolve still above off-norm {stop:g} "
                f"after {max_sweeps} sweeps"
            )
    return np.sort(a.diagonal().real)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(a.diagonal())))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] (and a[q, p]) with the smaller-angle unitary rotation."""
    g = a[p, q]
    mag = abs(g)
    phase = g / mag
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    sp = (t * c) * phase
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - sp * row_q
    a[q, :] = sp.conjugate() * row_p + c * row_q
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - sp.conjugate() * col_q
    a[:, q] = sp * col_p + c * col_q
    a[p, q] = 0.0
    a[q, p] = 0.0


def bell_antidiagonal_sum(
    n_qubits: int, angles, prefactor: float, chunk: int = 4096
) -> np.ndarray:
    """Anti-diagonal entries <r| B |2^N-1-r> of the summed Bell operator.

    Every product of equatorial single-qubit observables has exactly one
    nonzero entry per row, in the bitwise-complement column, with value
    prod_k exp(+/- i phi_{m_k}) -- plus sign where bit N-1-k of the row
    index is set.  This walks all M^N setting tuples and accumulates
    coefficient * row-phase for every row; nothing else of the operator is
    nonzero.  Returns a complex vector v of length 2^N with
    B[r, 2^N-1-r] = v[r].
    """
    angles = np.ascontiguousarray(angles, dtype=np.float64)
    if angles.ndim != 1 or angles.size == 0:
        raise ValueError("angles must be a non-empty 1-d sequence")
    m = angles.size
    dim = 1 << n_qubits
    total = m ** n_qubits
    rows = np.arange(dim, dtype=np.int64)
    shifts = np.arange(n_qubits - 1, -1, -1, dtype=np.int64)
    # signs[r, k] = +1 iff party k+1 contributes exp(+i phi) to row r
    signs = np.where((rows[:, None] >> shifts[None, :]) & 1 == 1, 1.0, -1.0)
    divisors = m ** shifts
    acc = np.zeros(dim, dtype=np.complex128)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        phis = angles[(idx[:, None] // divisors[None, :]) % m]
        coeffs = prefactor * np.cos(phis.sum(axis=1))
        acc += coeffs @ np.exp(1j * (phis @ signs.T))
    return acc
