# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the numerical hot loops.

Same signatures and semantics as `_ref`; that module is the contract of
record and the test suite runs both implementations against each other.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

from ghzbell.errors import NumericalError


cdef double _off_norm(double complex[:, ::1] a, Py_ssize_t n) noexcept:
    cdef Py_ssize_t p, q
    cdef double total = 0.0, re, im
    for p in range(n):
        for q in range(n):
            if p != q:
                re = a[p, q].real
                im = a[p, q].imag
                total += re * re + im * im
    return sqrt(total)


cdef void _rotate(double complex[:, ::1] a, Py_ssize_t n,
                  Py_ssize_t p, Py_ssize_t q) noexcept:
    """Zero a[p, q] (and a[q, p]) with the smaller-angle unitary rotation."""
    cdef double complex g = a[p, q]
    cdef double mag = sqrt(g.real * g.real + g.imag * g.imag)
    cdef double complex phase = g / mag
    cdef double tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    cdef double t
    if tau >= 0.0:
        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
    else:
        t = 1.0 / (tau - sqrt(1.0 + tau * tau))
    cdef double c = 1.0 / sqrt(1.0 + t * t)
    cdef double complex sp = (t * c) * phase
    cdef double complex spc = sp.conjugate()
    cdef double complex tp, tq
    cdef Py_ssize_t k
    for k in range(n):
        tp = a[p, k]
        tq = a[q, k]
        a[p, k] = c * tp - sp * tq
        a[q, k] = spc * tp + c * tq
    for k in range(n):
        tp = a[k, p]
        tq = a[k, q]
        a[k, p] = c * tp - spc * tq
        a[k, q] = sp * tp + c * tq
    a[p, q] = 0.0
    a[q, p] = 0.0


def hermitian_eigenvalues(matrix, double off_threshold=1e-13,
                          int max_sweeps=100):
    """All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi.

    See `_ref.hermitian_eigenvalues` for the full contract.
    """
    a_arr = np.array(matrix, dtype=np.complex128, order="C")
    if a_arr.ndim != 2 or a_arr.shape[0] != a_arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a_arr.shape}")
    cdef Py_ssize_t n = a_arr.shape[0]
    if n == 1:
        return a_arr.real.reshape(1).copy()
    cdef double complex[:, ::1] a = a_arr
    cdef Py_ssize_t sweep, p, q, k
    cdef double diag_sq = 0.0
    for k in range(n):
        diag_sq += a[k, k].real * a[k, k].real + a[k, k].imag * a[k, k].imag
    cdef double norm = sqrt(_off_norm(a, n) ** 2 + diag_sq)
    cdef double stop = off_threshold * max(1.0, norm)
    # Entries at or below stop/n are left alone: even a full triangle of
    # them keeps the off-diagonal norm within stop.
    cdef double skip = stop / n
    cdef double complex g
    cdef bint converged = False
    for sweep in range(max_sweeps):
        if _off_norm(a, n) <= stop:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                if sqrt(g.real * g.real + g.imag * g.imag) > skip:
                    _rotate(a, n, p, q)
    if not converged and _off_norm(a, n) > stop:
        raise NumericalError(
            f"Jacobi eigensolve still above off-norm {stop:g} "
            f"after {max_sweeps} sweeps"
        )
    return np.sort(np.ascontiguousarray(a_arr.diagonal().real))


def bell_antidiagonal_sum(int n_qubits, angles, double prefactor):
    """Anti-diagonal entries <r| B |2^N-1-r> of the summed Bell operator.

    See `_ref.bell_antidiagonal_sum` for the full contract.  The row-phase
    vector of each setting tuple is built by in-place doubling: appending
    party k multiplies the existing factors by exp(-i phi) into even slots
    and exp(+i phi) into odd slots, which is why party 1 ends up on the
    most significant index bit.
    """
    ang = np.ascontiguousarray(angles, dtype=np.float64)
    if ang.ndim != 1 or ang.size == 0:
        raise ValueError("angles must be a non-empty 1-d sequence")
    cdef double[::1] phi = ang
    cdef Py_ssize_t m = phi.shape[0]
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << n_qubits
    acc_arr = np.zeros(dim, dtype=np.complex128)
    cdef double complex[::1] acc = acc_arr
    work_arr = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] work = work_arr
    plus_arr = np.empty(m, dtype=np.complex128)
    minus_arr = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] eplus = plus_arr
    cdef double complex[::1] eminus = minus_arr
    digits_arr = np.zeros(n_qubits, dtype=np.intp)
    cdef Py_ssize_t[::1] digit = digits_arr
    cdef Py_ssize_t s, k, i, size
    for s in range(m):
        eplus[s] = cos(phi[s]) + 1j * sin(phi[s])
        eminus[s] = eplus[s].conjugate()
    cdef long long total = 1, tindex
    for k in range(n_qubits):
        total *= m
    cdef double angle_sum, coeff
    cdef double complex w, ep, em
    for tindex in range(total):
        angle_sum = 0.0
        for k in range(n_qubits):
            angle_sum += phi[digit[k]]
        coeff = prefactor * cos(angle_sum)
        work[0] = 1.0
        size = 1
        for k in range(n_qubits):
            ep = eplus[digit[k]]
            em = eminus[digit[k]]
            for i in range(size - 1, -1, -1):
                w = work[i]
                work[2 * i + 1] = w * ep
                work[2 * i] = w * em
            size *= 2
        for i in range(dim):
            acc[i] = acc[i] + coeff * work[i]
        # advance the setting tuple, last party fastest
        k = n_qubits - 1
        while k >= 0:
            digit[k] += 1
            if digit[k] < m:
                break
            digit[k] = 0
            k -= 1
    return acc_arr
