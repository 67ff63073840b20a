#!/usr/bin/env python3
"""Timing comparison of the two numerical kernels.

Runs the Jacobi eigensolver and the Bell-operator antidiagonal sum through
the NumPy reference implementation and, when built, the compiled extension,
with `numpy.linalg.eigvalsh` as an external baseline for the eigensolver.
Reports the best wall time over a few repeats.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ghzbell._kernels import _ref

try:
    from ghzbell._kernels import _fast
except ImportError:
    _fast = None


def best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    mat = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal(
        (dim, dim)
    )
    return (mat + mat.conj().T) / 2.0


def fmt(seconds: float) -> str:
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.3f} s "


def bench_eigensolver(dims, repeats: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    print("eigensolver (complex Hermitian, cyclic Jacobi)")
    for dim in dims:
        mat = random_hermitian(rng, dim)
        ref_t = best_time(lambda: _ref.hermitian_eigenvalues(mat), repeats)
        numpy_t = best_time(lambda: np.linalg.eigvalsh(mat), repeats)
        line = f"  dim {dim:4d}   reference {fmt(ref_t)}"
        if _fast is not None:
            fast_t = best_time(
                lambda: _fast.hermitian_eigenvalues(mat), repeats
            )
            line += f"   compiled {fmt(fast_t)}   x{ref_t / fast_t:5.1f}"
        line += f"   numpy {fmt(numpy_t)}"
        print(line)


def bench_bell_sum(cases, repeats: int) -> None:
    print("bell antidiagonal sum (all M^N setting tuples)")
    for n, m in cases:
        angles = np.pi * (np.arange(m) + 0.25) / m
        ref_t = best_time(
            lambda: _ref.bell_antidiagonal_sum(n, angles, 0.5), repeats
        )
        line = f"  N={n} M={m:3d} ({m**n:8d} terms)   reference {fmt(ref_t)}"
        if _fast is not None:
            fast_t = best_time(
                lambda: _fast.bell_antidiagonal_sum(n, angles, 0.5), repeats
            )
            line += f"   compiled {fmt(fast_t)}   x{ref_t / fast_t:5.1f}"
        print(line)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--dims", type=int, nargs="+", default=[16, 32, 64, 128],
        help="matrix sizes for the eigensolver benchmark",
    )
    parser.add_argument(
        "--repeats", type=int, default=3,
        help="repeats per measurement; the best time is reported",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--heavy", action="store_true",
        help="add a million-term case to the operator-sum benchmark",
    )
    args = parser.parse_args()

    backend = "missing (pure python only)" if _fast is None else "built"
    print(f"compiled extension: {backend}")
    bench_eigensolver(args.dims, args.repeats, args.seed)
    cases = [(3, 8), (4, 8), (5, 8), (6, 8)]
    if args.heavy:
        cases.append((6, 10))
    bench_bell_sum(cases, args.repeats)


if __name__ == "__main__":
    main()
