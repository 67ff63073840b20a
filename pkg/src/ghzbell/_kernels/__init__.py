"""Numerical kernel selection.

Two implementations of the same two functions exist: a compiled Cython
module (`_fast`) and a NumPy reference (`_ref`).  The compiled one is
preferred when it imported cleanly; setting the environment variable
``GHZBELL_PURE_PYTHON`` to a non-empty value before import forces the
reference kernels.  ``BACKEND`` records which one is active.
"""

from __future__ import annotations

import os

from . import _ref

if os.environ.get("GHZBELL_PURE_PYTHON"):
    _impl = _ref
    BACKEND = "reference"
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _ref
        BACKEND = "reference"

hermitian_eigenvalues = _impl.hermitian_eigenvalues
bell_antidiagonal_sum = _impl.bell_antidiagonal_sum

__all__ = ["BACKEND", "bell_antidiagonal_sum", "hermitian_eigenvalues"]
