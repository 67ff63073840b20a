"""Dense-matrix ground truth for states, operators, and spectra.

Everything here works on explicit 2^N x 2^N complex matrices: building the
Bell operator by brute-force summation over all M^N setting tuples, partial
transposition over arbitrary bipartitions, a deterministic Hermitian
eigensolver, and the depolarizing map back onto the GHZ-diagonal family.
The closed forms elsewhere in the package are checked against this module,
never the other way round.

Guards: dense work is capped at 10 qubits (dimension 1024), operator sums
at 10^7 setting tuples.  Matrices are complex128 throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._kernels import bell_antidiagonal_sum, hermitian_eigenvalues
from .bell import BellScenario, coefficient, coefficient_scale
from .errors import NumericalError, ParseError
from .states import GhzDiagonalState, basis_pair

#: Dense operations refuse more qubits than this (dimension 1024).
DENSE_QUBIT_CAP = 10
#: Operator summation refuses more than this many setting tuples.
TERM_BUDGET = 10 ** 7
#: Claimed-Hermitian inputs may deviate from their adjoint by at most this.
HERMITICITY_TOL = 1e-12
#: Density matrices must have unit trace within this.
TRACE_TOL = 1e-10
#: ... and smallest eigenvalue above minus this.
PSD_TOL = 1e-10
#: Expectation values with a larger imaginary residue raise NumericalError.
IMAG_TOL = 1e-8

DENSE_FILE_HEADER = "dense"


def _check_qubits(n_qubits: int) -> int:
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits}")
    if n_qubits > DENSE_QUBIT_CAP:
        raise ValueError(
            f"dense operations are capped at {DENSE_QUBIT_CAP} qubits, "
            f"got {n_qubits}"
        )
    return 1 << n_qubits


def _qubits_of(matrix: np.ndarray) -> int:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    n_qubits = matrix.shape[0].bit_length() - 1
    if 1 << n_qubits != matrix.shape[0]:
        raise ValueError(f"dimension {matrix.shape[0]} is not a power of 2")
    _check_qubits(n_qubits)
    return n_qubits


def pair_basis_vector(n_qubits: int, j: int, sign: int = 1) -> np.ndarray:
    """Unit vector (e_{2j} + sign * e_{2^N-2j-1}) / sqrt(2) of pair j."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    _check_qubits(n_qubits)
    a, b = basis_pair(n_qubits, j)
    vec = np.zeros(1 << n_qubits, dtype=np.complex128)
    vec[a] = 1.0 / np.sqrt(2.0)
    vec[b] = sign / np.sqrt(2.0)
    return vec


def densify(state: GhzDiagonalState) -> np.ndarray:
    """Dense density matrix of a GHZ-diagonal state.

    The result has the characteristic X shape: diagonal entries plus one
    pair of anti-diagonal corner coherences (lambda0+ - lambda0-)/2.
    """
    dim = _check_qubits(state.n_qubits)
    rho = np.zeros((dim, dim), dtype=np.complex128)
    half_sum = 0.5 * (state.lambda0_plus + state.lambda0_minus)
    rho[0, 0] = rho[dim - 1, dim - 1] = half_sum
    rho[0, dim - 1] = rho[dim - 1, 0] = 0.5 * state.delta
    for j, weight in state.lambdas.items():
        a, b = basis_pair(state.n_qubits, j)
        rho[a, a] = rho[b, b] = weight
    return rho


def analyzer_matrix(angle: float) -> np.ndarray:
    """Equatorial qubit observable sigma_x cos(angle) + sigma_y sin(angle)."""
    off = np.exp(1j * angle)
    return np.array([[0.0, off.conjugate()], [off, 0.0]], dtype=np.complex128)


def _corner_flip(dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[0, dim - 1] = out[dim - 1, 0] = 1.0
    return out


def _check_budget(scenario: BellScenario) -> int:
    dim = _check_qubits(scenario.n_qubits)
    terms = scenario.n_settings ** scenario.n_qubits
    if terms > TERM_BUDGET:
        raise ValueError(
            f"operator sum needs {terms} setting tuples, "
            f"budget is {TERM_BUDGET}"
        )
    return dim


def bell_sum_operator(scenario: BellScenario) -> np.ndarray:
    """Bell operator built by summing all M^N weighted observable products.

    Each product of equatorial observables is nonzero only at bit-complement
    index pairs, so the sum is assembled from its anti-diagonal alone; the
    heavy loop lives in the kernel module.
    """
    dim = _check_budget(scenario)
    corner = bell_antidiagonal_sum(
        scenario.n_qubits, scenario.angles(), coefficient_scale(scenario)
    )
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[np.arange(dim), np.arange(dim)[::-1]] = corner
    return out


def bell_sum_operator_direct(scenario: BellScenario) -> np.ndarray:
    """Kronecker-product route to the same operator sum.

    Costs O(M^N * 4^N) and exists purely as a second, structurally
    independent implementation to check `bell_sum_operator` against.
    """
    dim = _check_budget(scenario)
    single = [analyzer_matrix(a) for a in scenario.angles()]
    out = np.zeros((dim, dim), dtype=np.complex128)
    for settings in itertools.product(
        range(scenario.n_settings), repeat=scenario.n_qubits
    ):
        term = np.ones((1, 1), dtype=np.complex128)
        for m in settings:
            term = np.kron(term, single[m])
        out += coefficient(scenario, settings) * term
    return out


def bell_diagonal_operator(scenario: BellScenario) -> np.ndarray:
    """Two-eigenvalue closed form scale * (corner flip) of the Bell operator.

    Diagonal in the GHZ basis: scale on the +/- pair-0 projectors with
    opposite signs, zero elsewhere; as a matrix, just the two extreme
    anti-diagonal corners set to scale.
    """
    dim = _check_qubits(scenario.n_qubits)
    return scenario.scale * _corner_flip(dim)


def ppt_operator(n_qubits: int) -> np.ndarray:
    """PPT-inequality operator: 2^(N-1) times the corner flip."""
    dim = _check_qubits(n_qubits)
    return 2.0 ** (n_qubits - 1) * _corner_flip(dim)


@dataclass(frozen=True)
class OperatorComparison:
    """Entrywise comparison of the summed and closed-form Bell operators."""

    max_abs_deviation: float
    equal: bool


def compare_bell_operators(
    n_qubits: int, n_settings: int, tol: float = 1e-9
) -> OperatorComparison:
    """Compare `bell_sum_operator` and `bell_diagonal_operator` entrywise.

    The two constructions agree exactly up to floating-point roundoff; any
    larger deviation would mean the closed form is wrong, so `equal` simply
    reports max deviation <= tol.
    """
    scenario = BellScenario(n_qubits, n_settings)
    deviation = np.abs(
        bell_sum_operator(scenario) - bell_diagonal_operator(scenario)
    ).max()
    return OperatorComparison(float(deviation), bool(deviation <= tol))


def expectation(operator: np.ndarray, rho: np.ndarray) -> float:
    """Real expectation value tr(operator @ rho).

    The trace of a product of Hermitian matrices is real; residues below
    IMAG_TOL are discarded (they are pure roundoff, typically < 1e-10),
    anything larger raises NumericalError as a sign of non-Hermitian input.
    """
    operator = np.asarray(operator, dtype=np.complex128)
    rho = np.asarray(rho, dtype=np.complex128)
    if operator.shape != rho.shape:
        raise ValueError(
            f"shape mismatch: operator {operator.shape}, state {rho.shape}"
        )
    _qubits_of(operator)
    value = complex(np.einsum("ij,ji->", operator, rho))
    if abs(value.imag) > IMAG_TOL:
        raise NumericalError(
            f"expectation has imaginary residue {value.imag:g}"
        )
    return value.real


def partial_transpose(matrix: np.ndarray, index_mask: int) -> np.ndarray:
    """Transpose the qubits selected by an index-bit mask.

    ``index_mask`` selects qubits by their computational-index bits (party i
    carries bit 2^(N-i)).  Entry (a, b) of the result is entry (a', b') of
    the input, where a', b' swap the masked bits of a and b.  The map is an
    involution and preserves trace and Hermiticity.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    n_qubits = _qubits_of(matrix)
    dim = 1 << n_qubits
    if not 1 <= index_mask <= dim - 2:
        raise ValueError(
            f"transpose mask {index_mask} must select a proper nonempty "
            f"subset of {n_qubits} qubits"
        )
    idx = np.arange(dim)
    keep_a = idx[:, None] & ~index_mask
    keep_b = idx[None, :] & ~index_mask
    swap_a = idx[:, None] & index_mask
    swap_b = idx[None, :] & index_mask
    return matrix[keep_a | swap_b, keep_b | swap_a]


def eigenvalues(matrix: np.ndarray, off_threshold: float = 1e-13) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Validates Hermiticity to HERMITICITY_TOL, then runs the deterministic
    Jacobi kernel (compiled when available).
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    dev = np.abs(matrix - matrix.conj().T).max()
    if dev > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian: max deviation {dev:g}")
    return hermitian_eigenvalues(matrix, off_threshold=off_threshold)


def min_eigenvalue(matrix: np.ndarray, tol: float = 1e-10) -> float:
    """Smallest eigenvalue of a Hermitian matrix, accurate to tol.

    The Jacobi stopping threshold is tightened so that the off-diagonal
    norm at convergence, which bounds the eigenvalue error, is at most tol.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    matrix = np.asarray(matrix, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(matrix)))
    off_threshold = min(1e-13, tol / scale)
    return float(eigenvalues(matrix, off_threshold=off_threshold)[0])


def depolarize(rho: np.ndarray) -> GhzDiagonalState:
    """Project a density matrix onto the GHZ-diagonal family.

    The physical map averages over the local operations that leave the
    family invariant; the surviving data are the basis-pair overlaps
        lambda0+/- = <pair0 +/-| rho |pair0 +/->,
        lambda_j   = (<pair j +| rho |pair j +> + <pair j -| rho |pair j ->)/2,
    which reduce to diagonal entries plus the extreme corner coherence.
    Input must be a density matrix (Hermitian, unit trace, positive
    semidefinite within the documented tolerances); `densify` composed with
    this map is the identity on GhzDiagonalState.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    n_qubits = _qubits_of(rho)
    dim = 1 << n_qubits
    dev = np.abs(rho - rho.conj().T).max()
    if dev > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian: max deviation {dev:g}")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValueError(f"trace is {trace:g}, expected 1")
    smallest = min_eigenvalue(rho, tol=PSD_TOL)
    if smallest < -PSD_TOL:
        raise ValueError(f"matrix is not positive: eigenvalue {smallest:g}")
    half_sum = 0.5 * (rho[0, 0].real + rho[dim - 1, dim - 1].real)
    coherence = rho[0, dim - 1].real
    lambdas = {}
    for j in range(1, dim // 2):
        a, b = basis_pair(n_qubits, j)
        weight = 0.5 * (rho[a, a].real + rho[b, b].real)
        if weight:
            lambdas[j] = weight
    return GhzDiagonalState(
        n_qubits, half_sum + coherence, half_sum - coherence, lambdas
    )


def format_dense_file(matrix: np.ndarray) -> str:
    """Text form of a dense matrix; inverse of `parse_dense_file`."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    n_qubits = _qubits_of(matrix)
    lines = [DENSE_FILE_HEADER, f"N {n_qubits}"]
    for row in matrix:
        lines.append(
            " ".join(f"{v.real:.17g},{v.imag:.17g}" for v in row)
        )
    return "\n".join(lines) + "\n"


def parse_dense_file(text: str) -> np.ndarray:
    """Parse the text form of a dense matrix.

    Layout: a ``dense`` header line, ``N <int>``, then 2^N rows of 2^N
    whitespace-separated ``re,im`` entries.  Blank lines and ``#`` comments
    are ignored.
    """
    lines = [
        stripped
        for raw in text.splitlines()
        if (stripped := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise ParseError("empty matrix file")
    if lines[0] != DENSE_FILE_HEADER:
        raise ParseError(
            f"expected header {DENSE_FILE_HEADER!r}, got {lines[0]!r}"
        )
    if len(lines) < 2:
        raise ParseError("matrix file ends before the N header")
    parts = lines[1].split()
    if len(parts) != 2 or parts[0] != "N":
        raise ParseError(f"expected 'N <int>', got {lines[1]!r}")
    try:
        n_qubits = int(parts[1])
    except ValueError as exc:
        raise ParseError(f"bad qubit count in {lines[1]!r}: {exc}") from None
    if n_qubits < 2:
        raise ParseError(f"need at least 2 qubits, got N {n_qubits}")
    _check_qubits(n_qubits)
    dim = 1 << n_qubits
    rows = lines[2:]
    if len(rows) != dim:
        raise ParseError(f"expected {dim} matrix rows, found {len(rows)}")
    out = np.zeros((dim, dim), dtype=np.complex128)
    for r, line in enumerate(rows):
        entries = line.split()
        if len(entries) != dim:
            raise ParseError(
                f"row {r} has {len(entries)} entries, expected {dim}"
            )
        for c, token in enumerate(entries):
            halves = token.split(",")
            if len(halves) != 2:
                raise ParseError(
                    f"entry {token!r} in row {r} is not 're,im'"
                )
            try:
                out[r, c] = complex(float(halves[0]), float(halves[1]))
            except ValueError as exc:
                raise ParseError(
                    f"bad entry {token!r} in row {r}: {exc}"
                ) from None
    return out


def read_dense_file(path) -> np.ndarray:
    """Read a dense matrix from a file path."""
    with open(path, encoding="utf-8") as handle:
        return parse_dense_file(handle.read())


def write_dense_file(matrix: np.ndarray, path) -> None:
    """Write a dense matrix to a file path."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_dense_file(matrix))
