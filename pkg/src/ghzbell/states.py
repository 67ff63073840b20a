"""GHZ-diagonal state family: weight vectors, named states, and file I/O.

An N-qubit GHZ-diagonal state is a mixture over the orthonormal basis of
paired superpositions (|a> +/- |b>)/sqrt(2) in which the two computational
indices of a pair are bitwise complements of each other.  Pair 0 connects
|00...0> and |11...1> and its two signed members may carry distinct weights
(``lambda0_plus`` and ``lambda0_minus``); both signed members of any pair
j >= 1 share a single weight, so the state is fixed by
(lambda0+, lambda0-, {lambda_j}) with

    lambda0+ + lambda0- + 2 * sum_j lambda_j = 1.

Index convention used throughout the package: party 1 is the most
significant bit of a computational-basis index and party N the least
significant.  The first member of pair j sits at index 2j (qubit N in state
|0>), its partner at 2^N - 2j - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import ParseError

#: Weight magnitudes at or below this are treated as exact zeros.
CLAMP_TOL = 1e-12
#: Allowed deviation of the total weight from 1.
NORM_TOL = 1e-9

LAMBDA_FILE_HEADER = "ghz-diagonal"


def _format_number(x: float) -> str:
    """Render a float with 12 significant digits, minus trailing noise."""
    return format(float(x), ".12g")


def basis_pair(n_qubits: int, j: int) -> tuple[int, int]:
    """Computational-basis indices (2j, 2^N - 2j - 1) spanned by pair j."""
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits}")
    if not 0 <= j < 1 << (n_qubits - 1):
        raise ValueError(
            f"pair index {j} outside [0, {(1 << (n_qubits - 1)) - 1}]"
        )
    return 2 * j, (1 << n_qubits) - 2 * j - 1


def _clean_weight(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if value <= CLAMP_TOL:
        if value < -CLAMP_TOL:
            raise ValueError(f"{name} is negative: {value!r}")
        return 0.0
    return value


@dataclass(frozen=True)
class GhzDiagonalState:
    """Validated weight vector of an N-qubit GHZ-diagonal state.

    Constructing an instance clamps weight magnitudes at or below
    ``CLAMP_TOL`` to zero, rejects anything more negative, and checks the
    normalization sum against 1 within ``NORM_TOL``.  ``lambdas`` is sparse:
    an absent pair index means weight zero.  Instances are immutable.
    """

    n_qubits: int
    lambda0_plus: float
    lambda0_minus: float = 0.0
    lambdas: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n_qubits < 2:
            raise ValueError(f"need at least 2 qubits, got {self.n_qubits}")
        top = 1 << (self.n_qubits - 1)
        plus = _clean_weight("lambda0+", self.lambda0_plus)
        minus = _clean_weight("lambda0-", self.lambda0_minus)
        cleaned: dict[int, float] = {}
        for j in sorted(self.lambdas):
            if not 1 <= j < top:
                raise ValueError(f"pair index {j} outside [1, {top - 1}]")
            weight = _clean_weight(f"lambda_{j}", self.lambdas[j])
            if weight:
                cleaned[j] = weight
        total = plus + minus + 2.0 * math.fsum(cleaned.values())
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "lambda0_plus", plus)
        object.__setattr__(self, "lambda0_minus", minus)
        object.__setattr__(self, "lambdas", MappingProxyType(cleaned))

    @property
    def delta(self) -> float:
        """Difference lambda0+ - lambda0- of the two pair-0 weights."""
        return self.lambda0_plus - self.lambda0_minus

    def weight(self, j: int) -> float:
        """Weight of pair j for 1 <= j < 2^(N-1); zero when absent."""
        top = 1 << (self.n_qubits - 1)
        if not 1 <= j < top:
            raise ValueError(f"pair index {j} outside [1, {top - 1}]")
        return self.lambdas.get(j, 0.0)

    def support(self) -> Iterator[int]:
        """Pair indices j >= 1 with nonzero weight, ascending."""
        return iter(self.lambdas)


def ghz_pure(n_qubits: int, sign: int = 1) -> GhzDiagonalState:
    """Pure N-qubit GHZ state (|00...0> + sign |11...1>)/sqrt(2)."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if sign == 1:
        return GhzDiagonalState(n_qubits, 1.0, 0.0)
    return GhzDiagonalState(n_qubits, 0.0, 1.0)


def maximally_mixed(n_qubits: int) -> GhzDiagonalState:
    """The maximally mixed state on N qubits.

    Every basis state carries weight 2^-N, so the weight dict has 2^(N-1)-1
    entries; keep N modest.
    """
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits}")
    w = 0.5 ** n_qubits
    return GhzDiagonalState(
        n_qubits, w, w, {j: w for j in range(1, 1 << (n_qubits - 1))}
    )


def bell_witness_support(n_qubits: int) -> tuple[int, ...]:
    """Pair indices {3 * 2^k : 0 <= k <= N-3} used by `bell_witness_state`."""
    if n_qubits < 3:
        raise ValueError(f"need at least 3 qubits, got {n_qubits}")
    return tuple(3 << k for k in range(n_qubits - 2))


def bell_witness_state(n_qubits: int) -> GhzDiagonalState:
    """Bound-entangled N-qubit state used as the nonlocality witness.

    Pair 0 gets weight 1/(N-1) on its + member only, and each of the N-2
    pair indices in `bell_witness_support` gets weight 1/(2(N-1)).  Every
    bipartite split of the state is non-distillable, yet for N >= 4 the
    state violates the M-setting Bell inequality once M >= 6.
    """
    share = 1.0 / (n_qubits - 1)
    lambdas = {j: 0.5 * share for j in bell_witness_support(n_qubits)}
    return GhzDiagonalState(n_qubits, share, 0.0, lambdas)


def ppt_witness_state() -> GhzDiagonalState:
    """Three-qubit bound-entangled state violating the PPT inequality.

    Weights: lambda0+ = 1/3, lambda_1 = lambda_3 = 1/6.  Its value under
    the PPT inequality is 4/3 against a bound of 1.
    """
    return GhzDiagonalState(3, 1.0 / 3.0, 0.0, {1: 1.0 / 6.0, 3: 1.0 / 6.0})


def format_lambda_file(state: GhzDiagonalState) -> str:
    """Canonical text form of a state; inverse of `parse_lambda_file`.

    Numbers are written with 12 significant digits and pair lines are
    sorted by index, so equal states always format identically.
    """
    lines = [
        LAMBDA_FILE_HEADER,
        f"N {state.n_qubits}",
        f"lambda0+ {_format_number(state.lambda0_plus)}",
        f"lambda0- {_format_number(state.lambda0_minus)}",
    ]
    for j in state.support():
        lines.append(f"lambda {j} {_format_number(state.lambdas[j])}")
    return "\n".join(lines) + "\n"


def parse_lambda_file(text: str) -> GhzDiagonalState:
    """Parse the text form of a GHZ-diagonal state.

    Layout: a ``ghz-diagonal`` header line, then ``N <int>``,
    ``lambda0+ <float>``, ``lambda0- <float>`` in that order, then any
    number of ``lambda <j> <float>`` lines.  Blank lines and ``#`` comments
    are ignored.  Raises ParseError for malformed content (including
    duplicate or out-of-range pair indices); weight validation errors
    propagate from the state constructor as ValueError.
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty state file")
    if lines[0] != LAMBDA_FILE_HEADER:
        raise ParseError(
            f"expected header {LAMBDA_FILE_HEADER!r}, got {lines[0]!r}"
        )
    if len(lines) < 4:
        raise ParseError("state file ends before the three weight headers")
    n_qubits = _parse_field(lines[1], "N", int)
    if n_qubits < 2:
        raise ParseError(f"need at least 2 qubits, got N {n_qubits}")
    plus = _parse_field(lines[2], "lambda0+", float)
    minus = _parse_field(lines[3], "lambda0-", float)
    top = 1 << (n_qubits - 1)
    lambdas: dict[int, float] = {}
    for line in lines[4:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "lambda":
            raise ParseError(f"expected 'lambda <j> <value>', got {line!r}")
        try:
            j = int(parts[1])
            value = float(parts[2])
        except ValueError as exc:
            raise ParseError(f"bad lambda line {line!r}: {exc}") from None
        if not 1 <= j < top:
            raise ParseError(f"pair index {j} outside [1, {top - 1}]")
        if j in lambdas:
            raise ParseError(f"duplicate pair index {j}")
        lambdas[j] = value
    return GhzDiagonalState(n_qubits, plus, minus, lambdas)


def read_lambda_file(path) -> GhzDiagonalState:
    """Read a GHZ-diagonal state from a file path."""
    with open(path, encoding="utf-8") as handle:
        return parse_lambda_file(handle.read())


def write_lambda_file(state: GhzDiagonalState, path) -> None:
    """Write a state to a file path in canonical form."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_lambda_file(state))


def _content_lines(text: str) -> list[str]:
    """Lines with comments stripped and blanks dropped."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_field(line: str, name: str, convert):
    parts = line.split()
    if len(parts) != 2 or parts[0] != name:
        raise ParseError(f"expected '{name} <value>', got {line!r}")
    try:
        return convert(parts[1])
    except ValueError as exc:
        raise ParseError(f"bad value in {line!r}: {exc}") from None
