"""Bipartite splits: indexing, distillability, counting, and certificates.

A bipartite split of N parties is a two-set partition; the side containing
the last party is indexed by an integer j in [1, 2^(N-1)): party i < N sits
opposite the last party exactly when bit 2^(N-i-1) of j is set.  For a
GHZ-diagonal state, pure entanglement is distillable across split j exactly
when 2 lambda_j < delta, and a violation of the M-setting Bell inequality
forces at least floor(2^(N-1) - scale + 1) splits to be distillable.

The bound-entanglement certificate combines three ingredients: evidence
that the state is entangled (a Bell violation, or a negative partial
transpose across some split found densely), dense verification that every
split classified non-distillable by the weights really is PPT, and the
observation that when every pair of parties is separated by some PPT split,
no pair can ever distill a maximally entangled pair between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from . import oracle
from .bell import BellScenario, bell_value, violates
from .states import GhzDiagonalState

#: PT minimum eigenvalues below minus this count as NPT evidence.
NPT_CUTOFF = 1e-12
#: Default PPT acceptance: PT minimum eigenvalue at or above minus this.
PPT_TOL = 1e-10
#: Absorbs sub-ulp noise in the floor bound at exact-integer boundaries.
_FLOOR_GUARD = 1e-9


@dataclass(frozen=True)
class BipartiteSplit:
    """One two-set partition of the parties 1..N, indexed by j."""

    n_qubits: int
    j: int

    def __post_init__(self) -> None:
        if self.n_qubits < 2:
            raise ValueError(f"need at least 2 qubits, got {self.n_qubits}")
        if not 1 <= self.j < 1 << (self.n_qubits - 1):
            raise ValueError(
                f"split index {self.j} outside "
                f"[1, {(1 << (self.n_qubits - 1)) - 1}]"
            )

    @property
    def side_other(self) -> frozenset[int]:
        """Parties opposite the last party: i with bit 2^(N-i-1) of j set."""
        n = self.n_qubits
        return frozenset(
            i for i in range(1, n) if self.j >> (n - i - 1) & 1
        )

    @property
    def side_with_last(self) -> frozenset[int]:
        """Parties grouped with party N."""
        return frozenset(range(1, self.n_qubits + 1)) - self.side_other

    @property
    def transpose_mask(self) -> int:
        """Index-bit mask of side_other, for the dense partial transpose.

        Party i carries index bit 2^(N-i) while its split bit is 2^(N-i-1),
        so the index mask is just j shifted up one bit.
        """
        return self.j << 1

    def separates(self, i: int, k: int) -> bool:
        """Whether parties i and k end up on opposite sides."""
        for party in (i, k):
            if not 1 <= party <= self.n_qubits:
                raise ValueError(
                    f"party {party} outside [1, {self.n_qubits}]"
                )
        if i == k:
            raise ValueError(f"parties must differ, both are {i}")
        other = self.side_other
        return (i in other) != (k in other)

    def label(self) -> str:
        """Readable partition label, side with the last party first."""
        def side(parties: frozenset[int]) -> str:
            return "{" + ",".join(str(p) for p in sorted(parties)) + "}"

        return f"{side(self.side_with_last)}|{side(self.side_other)}"


def split_from_index(n_qubits: int, j: int) -> BipartiteSplit:
    """The split with index j; j=0 (no split at all) is rejected."""
    return BipartiteSplit(n_qubits, j)


@lru_cache(maxsize=None)
def all_splits(n_qubits: int) -> tuple[BipartiteSplit, ...]:
    """Every bipartite split of N parties, ascending in j."""
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits}")
    return tuple(
        BipartiteSplit(n_qubits, j)
        for j in range(1, 1 << (n_qubits - 1))
    )


def is_distillable_split(state: GhzDiagonalState, j: int) -> bool:
    """Whether entanglement is distillable across split j: 2 lambda_j < delta.

    The inequality is strict; the boundary 2 lambda_j = delta (where the
    witness states sit) classifies as not distillable.
    """
    return 2.0 * state.weight(j) < state.delta


def distillable_floor(scenario: BellScenario) -> int:
    """Guaranteed number floor(2^(N-1) - scale + 1) of distillable splits.

    Any state whose Bell value exceeds 1 in this scenario has at least this
    many distillable splits.  A 1e-9 guard keeps the floor stable when the
    argument is an exact integer up to roundoff (e.g. N=3, M=2, scale
    exactly 2).
    """
    raw = 2.0 ** (scenario.n_qubits - 1) - scenario.scale + 1.0
    return math.floor(raw + _FLOOR_GUARD)


@dataclass(frozen=True)
class SplitRecord:
    """Classification of one split of a particular state."""

    split: BipartiteSplit
    double_weight: float
    distillable: bool

    @property
    def j(self) -> int:
        return self.split.j


@dataclass(frozen=True)
class SplitCensus:
    """Distillability classification of every split of one state.

    `floor_bound`, `bell_value` and `consistent` are populated only when a
    scenario was supplied; `consistent` is False only on a counterexample
    to "violation implies at least floor_bound distillable splits".
    """

    n_qubits: int
    delta: float
    records: tuple[SplitRecord, ...]
    floor_bound: int | None = None
    bell_value: float | None = None
    consistent: bool | None = None

    @property
    def distillable_count(self) -> int:
        return sum(1 for r in self.records if r.distillable)

    @property
    def distillable_indices(self) -> tuple[int, ...]:
        return tuple(r.j for r in self.records if r.distillable)


def census(
    state: GhzDiagonalState, scenario: BellScenario | None = None
) -> SplitCensus:
    """Classify every split of a state; optionally check the counting bound."""
    records = tuple(
        SplitRecord(split, 2.0 * state.weight(split.j),
                    is_distillable_split(state, split.j))
        for split in all_splits(state.n_qubits)
    )
    if scenario is None:
        return SplitCensus(state.n_qubits, state.delta, records)
    value = bell_value(state, scenario)
    bound = distillable_floor(scenario)
    count = sum(1 for r in records if r.distillable)
    consistent = count >= bound if violates(value) else True
    return SplitCensus(
        state.n_qubits, state.delta, records, bound, value, consistent
    )


def pair_coverage(
    n_qubits: int, ppt_splits: tuple[BipartiteSplit, ...]
) -> dict[tuple[int, int], int | None]:
    """First PPT split separating each unordered party pair, else None."""
    coverage: dict[tuple[int, int], int | None] = {}
    for i in range(1, n_qubits + 1):
        for k in range(i + 1, n_qubits + 1):
            coverage[i, k] = next(
                (s.j for s in ppt_splits if s.separates(i, k)), None
            )
    return coverage


@dataclass(frozen=True)
class BoundEntanglementCertificate:
    """Machine-checked evidence that a state is entangled but undistillable.

    `evidence_kind` is "bell-violation" (value in `evidence_value`) or
    "npt-split" (index in `npt_split`, eigenvalue in `evidence_value`), or
    None when no entanglement evidence was found.  `ppt_eigenvalues` maps
    each densely verified PPT split to its minimum PT eigenvalue;
    `failed_splits` lists splits the weights classify as non-distillable
    but whose dense check came back negative (any entry invalidates the
    certificate).  `coverage` maps every unordered party pair to a
    verified-PPT split separating it, or None.
    """

    n_qubits: int
    evidence_kind: str | None
    evidence_value: float | None
    npt_split: int | None
    ppt_eigenvalues: Mapping[int, float]
    failed_splits: tuple[int, ...]
    coverage: Mapping[tuple[int, int], int | None]
    valid: bool

    @property
    def ppt_splits(self) -> tuple[int, ...]:
        return tuple(sorted(self.ppt_eigenvalues))


def certify_bound_entangled(
    state: GhzDiagonalState,
    scenario: BellScenario | None = None,
    tol: float = PPT_TOL,
) -> BoundEntanglementCertificate:
    """Assemble a bound-entanglement certificate for a GHZ-diagonal state.

    Evidence of entanglement comes from the Bell value when a scenario is
    given and violated, otherwise from the most negative dense PT
    eigenvalue across all splits (NPT evidence).  PPT membership of each
    split the weights classify as non-distillable is then verified densely
    (minimum PT eigenvalue >= -tol), never inferred from the weights.  The
    certificate is valid when evidence exists, every claimed-PPT split
    verified, and every party pair is separated by some verified split.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    rho = oracle.densify(state)
    min_eigs: dict[int, float] = {}
    for split in all_splits(state.n_qubits):
        transposed = oracle.partial_transpose(rho, split.transpose_mask)
        min_eigs[split.j] = oracle.min_eigenvalue(transposed, tol=tol)

    evidence_kind: str | None = None
    evidence_value: float | None = None
    npt_split: int | None = None
    if scenario is not None:
        value = bell_value(state, scenario)
        if violates(value):
            evidence_kind = "bell-violation"
            evidence_value = value
    if evidence_kind is None:
        worst = min(min_eigs, key=min_eigs.get)
        if min_eigs[worst] < -NPT_CUTOFF:
            evidence_kind = "npt-split"
            evidence_value = min_eigs[worst]
            npt_split = worst

    ppt_eigenvalues: dict[int, float] = {}
    failed: list[int] = []
    for split in all_splits(state.n_qubits):
        if is_distillable_split(state, split.j):
            continue
        if min_eigs[split.j] >= -tol:
            ppt_eigenvalues[split.j] = min_eigs[split.j]
        else:
            failed.append(split.j)

    verified = tuple(
        split for split in all_splits(state.n_qubits)
        if split.j in ppt_eigenvalues
    )
    coverage = pair_coverage(state.n_qubits, verified)
    valid = (
        evidence_kind is not None
        and not failed
        and all(j is not None for j in coverage.values())
    )
    return BoundEntanglementCertificate(
        state.n_qubits,
        evidence_kind,
        evidence_value,
        npt_split,
        ppt_eigenvalues,
        tuple(failed),
        coverage,
        valid,
    )
