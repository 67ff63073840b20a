"""Multi-setting Bell inequalities on GHZ-diagonal states, in closed form.

Scenario: each of N parties measures one of M analyzer directions in the
equatorial plane of the Bloch sphere, setting m meaning the observable
sigma_x cos(phi_m) + sigma_y sin(phi_m).  All parties share the angle list

    phi_m = (pi / M) m + (pi / (2 M N)) eta,      m = 0 .. M-1,

where the offset selector eta is 2 when M is even and N odd, and 1
otherwise.  The Bell operator weights the full product of observables for
settings (m_1, ..., m_N) with

    c = sin(pi/2M)^N / cos(pi/2M) * cos(phi_{m_1} + ... + phi_{m_N}),

and its extreme eigenvalues are +/- scale with

    scale = (M^N / 2) * sin(pi/2M)^N / cos(pi/2M).

On a GHZ-diagonal state the expectation collapses to scale * delta, with
delta the pair-0 weight difference, so everything in this module is plain
arithmetic on the weights.  Local realistic models obey |value| <= 1; a
value strictly above 1 in magnitude certifies nonlocality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .states import GhzDiagonalState


def operator_scale(n_qubits: int, n_settings: int) -> float:
    """Largest eigenvalue (M^N / 2) sin^N(pi/2M) / cos(pi/2M) of the operator.

    Evaluated as (M sin(pi/2M))^N / (2 cos(pi/2M)): the base lies in
    (sqrt(2), pi/2) for every M >= 2, so neither factor overflows or
    underflows on its own and the form is stable for any N of interest.
    """
    _check_scenario(n_qubits, n_settings)
    x = math.pi / (2.0 * n_settings)
    return (n_settings * math.sin(x)) ** n_qubits / (2.0 * math.cos(x))


@dataclass(frozen=True)
class BellScenario:
    """N parties with M shared equatorial settings each.

    `eta` and `scale` are derived on construction; `angle(m)` returns the
    analyzer angle of setting m (identical for every party).
    """

    n_qubits: int
    n_settings: int
    eta: int = field(init=False)
    scale: float = field(init=False)

    def __post_init__(self) -> None:
        _check_scenario(self.n_qubits, self.n_settings)
        eta = 2 if self.n_settings % 2 == 0 and self.n_qubits % 2 == 1 else 1
        object.__setattr__(self, "eta", eta)
        object.__setattr__(
            self, "scale", operator_scale(self.n_qubits, self.n_settings)
        )

    def angle(self, m: int) -> float:
        """Analyzer angle phi_m of setting m."""
        if not 0 <= m < self.n_settings:
            raise ValueError(
                f"setting {m} outside [0, {self.n_settings - 1}]"
            )
        return (math.pi / self.n_settings) * m + (
            math.pi / (2.0 * self.n_settings * self.n_qubits)
        ) * self.eta

    def angles(self) -> tuple[float, ...]:
        """All M analyzer angles in setting order."""
        return tuple(self.angle(m) for m in range(self.n_settings))


def coefficient_scale(scenario: BellScenario) -> float:
    """Magnitude factor sin^N(pi/2M) / cos(pi/2M) common to all coefficients."""
    x = math.pi / (2.0 * scenario.n_settings)
    return math.sin(x) ** scenario.n_qubits / math.cos(x)


def coefficient(scenario: BellScenario, settings: Sequence[int]) -> float:
    """Coefficient of the observable product for one setting tuple."""
    if len(settings) != scenario.n_qubits:
        raise ValueError(
            f"expected {scenario.n_qubits} settings, got {len(settings)}"
        )
    total = math.fsum(scenario.angle(m) for m in settings)
    return coefficient_scale(scenario) * math.cos(total)


def bell_value(state: GhzDiagonalState, scenario: BellScenario) -> float:
    """Expectation value of the Bell operator on a GHZ-diagonal state.

    Equal to scale * (lambda0+ - lambda0-); no operator is ever built.
    """
    if state.n_qubits != scenario.n_qubits:
        raise ValueError(
            f"state has {state.n_qubits} qubits, scenario expects "
            f"{scenario.n_qubits}"
        )
    return scenario.scale * state.delta


def violates(value: float) -> bool:
    """Whether a Bell or PPT value breaks the local bound (strictly)."""
    return abs(value) > 1.0


def witness_bell_value(n_qubits: int, n_settings: int) -> float:
    """Bell value scale / (N - 1) of the bound-entangled witness state."""
    if n_qubits < 3:
        raise ValueError(f"witness state needs at least 3 qubits, got {n_qubits}")
    return operator_scale(n_qubits, n_settings) / (n_qubits - 1)


def large_m_limit(n_qubits: int) -> float:
    """Limit pi^N / (2^(N+1) (N-1)) of the witness Bell value as M grows."""
    if n_qubits < 3:
        raise ValueError(f"witness state needs at least 3 qubits, got {n_qubits}")
    return math.pi ** n_qubits / (2.0 ** (n_qubits + 1) * (n_qubits - 1))


def min_violating_m(n_qubits: int, m_max: int) -> int | None:
    """Smallest M in [2, m_max] whose witness Bell value exceeds 1.

    Returns None when no setting count up to m_max gives a violation.
    """
    if n_qubits < 3:
        raise ValueError(f"witness state needs at least 3 qubits, got {n_qubits}")
    if m_max < 2:
        raise ValueError(f"m_max must be at least 2, got {m_max}")
    for m in range(2, m_max + 1):
        if witness_bell_value(n_qubits, m) > 1.0:
            return m
    return None


def ppt_value(state: GhzDiagonalState) -> float:
    """Expectation 2^(N-1) * delta of the PPT inequality operator.

    The operator flips the two extreme computational indices and scales by
    2^(N-1); any state with positive partial transposes across every
    bipartite split satisfies |value| <= 1.
    """
    return 2.0 ** (state.n_qubits - 1) * state.delta


def _check_scenario(n_qubits: int, n_settings: int) -> None:
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits}")
    if n_settings < 2:
        raise ValueError(f"need at least 2 settings, got {n_settings}")
