"""Monogamy of local quantum uncertainty: U(1|23) >= U(1|2) + U(1|3)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadPair, DimensionMismatch
from .linalg import PAULI, check_density, matrix_sqrt_psd, partial_trace
from .lqu import lqu
from .xstate import XState, to_dense

_PAIRS = ((1, 2), (1, 3), (2, 3))
_SLACK_TOL = 1e-9


@dataclass(frozen=True)
class MonogamyReport:
    """LQU of the 1|23 split, both pairwise LQUs, and the inequality slack."""

    u_1_23: float
    u_1_2: float
    u_1_3: float
    satisfied: bool
    slack: float


def reduce_pair(x: XState, pair) -> np.ndarray:
    """4x4 reduced density matrix of one qubit pair of an X state."""
    pair = tuple(sorted(int(q) for q in pair))
    if pair not in _PAIRS:
        raise BadPair(f"pair must be one of {_PAIRS}, got {pair!r}")
    return partial_trace(to_dense(x), set(pair))


def lqu_2q(rho: np.ndarray) -> float:
    """LQU of the first qubit of a two-qubit state: 1 - lambda_max(W).

    The observable side is sigma_i x 1_2 on the more significant qubit of
    the 4x4 input.
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"expected a 4x4 state, got {rho.shape}")
    S = matrix_sqrt_psd(rho)
    SH = [S @ np.kron(PAULI[i], PAULI[0]) for i in (1, 2, 3)]
    W = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(i, 3):
            W[i, j] = W[j, i] = np.trace(SH[i] @ SH[j])
    value = 1.0 - float(np.linalg.eigvalsh(W.real)[-1])
    return float(min(max(value, 0.0), 1.0))


def monogamy_check(x: XState) -> MonogamyReport:
    """Evaluate U(1|23) - U(1|2) - U(1|3) and the satisfaction flag."""
    u123 = lqu(x)
    u12 = lqu_2q(reduce_pair(x, (1, 2)))
    u13 = lqu_2q(reduce_pair(x, (1, 3)))
    slack = u123 - u12 - u13
    return MonogamyReport(
        u_1_23=u123, u_1_2=u12, u_1_3=u13,
        satisfied=bool(slack >= -_SLACK_TOL), slack=float(slack),
    )
