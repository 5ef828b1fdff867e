"""Single-qubit Kraus channels applied identically to all three qubits,
plus the published closed-form curves for the evolved noisy-GHZ family.

Ground truth is always the Kraus route: ``apply_product_channel`` composes
the per-qubit operators exactly, and sweeps carry both the closed-form and
the oracle value so that disagreements are data rather than surprises.
Known discrepancies of the printed closed forms (tracked by the verify
module):

* the phase-reversal curves use the off-diagonal factor
  1 + 10 q^2 - 6 q (1 + q^2), while composing the printed Kraus operators
  gives (1 - 2q)^3;
* the evolved LQU curves inherit the same 31-vs-32 defect as the static
  GHZ curve (see ``lqu.lqu_ghz``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import nan

import numpy as np

from .discord import discord_x_closed
from .errors import DomainError, NumericalDomain
from .lqu import lqu_numeric
from .negativity import tripartite_negativity
from .linalg import SIGMA0, SIGMA1, SIGMA2, SIGMA3, check_density
from .xstate import from_dense, make_ghz_mixed, to_dense

CHANNEL_KINDS = ("dephasing", "depolarizing", "phase_reversal")
QUANTIFIER_KINDS = ("lqu", "negativity", "discord")


@dataclass(frozen=True)
class KrausSet:
    """A named single-qubit channel of strength q with its 2x2 operators."""

    kind: str
    q: float
    operators: tuple

    def completeness_residue(self) -> float:
        """Max-abs deviation of sum K^dag K from the identity."""
        acc = sum(K.conj().T @ K for K in self.operators)
        return float(np.max(np.abs(acc - np.eye(2))))


def kraus(kind: str, q: float) -> KrausSet:
    """Kraus operators of one decoherence channel, exactly as printed.

    dephasing       K1 = diag(1, sqrt(1-q)),            K2 = diag(0, sqrt(q))
    depolarizing    K1 = sqrt(1-3q/4) 1, K2..K4 = (sqrt(q)/2) (X, Y, Z)
    phase_reversal  K1 = sqrt(1-q) 1,                   K2 = sqrt(q) Z
    """
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0, 1], got {q!r}")
    if kind == "dephasing":
        ops = (
            np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - q)]], dtype=complex),
            np.array([[0.0, 0.0], [0.0, np.sqrt(q)]], dtype=complex),
        )
    elif kind == "depolarizing":
        ops = (
            np.sqrt(1.0 - 0.75 * q) * SIGMA0,
            0.5 * np.sqrt(q) * SIGMA1,
            0.5 * np.sqrt(q) * SIGMA2,
            0.5 * np.sqrt(q) * SIGMA3,
        )
    elif kind == "phase_reversal":
        ops = (np.sqrt(1.0 - q) * SIGMA0, np.sqrt(q) * SIGMA3)
    else:
        raise DomainError(f"unknown channel kind {kind!r}")
    for K in ops:
        K.setflags(write=False)
    return KrausSet(kind=kind, q=float(q), operators=ops)


def kraus_coherence_factor(kind: str, q: float) -> float:
    """Exact multiplier of every anti-diagonal X-state entry under the channel."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0, 1], got {q!r}")
    if kind == "dephasing":
        return float((1.0 - q) ** 1.5)
    if kind == "depolarizing":
        return float((1.0 - q) ** 3)
    if kind == "phase_reversal":
        return float((1.0 - 2.0 * q) ** 3)
    raise DomainError(f"unknown channel kind {kind!r}")


def phase_reversal_printed_factor(q: float) -> float:
    """The off-diagonal factor 1 + 10 q^2 - 6 q (1 + q^2) as printed.

    Differs from the Kraus-derived (1 - 2q)^3 by 2 q^2 (1 - q); the verify
    module lists the divergence, it is never silently corrected.
    """
    return float(1.0 + 10.0 * q**2 - 6.0 * q * (1.0 + q**2))


def apply_product_channel(rho: np.ndarray, ks: KrausSet) -> np.ndarray:
    """Apply K_i x K_j x K_k rho (K_i x K_j x K_k)^dag summed over i, j, k.

    The product structure lets the channel act qubit by qubit on the
    rank-6 tensor view; trace, positivity and the X shape of X-state
    inputs are preserved exactly (up to rounding).
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    if rho.shape != (8, 8):
        raise DomainError(f"expected an 8x8 state, got {rho.shape}")
    T = rho.reshape(2, 2, 2, 2, 2, 2)
    for row_ax in range(3):
        col_ax = row_ax + 3
        acc = np.zeros_like(T)
        for K in ks.operators:
            tmp = np.tensordot(K, T, axes=([1], [row_ax]))
            tmp = np.moveaxis(tmp, 0, row_ax)
            tmp = np.tensordot(K.conj(), tmp, axes=([1], [col_ax]))
            tmp = np.moveaxis(tmp, 0, col_ax)
            acc += tmp
        T = acc
    return T.reshape(8, 8)


# --- printed closed-form curves over (p, q) --------------------------------

def _log2_pos(v: float, strict: bool) -> float:
    if v > 1e-300:
        return float(np.log2(v))
    if v < -1e-12 and strict:
        raise NumericalDomain(f"log argument {v!r} is negative")
    return nan if v < -1e-12 else 0.0


def _w_xlog2(weight: float, strict: bool) -> float:
    """weight * log2(weight) with 0 log 0 := 0 and negative weights flagged."""
    if weight > 1e-300:
        return float(weight * np.log2(weight))
    if weight < -1e-12:
        if strict:
            raise NumericalDomain(f"log argument {weight!r} is negative")
        return nan
    return 0.0


def _sqrt_checked(v: float, strict: bool) -> float:
    if v >= -1e-12:
        return float(np.sqrt(max(v, 0.0)))
    if strict:
        raise NumericalDomain(f"sqrt argument {v!r} is negative")
    return nan


def evolved_closed_form(channel: str, quantifier: str, p: float, q: float,
                        strict: bool = True) -> float:
    """Evaluate the printed evolved closed form verbatim (base-2 logs).

    When a square-root or logarithm argument goes negative the point is
    undefined: NumericalDomain is raised if ``strict``, otherwise nan is
    returned.  Values are reported exactly as the expressions give them,
    including negative LQU values where the printed forms dip below zero.
    """
    if channel not in CHANNEL_KINDS:
        raise DomainError(f"unknown channel {channel!r}")
    if quantifier not in QUANTIFIER_KINDS:
        raise DomainError(f"unknown quantifier {quantifier!r}")
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise DomainError(f"(p, q) = {(p, q)!r} outside the unit square")

    if channel == "dephasing":
        Q3 = (1.0 - q) ** 3
        if quantifier == "lqu":
            s = _sqrt_checked((4 - 3 * p) ** 2 - 16 * (1 - p) ** 2 * Q3, strict)
            return (1 - p) ** 2 * (32.0 * Q3 - 1.0) / (8.0 * (4 - 3 * p + s))
        coh = 4.0 * (1 - p) * (1.0 - q) ** 1.5
        if quantifier == "negativity":
            return (abs(p / 2) + abs((4 - 3 * p) / 4)
                    + abs((p - coh) / 8) + abs((p + coh) / 8) - 1.0)
        out = (3 * p - 4) / 4 * _log2_pos(4 - 3 * p, strict)
        out += _w_xlog2(4 - 3 * p - coh, strict) / 8
        out += _w_xlog2(4 - 3 * p + coh, strict) / 8
        return float(out)

    if channel == "depolarizing":
        if quantifier == "lqu":
            c = 4 - 3 * p + 3 * q * (1 - p) * (q - 2)
            s = _sqrt_checked(c**2 - 16 * (1 - p) ** 2 * (1 - q) ** 6, strict)
            first = (1 - p) ** 2 * (1 - q) ** 2 * (16 * (1 - q) ** 4 - 1) / (8 * (c + s))
            second = (4 - 3 * p - 3 * q * (1 - p) * (2 - q) - s) / 8
            return float(first + second)
        if quantifier == "negativity":
            t1 = p - 2 * p * q + p * q**2 + 2 * q - q**2
            t2 = 4 - 6 * q + 3 * q**2 - 3 * p + 6 * p * q - 3 * p * q**2
            t3 = 4 * (1 - p) * (1 - q) ** 3
            return abs(t1) / 2 + abs(t2) / 4 + abs(t1 + t3) / 8 + abs(t1 - t3) / 8 - 1.0
        a8 = (4 - 3 * p) * (1 - 1.5 * q + 0.75 * q**2) + 3 * p * (0.5 * q - 0.25 * q**2)
        out = -_w_xlog2(a8, strict) / 4
        out += _w_xlog2(a8 + 4 * (1 - p) * (1 - q) ** 3, strict) / 8
        out += _w_xlog2(a8 - 4 * (1 - p) * (1 - q) ** 3, strict) / 8
        return float(out)

    g = phase_reversal_printed_factor(q)
    if quantifier == "lqu":
        s = _sqrt_checked((4 - 3 * p) ** 2 - 16 * (1 - p) ** 2 * g, strict)
        return (1 - p) ** 2 * (32.0 * g - 1.0) / (8.0 * (4 - 3 * p + s))
    if quantifier == "negativity":
        return (abs(p / 2) + abs((4 - 3 * p) / 4)
                + abs((p - 4 * (1 - p) * g) / 8) + abs((p + 4 * (1 - p) * g) / 8) - 1.0)
    out = (3 * p - 4) / 4 * _log2_pos(4 - 3 * p, strict)
    out += _w_xlog2(4 - 3 * p - 4 * (1 - p) * g, strict) / 8
    out += _w_xlog2(4 - 3 * p + 4 * (1 - p) * g, strict) / 8
    return float(out)


def phase_reversal_lqu_w33_variant(p: float, q: float, strict: bool = False) -> float:
    """The alternative evolved-LQU reading 1 - w33 with (32 g - 1) inside the
    square root, as the printed W entries have it.

    The radicand (4-3p)^2 - 16 (1-p)^2 (32 g - 1) is negative on most of
    the unit square (already at q = 0 for small p), so this variant is
    mostly undefined; it is evaluated only so the verify module can record
    the internal inconsistency between the two printed readings.
    """
    g = phase_reversal_printed_factor(q)
    s = _sqrt_checked((4 - 3 * p) ** 2 - 16 * (1 - p) ** 2 * (32 * g - 1), strict)
    if np.isnan(s):
        return nan
    denom = 4 - 3 * p + s
    w33 = (32 * (1 - p) * (1 + (p - 1) * (32 * g - 1)) + (1 + p) ** 2) / (8 * denom)
    w33 += (p + 2 * s) / (2 * denom)
    return float(1.0 - w33)


# --- sweeps -----------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    """One (family, channel, quantifier, p, q) row with both value routes."""

    family: str
    channel: str
    quantifier: str
    p: float
    q: float
    value_closed: float
    value_oracle: float

    @property
    def diff(self) -> float:
        if np.isnan(self.value_closed):
            return nan
        return abs(self.value_closed - self.value_oracle)


def oracle_quantifier(quantifier: str, rho: np.ndarray) -> float:
    """Numeric value of a quantifier on a dense evolved state.

    lqu uses the skew-information minimization, negativity the partial
    transpose spectrum.  discord evaluates the X-state machinery on the
    numerically evolved entries (the measurement search lives in
    discord.discord_symmetric_numeric and is too coarse for sweep columns).
    """
    if quantifier == "lqu":
        return lqu_numeric(rho)
    if quantifier == "negativity":
        return tripartite_negativity(rho).n3partite
    if quantifier == "discord":
        return discord_x_closed(from_dense(rho, atol=1e-10)).discord
    raise DomainError(f"unknown quantifier {quantifier!r}")


def sweep_evolved(channel: str, quantifier: str, p_list, q_list) -> list[SweepRecord]:
    """Closed-vs-oracle sweep of the noisy-GHZ family over a (p, q) grid.

    Rows are emitted p-major then q, one per grid point; undefined closed
    forms appear as nan in ``value_closed``.
    """
    records = []
    for p in p_list:
        rho0 = to_dense(make_ghz_mixed(float(p)))
        for q in q_list:
            ks = kraus(channel, float(q))
            evolved = apply_product_channel(rho0, ks)
            closed = evolved_closed_form(channel, quantifier, float(p), float(q), strict=False)
            oracle = oracle_quantifier(quantifier, evolved)
            records.append(SweepRecord(
                family="ghz", channel=channel, quantifier=quantifier,
                p=float(p), q=float(q),
                value_closed=float(closed), value_oracle=float(oracle),
            ))
    return records
