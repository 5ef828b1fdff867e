"""Tripartite quantum discord for permutation-symmetric three-qubit states.

For permutation-symmetric states the discord reduces to

    D = S(rho_1|23) + S(rho_12) - S(rho),

where S(rho_1|23) is the entropy of qubit 1 conditioned on the best
measurement of the pair (2,3).  Two routes are provided:

* ``discord_x_closed`` evaluates the closed-form expression for X states
  with real coherences, where S(rho_1|23) is the minimum of explicit
  candidates S1 (z x z product basis), S2 (x x x product basis) and, on one
  branch, S3.
* ``discord_symmetric_numeric`` replaces the candidates with a direct
  numeric minimization over a family of product and entangled rank-1
  projective bases of the (2,3) subsystem (an upper bound on the POVM
  minimum; grid plus local refinement).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import nan

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError, NotSymmetric, OutOfClass
from .linalg import check_density, partial_trace, von_neumann_entropy
from .xstate import XState

_LOG_FLOOR = 1e-12


def _xlog2(v: float) -> float:
    """v log2 v with the 0 log 0 := 0 convention; negative v is a domain error."""
    if v < -_LOG_FLOOR:
        raise DomainError(f"log argument {v!r} is negative")
    if v <= 0.0:
        return 0.0
    return float(v * np.log2(v))


def _xlog2_weighted(weight: float, arg: float) -> float:
    """weight * log2(arg) with weight -> 0 limits resolved to 0."""
    if arg < -_LOG_FLOOR:
        raise DomainError(f"log argument {arg!r} is negative")
    if arg <= 0.0 or weight == 0.0:
        return 0.0
    return float(weight * np.log2(arg))


def entropy_g(x: float) -> float:
    """G(x) = (1+x) log(1+x) + (1-x) log(1-x), even in x, G(0)=0, G(1)=2."""
    return _xlog2(1.0 + x) + _xlog2(1.0 - x)


def entropy_f(x: float) -> float:
    """F(x) = (3+x) log(3+x) + (3-3x) log(3-3x) - 2 (3-x) log(3-x)."""
    return _xlog2(3.0 + x) + _xlog2(3.0 - 3.0 * x) - 2.0 * _xlog2(3.0 - x)


@dataclass(frozen=True)
class DiscordBreakdown:
    """Conditional-entropy candidates, the branch applied, and the discord."""

    s1: float
    s2: float
    s3: float
    branch: str
    conditional_entropy: float
    discord: float


def mutual_information_2(rho: np.ndarray, part: str) -> float:
    """Mutual information S(A) + S(B) - S(AB) of a bipartition.

    ``part`` is one of '1|23', '2|13', '3|12', '1|2', '1|3', '2|3'.
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    try:
        left, right = part.split("|")
        a = {int(ch) for ch in left}
        b = {int(ch) for ch in right}
    except (ValueError, AttributeError):
        raise DomainError(f"malformed bipartition descriptor {part!r}") from None
    if not a or not b or (a & b) or not (a | b) <= {1, 2, 3}:
        raise DomainError(f"invalid bipartition {part!r}")
    s_a = von_neumann_entropy(partial_trace(rho, a))
    s_b = von_neumann_entropy(partial_trace(rho, b))
    if a | b == {1, 2, 3}:
        s_ab = von_neumann_entropy(rho)
    else:
        s_ab = von_neumann_entropy(partial_trace(rho, a | b))
    return float(s_a + s_b - s_ab)


def discord_x_closed(x: XState, atol: float = 1e-9) -> DiscordBreakdown:
    """Closed-form tripartite discord of an X state with real coherences.

    Uses rho_11, rho_18 and rho_27 of the state.  The conditional entropy
    is min(S1, S3) when |3 rho_18| >= |rho_27| and rho_18 rho_27 < 0,
    otherwise min(S1, S2).  All logarithms are base 2.

    Raises OutOfClass when rho_18 or rho_27 has an imaginary part beyond
    ``atol``; the expression is only meaningful for real coherences.
    """
    if abs(x.anti[0].imag) > atol or abs(x.anti[1].imag) > atol:
        raise OutOfClass(
            f"coherences rho_18 = {x.anti[0]!r}, rho_27 = {x.anti[1]!r} are not real"
        )
    r11 = float(x.diag[0])
    r18 = float(x.anti[0].real)
    r27 = float(x.anti[1].real)

    s1 = 1.0 - entropy_f(1.0 - 8.0 * r11) / 12.0
    s2 = 1.0 - entropy_g(6.0 * r27 + 2.0 * r18) / 2.0
    if abs(3.0 * r18) >= abs(r27) and r18 * r27 < 0.0:
        # the branch guard guarantees r18 != 0 and a nonnegative radicand
        s3 = 1.0 - entropy_g(float(np.sqrt((r18 - r27) ** 3 / r18))) / 2.0
        branch = "min(s1,s3)"
        cond = min(s1, s3)
    else:
        s3 = nan
        branch = "min(s1,s2)"
        cond = min(s1, s2)

    tail = (
        -(1.0 + 4.0 * r11) / 3.0 * np.log2(2.0 + 8.0 * r11)
        - 2.0 / 3.0 * _xlog2_weighted(1.0 - 2.0 * r11, 4.0 - 8.0 * r11)
        - 1.0
        + 2.0 * r11 * np.log2(3.0)
        + _xlog2_weighted(r11 - r18, 8.0 * (r11 - r18))
        + _xlog2_weighted(r11 + r18, 8.0 * (r11 + r18))
        + 0.5 * _xlog2_weighted(1.0 - 2.0 * r11 - 6.0 * r27, 4.0 - 8.0 * r11 - 24.0 * r27)
        + 0.5 * _xlog2_weighted(1.0 - 2.0 * r11 + 6.0 * r27, 4.0 - 8.0 * r11 + 24.0 * r27)
    )
    value = float(cond + tail)
    return DiscordBreakdown(
        s1=s1, s2=s2, s3=s3, branch=branch, conditional_entropy=float(cond), discord=value
    )


def discord_ghz(p: float) -> float:
    """Closed-form discord of the noisy-GHZ family, base-2 logs:

        ((3p-4)/4) log(4-3p) + (p/8) log p + ((8-7p)/8) log(8-7p).
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    out = (3.0 * p - 4.0) / 4.0 * np.log2(4.0 - 3.0 * p)
    out += _xlog2(p) / 8.0
    out += _xlog2_weighted((8.0 - 7.0 * p) / 8.0, 8.0 - 7.0 * p)
    return float(out)


# --- numeric measurement oracle ------------------------------------------

def _block_1_vs_23(rho: np.ndarray) -> np.ndarray:
    """Reshape to B[q1, m, q1', m'] with m = 2*q2 + q3 (basis order aware)."""
    T = rho.reshape(2, 2, 2, 2, 2, 2)  # axes (q3, q1, q2 | q3', q1', q2')
    return np.transpose(T, (1, 2, 0, 4, 5, 3)).reshape(2, 4, 2, 4)


def _product_basis(theta_a, phi_a, theta_b, phi_b) -> np.ndarray:
    """4x4 unitary whose columns are |a_i> x |b_j> for two Bloch directions."""
    ca, sa = np.cos(theta_a / 2.0), np.sin(theta_a / 2.0)
    cb, sb = np.cos(theta_b / 2.0), np.sin(theta_b / 2.0)
    ea, eb = np.exp(1j * phi_a), np.exp(1j * phi_b)
    a = np.array([[ca, -sa / ea], [ea * sa, ca]])
    b = np.array([[cb, -sb / eb], [eb * sb, cb]])
    return np.kron(a, b)


def _entangled_basis(alpha, beta) -> np.ndarray:
    """Two-parameter orthonormal family interpolating computational to Bell.

    alpha = 0 is the computational basis of (2,3); alpha = pi/4, beta = 0
    is the Bell basis.
    """
    c, s = np.cos(alpha), np.sin(alpha)
    ph = np.exp(1j * beta)
    cols = np.zeros((4, 4), dtype=complex)
    cols[:, 0] = (c, 0, 0, ph * s)
    cols[:, 1] = (s, 0, 0, -ph * c)
    cols[:, 2] = (0, c, ph * s, 0)
    cols[:, 3] = (0, s, -ph * c, 0)
    return cols


def _avg_conditional_entropy(B: np.ndarray, bases: np.ndarray) -> np.ndarray:
    """Average post-measurement entropy of qubit 1 for a batch of bases.

    ``bases`` has shape (N, 4, 4) with measurement vectors as columns.
    """
    E = np.transpose(bases, (0, 2, 1))  # (N, vector index, component)
    om = np.einsum("ambn,Nkm,Nkn->Nkab", B, E.conj(), E, optimize=True)
    p = np.real(om[..., 0, 0] + om[..., 1, 1])
    rx = 2.0 * np.real(om[..., 1, 0])
    ry = 2.0 * np.imag(om[..., 1, 0])
    rz = np.real(om[..., 0, 0] - om[..., 1, 1])
    r = np.sqrt(rx**2 + ry**2 + rz**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        lam_p = np.where(p > 1e-14, (p + r) / (2.0 * p), 0.5)
        lam_m = np.where(p > 1e-14, (p - r) / (2.0 * p), 0.5)
    lam_p = np.clip(lam_p, 0.0, 1.0)
    lam_m = np.clip(lam_m, 0.0, 1.0)
    h = -np.where(lam_p > 1e-300, lam_p * np.log2(lam_p), 0.0)
    h -= np.where(lam_m > 1e-300, lam_m * np.log2(lam_m), 0.0)
    return np.sum(p * h, axis=1)


def _qubit_frames(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """All single-qubit orthonormal frames over a (theta, phi) grid, shape (n, 2, 2)."""
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    th, ph = th.ravel(), ph.ravel()
    c, s, e = np.cos(th / 2.0), np.sin(th / 2.0), np.exp(1j * ph)
    frames = np.empty((th.size, 2, 2), dtype=complex)
    frames[:, 0, 0] = c
    frames[:, 1, 0] = e * s
    frames[:, 0, 1] = -s / e
    frames[:, 1, 1] = c
    return frames


def conditional_entropy_min_oracle(
    rho: np.ndarray,
    n_product: int = 10,
    n_entangled: int = 100,
    refine: bool = True,
) -> float:
    """Minimum average entropy of qubit 1 over measurements on (2,3).

    Scans a grid of product bases (two Bloch directions, ``n_product``
    points per angle, n_product**4 bases) and a two-parameter entangled
    family (``n_entangled`` points per parameter), then polishes the best
    of each family with a local simplex search.  The result is an upper
    bound on the true POVM minimum; it is deterministic for fixed grids.
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    B = _block_1_vs_23(rho)

    thetas = np.linspace(0.0, np.pi, n_product)
    phis = np.linspace(0.0, 2.0 * np.pi, n_product, endpoint=False)
    frames = _qubit_frames(thetas, phis)
    n = frames.shape[0]
    prod_bases = np.einsum("aij,bkl->abikjl", frames, frames).reshape(n * n, 4, 4)
    prod_vals = _avg_conditional_entropy(B, prod_bases)

    alphas = np.linspace(0.0, np.pi / 2.0, n_entangled)
    betas = np.linspace(0.0, 2.0 * np.pi, n_entangled, endpoint=False)
    al, be = np.meshgrid(alphas, betas, indexing="ij")
    al, be = al.ravel(), be.ravel()
    c, s, ph = np.cos(al), np.sin(al), np.exp(1j * be)
    ent_bases = np.zeros((al.size, 4, 4), dtype=complex)
    ent_bases[:, 0, 0], ent_bases[:, 3, 0] = c, ph * s
    ent_bases[:, 0, 1], ent_bases[:, 3, 1] = s, -ph * c
    ent_bases[:, 1, 2], ent_bases[:, 2, 2] = c, ph * s
    ent_bases[:, 1, 3], ent_bases[:, 2, 3] = s, -ph * c
    ent_vals = _avg_conditional_entropy(B, ent_bases)

    best = float(min(prod_vals.min(), ent_vals.min()))
    if not refine:
        return max(best, 0.0)

    i = int(np.argmin(prod_vals))
    ia, ib = divmod(i, n)
    prod_start = (thetas[ia // n_product], phis[ia % n_product],
                  thetas[ib // n_product], phis[ib % n_product])
    j = int(np.argmin(ent_vals))
    ent_start = (alphas[j // n_entangled], betas[j % n_entangled])
    for start, builder in ((prod_start, _product_basis), (ent_start, _entangled_basis)):
        res = minimize(
            lambda v, b=builder: float(_avg_conditional_entropy(B, b(*v)[None, :, :])[0]),
            np.asarray(start, dtype=float),
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 2000},
        )
        best = min(best, float(res.fun))
    return max(best, 0.0)


def _is_permutation_symmetric(rho: np.ndarray, atol: float) -> bool:
    T = rho.reshape(2, 2, 2, 2, 2, 2)  # (q3, q1, q2 | q3', q1', q2')
    swaps = (
        (2, 1, 0, 5, 4, 3),  # exchange qubits 1 and 3
        (0, 2, 1, 3, 5, 4),  # exchange qubits 1 and 2
    )
    return all(np.max(np.abs(np.transpose(T, s) - T)) <= atol for s in swaps)


def discord_symmetric_numeric(
    rho: np.ndarray,
    n_product: int = 10,
    n_entangled: int = 100,
    refine: bool = True,
    symmetry_atol: float = 1e-9,
) -> float:
    """Measurement-based discord of a permutation-symmetric state.

    Computes conditional_entropy_min_oracle(rho) + S(rho_12) - S(rho).
    Raises NotSymmetric when the state is not invariant under qubit swaps.
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    if not _is_permutation_symmetric(rho, symmetry_atol):
        raise NotSymmetric("state is not permutation symmetric")
    cond = conditional_entropy_min_oracle(
        rho, n_product=n_product, n_entangled=n_entangled, refine=refine
    )
    s12 = von_neumann_entropy(partial_trace(rho, {1, 2}))
    s = von_neumann_entropy(rho)
    return float(cond + s12 - s)
