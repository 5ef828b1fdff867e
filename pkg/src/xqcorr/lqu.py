"""Local quantum uncertainty (LQU) for three-qubit X states.

The LQU of qubit 1 against the pair (2,3) is

    U(rho) = 1 - lambda_max(W),
    w_ij = tr( sqrt(rho) (sigma_i x 1 x 1) sqrt(rho) (sigma_j x 1 x 1) ),

the minimum Wigner-Yanase skew information over local observables
n . sigma on qubit 1.  For X states W is computed in closed form from the
2x2 block structure of sqrt(rho): flipping qubit 1 maps block 1 (entries
11/88/18) onto block 3 (33/66/36) and block 2 (22/77/27) onto block 4
(44/55/45), which pairs the blocks in all off-diagonal W entries.

``lqu_ghz`` is the closed-form curve for the noisy-GHZ family as commonly
quoted; it carries a known algebraic defect (it evaluates to 31/32 at
p = 0 where the defining minimization gives exactly 1).  The verification
suite tracks its deviation from the oracle; use ``lqu(make_ghz_mixed(p))``
for the defining value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch, DomainError, NonHermitianInput, NotNormalized
from .linalg import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    check_density,
    matrix_sqrt_psd,
    partial_trace,
    single_qubit_op,
)
from .xstate import ANTI_PAIRS, XState, _block_norms, make_ghz_mixed

#: printed-basis dense forms of sigma_x, sigma_y, sigma_z acting on qubit 1
_SIGMA_Q1 = tuple(single_qubit_op(s, 1) for s in (SIGMA1, SIGMA2, SIGMA3))

_W_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class WMatrix:
    """The 3x3 real symmetric correlation matrix and its largest eigenvalue."""

    matrix: np.ndarray
    lambda_max: float

    @classmethod
    def from_array(cls, w: np.ndarray) -> "WMatrix":
        w = np.asarray(w, dtype=float)
        w = 0.5 * (w + w.T)
        w.setflags(write=False)
        return cls(matrix=w, lambda_max=float(np.linalg.eigvalsh(w)[-1]))


def skew_information(rho: np.ndarray, H: np.ndarray) -> float:
    """Wigner-Yanase skew information -1/2 tr [sqrt(rho), H]^2.

    Evaluated as tr(rho H^2) - tr(sqrt(rho) H sqrt(rho) H), which equals
    the variance of H when rho is pure.  Nonnegative up to rounding.
    """
    rho = np.asarray(rho, dtype=complex)
    H = np.asarray(H, dtype=complex)
    if rho.shape != H.shape:
        raise DimensionMismatch(f"shapes {rho.shape} and {H.shape} differ")
    if np.max(np.abs(H - H.conj().T)) > 1e-10:
        raise NonHermitianInput("observable is not Hermitian")
    check_density(rho)
    S = matrix_sqrt_psd(rho)
    value = np.trace(rho @ H @ H).real - np.trace(S @ H @ S @ H).real
    return float(value)


def w_matrix_numeric(rho: np.ndarray) -> WMatrix:
    """W matrix of an 8x8 state via the numeric PSD square root."""
    rho = check_density(np.asarray(rho, dtype=complex))
    if rho.shape != (8, 8):
        raise DimensionMismatch(f"expected an 8x8 state, got {rho.shape}")
    S = matrix_sqrt_psd(rho)
    SH = [S @ sig for sig in _SIGMA_Q1]
    W = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(i, 3):
            W[i, j] = W[j, i] = np.trace(SH[i] @ SH[j])
    residue = float(np.max(np.abs(W.imag)))
    if residue > _W_IMAG_TOL:
        raise NonHermitianInput(f"W matrix has imaginary residue {residue:.3e}")
    return WMatrix.from_array(W.real)


def w_matrix_closed(x: XState) -> WMatrix:
    """Closed-form W matrix of an X state.

    With sqrt(rho) entries s_kk = (rho_kk + sqrt(d_i))/n_i and
    s_{k,9-k} = rho_{k,9-k}/n_i, n_i = sqrt(t_i + 2 sqrt(d_i)):

        w_33 = sum_k s_kk^2 - 2 sum_i |s_{k,9-k}|^2
        w_11 = P + Q,  w_22 = P - Q
        w_12 = -4 Im(b_1 conj(b_3)) - 4 Im(b_2 conj(b_4))
        w_13 = w_23 = 0

    where P collects the diagonal products over the qubit-1 flip pairing
    (1,3)(2,4), Q = 4 Re(b_1 conj(b_3)) + 4 Re(b_2 conj(b_4)) and
    b_i = a_i / n_i.  Zero blocks (n_i = 0) contribute nothing.
    """
    n = _block_norms(x)
    d = x.block_dets()
    sdiag = np.zeros(8)
    b = np.zeros(4, dtype=complex)
    for i, (k, l) in enumerate(ANTI_PAIRS):
        if n[i] <= 0.0:
            continue
        root = np.sqrt(d[i])
        sdiag[k] = (x.diag[k] + root) / n[i]
        sdiag[l] = (x.diag[l] + root) / n[i]
        b[i] = x.anti[i] / n[i]
    # sigma_x on qubit 1 exchanges basis positions p <-> p XOR 2
    P = 2.0 * (sdiag[0] * sdiag[2] + sdiag[1] * sdiag[3] + sdiag[4] * sdiag[6] + sdiag[5] * sdiag[7])
    cross13 = b[0] * np.conj(b[2])
    cross24 = b[1] * np.conj(b[3])
    Q = 4.0 * (cross13.real + cross24.real)
    w12 = -4.0 * (cross13.imag + cross24.imag)
    w33 = float(np.sum(sdiag**2) - 2.0 * np.sum(np.abs(b) ** 2))
    W = np.array([[P + Q, w12, 0.0], [w12, P - Q, 0.0], [0.0, 0.0, w33]])
    return WMatrix.from_array(W)


def lqu(x: XState) -> float:
    """LQU of qubit 1, from the closed-form W matrix.  Value in [0, 1]."""
    value = 1.0 - w_matrix_closed(x).lambda_max
    return float(min(max(value, 0.0), 1.0))


def lqu_numeric(rho: np.ndarray) -> float:
    """LQU oracle: skew information minimized over qubit-1 observables.

    The minimizer is taken exactly as the top eigenvector of the numeric W
    matrix; the returned value is the skew information evaluated at that
    direction.  Agrees with 1 - lambda_max(W) to rounding.
    """
    W = w_matrix_numeric(rho)
    vals, vecs = np.linalg.eigh(W.matrix)
    direction = vecs[:, -1]
    H = sum(c * sig for c, sig in zip(direction, _SIGMA_Q1))
    value = skew_information(rho, H)
    return float(min(max(value, 0.0), 1.0))


def _fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n)
    z = 1.0 - 2.0 * (k + 0.5) / n
    r = np.sqrt(1.0 - z**2)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def lqu_sphere_audit(rho: np.ndarray, n_points: int = 720, refine: bool = True) -> float:
    """Independent audit of the LQU minimum over a Fibonacci sphere grid.

    Evaluates the skew information directly at each grid direction and,
    optionally, polishes the best point with a local simplex search over
    spherical angles.  Used to guard the closed routes against assembly
    errors, not as the primary evaluation path.
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    S = matrix_sqrt_psd(rho)

    def value_at(n_vec: np.ndarray) -> float:
        H = sum(c * sig for c, sig in zip(n_vec, _SIGMA_Q1))
        return float(np.trace(rho @ H @ H).real - np.trace(S @ H @ S @ H).real)

    dirs = _fibonacci_sphere(n_points)
    values = np.array([value_at(v) for v in dirs])
    best_idx = int(np.argmin(values))
    best = float(values[best_idx])
    if refine:
        x, y, z = dirs[best_idx]
        theta0, phi0 = float(np.arccos(np.clip(z, -1, 1))), float(np.arctan2(y, x))

        def objective(angles):
            th, ph = angles
            return value_at(np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]))

        res = minimize(objective, [theta0, phi0], method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 400})
        best = min(best, float(res.fun))
    return max(best, 0.0)


def lqu_pure(psi: np.ndarray) -> float:
    """LQU of a pure three-qubit state: 2 (1 - tr rho_1^2)."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (8,):
        raise DimensionMismatch(f"expected an 8-component vector, got {psi.shape}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise NotNormalized(f"state vector has norm {norm!r}")
    rho1 = partial_trace(np.outer(psi, psi.conj()), keep={1})
    return float(2.0 * (1.0 - np.trace(rho1 @ rho1).real))


def lqu_ghz(p: float) -> float:
    """Closed-form LQU curve of the noisy-GHZ family, transcribed verbatim:

        31 (p - 1)^2 / ( 8 (4 - 3p + sqrt(p (8 - 7p))) ).

    Known defect: at p = 0 this gives 31/32 while the defining minimization
    gives 1; the deviation is documented by the static verification suite.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    return 31.0 * (p - 1.0) ** 2 / (8.0 * (4.0 - 3.0 * p + np.sqrt(p * (8.0 - 7.0 * p))))


def lqu_bell(c1: float, c2: float, c3: float) -> float:
    """Piecewise closed-form LQU of the triple-Pauli family.

    The branch is selected by the largest coefficient (first in order
    (c1, c2, c3) on ties); each branch drops the largest coefficient from
    the numerator sum of squares.
    """
    c = (float(c1), float(c2), float(c3))
    if any(not 0.0 <= ci <= 1.0 for ci in c) or sum(ci**2 for ci in c) > 1.0 + 1e-12:
        raise DomainError(f"invalid coefficients {c}")
    denom = 1.0 + np.sqrt(max(0.0, 1.0 - c[0] ** 2 - c[1] ** 2 - c[2] ** 2))
    if c[0] >= c[1] and c[0] >= c[2]:
        num = c[1] ** 2 + c[2] ** 2
    elif c[1] >= c[0] and c[1] >= c[2]:
        num = c[0] ** 2 + c[2] ** 2
    else:
        num = c[0] ** 2 + c[1] ** 2
    return float(num / denom)


def lqu_ghz_from_definition(p: float) -> float:
    """LQU of make_ghz_mixed(p) through the closed W route (defining value)."""
    return lqu(make_ghz_mixed(p))
