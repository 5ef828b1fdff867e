"""Dense complex linear algebra for 2x2 through 8x8 Hermitian matrices.

Three-qubit operators use the computational basis ordered as
|000>, |010>, |100>, |110>, |001>, |011>, |101>, |111> (bits read as
qubits 1,2,3).  In this ordering the flat index of |q1 q2 q3> is
4*q3 + 2*q1 + q2, so a product operator A(1) x B(2) x C(3) has the
dense form np.kron(C, np.kron(A, B)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadSubsystem, NonHermitianInput, NotPSD, TraceError

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)

#: bit triples (q1, q2, q3) of the eight basis states, in basis order
BASIS_BITS = tuple(
    (q1, q2, q3) for q3 in (0, 1) for q1 in (0, 1) for q2 in (0, 1)
)

#: tensor axis carrying each qubit after reshape(2, 2, 2, 2, 2, 2)
_QUBIT_AXIS = {1: 1, 2: 2, 3: 0}

HERMITIAN_ATOL = 1e-12
PSD_EIG_FLOOR = -1e-10


def basis_index(q1: int, q2: int, q3: int) -> int:
    """Flat index of |q1 q2 q3> in the module basis order."""
    return 4 * q3 + 2 * q1 + q2


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition with eigenvalues sorted in descending order.

    ``eigenvectors[:, i]`` is the orthonormal eigenvector paired with
    ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return V diag(lambda) V^dagger."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def is_hermitian(M: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    M = np.asarray(M)
    return bool(np.max(np.abs(M - M.conj().T)) <= atol)


def hermitian_eig(M: np.ndarray, atol: float = HERMITIAN_ATOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Raises
    ------
    NonHermitianInput
        If ``M`` differs from its conjugate transpose by more than ``atol``
        in any entry.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NonHermitianInput(f"expected a square matrix, got shape {M.shape}")
    if not is_hermitian(M, atol):
        residue = np.max(np.abs(M - M.conj().T))
        raise NonHermitianInput(f"matrix is not Hermitian (max residue {residue:.3e})")
    vals, vecs = np.linalg.eigh(M)
    order = np.argsort(vals)[::-1]
    return Spectrum(eigenvalues=vals[order], eigenvectors=vecs[:, order])


def matrix_sqrt_psd(M: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Hermitian PSD square root R with R @ R == M.

    Eigenvalues in (PSD_EIG_FLOOR, 0) are clamped to zero; anything below
    the floor raises NotPSD.
    """
    spec = hermitian_eig(M, atol)
    vals = spec.eigenvalues
    if vals[-1] < PSD_EIG_FLOOR:
        raise NotPSD(f"matrix has eigenvalue {vals[-1]:.3e} below {PSD_EIG_FLOOR}")
    vals = np.clip(vals, 0.0, None)
    V = spec.eigenvectors
    return (V * np.sqrt(vals)) @ V.conj().T


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor most significant."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def pauli_triple(alpha: int, beta: int, gamma: int) -> np.ndarray:
    """Dense 8x8 form of sigma_alpha(1) x sigma_beta(2) x sigma_gamma(3)."""
    return np.kron(PAULI[gamma], np.kron(PAULI[alpha], PAULI[beta]))


def single_qubit_op(op: np.ndarray, qubit: int) -> np.ndarray:
    """Dense 8x8 form of a 2x2 operator acting on one qubit."""
    if qubit not in (1, 2, 3):
        raise BadSubsystem(f"qubit must be 1, 2 or 3, got {qubit}")
    factors = [SIGMA0, SIGMA0, SIGMA0]
    factors[qubit - 1] = np.asarray(op, dtype=complex)
    return np.kron(factors[2], np.kron(factors[0], factors[1]))


def _qubit_tensor(rho: np.ndarray) -> np.ndarray:
    """View an 8x8 matrix as a rank-6 tensor with axes (q3,q1,q2,q3',q1',q2')."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise BadSubsystem(f"expected an 8x8 matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2, 2, 2)


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix of the kept qubits.

    Parameters
    ----------
    rho : np.ndarray
        8x8 three-qubit density matrix in the module basis order.
    keep : iterable of int
        Nonempty subset of {1, 2, 3}.  The result is indexed with the kept
        qubits in ascending label order, lowest label most significant
        (plain binary order of the kept bits).
    """
    kept = sorted(set(int(q) for q in keep))
    if not kept or any(q not in (1, 2, 3) for q in kept):
        raise BadSubsystem(f"keep must be a nonempty subset of {{1,2,3}}, got {keep!r}")
    T = _qubit_tensor(rho)
    dropped = [q for q in (1, 2, 3) if q not in kept]
    letters = "abcdef"
    subs = list(letters)
    for q in dropped:
        ax = _QUBIT_AXIS[q]
        subs[ax + 3] = subs[ax]
    out = "".join(subs[_QUBIT_AXIS[q]] for q in kept)
    out += "".join(subs[_QUBIT_AXIS[q] + 3] for q in kept)
    reduced = np.einsum("".join(subs) + "->" + out, T)
    dim = 2 ** len(kept)
    return reduced.reshape(dim, dim)


def partial_transpose(rho: np.ndarray, sub: int) -> np.ndarray:
    """Partial transpose of an 8x8 matrix with respect to one qubit."""
    if sub not in (1, 2, 3):
        raise BadSubsystem(f"sub must be 1, 2 or 3, got {sub}")
    T = _qubit_tensor(rho)
    ax = _QUBIT_AXIS[sub]
    return np.swapaxes(T, ax, ax + 3).reshape(8, 8)


def check_density(rho: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD up to rounding."""
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho, max(atol, HERMITIAN_ATOL)):
        raise NonHermitianInput("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > max(atol, 1e-10):
        raise TraceError(f"density matrix has trace {tr!r}, expected 1")
    wmin = float(np.linalg.eigvalsh(rho)[0])
    if wmin < PSD_EIG_FLOOR:
        raise NotPSD(f"density matrix has eigenvalue {wmin:.3e}")
    return rho


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits, with 0*log(0) taken as 0."""
    rho = np.asarray(rho, dtype=complex)
    vals = np.linalg.eigvalsh(rho)
    if vals[0] < PSD_EIG_FLOOR:
        raise NotPSD(f"matrix has eigenvalue {vals[0]:.3e}")
    if abs(float(np.sum(vals)) - 1.0) > 1e-9:
        raise TraceError(f"expected unit trace, got {float(np.sum(vals))!r}")
    vals = vals[vals > 1e-300]
    return float(-np.sum(vals * np.log2(vals)))


def entropy_bits(values: np.ndarray) -> float:
    """Shannon entropy (bits) of a vector of nonnegative weights."""
    vals = np.asarray(values, dtype=float)
    vals = np.clip(vals, 0.0, None)
    vals = vals[vals > 1e-300]
    return float(-np.sum(vals * np.log2(vals)))
