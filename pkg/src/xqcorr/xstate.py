"""Three-qubit X states: data model, closed-form spectra and square root,
Pauli correlation tensors, and the two named state families.

An X state stores eight diagonal weights rho_11..rho_88 and the four
independent anti-diagonal coherences a1 = rho_18, a2 = rho_27, a3 = rho_36,
a4 = rho_45 (the mirrored entries are their conjugates).  The matrix splits
into four independent 2x2 blocks; block i couples the diagonal pair
(rho_kk, rho_(9-k)(9-k)) through the coherence a_i.  Everything closed-form
in this module is built from the block invariants

    t_i = rho_kk + rho_(9-k)(9-k)        (block trace)
    d_i = rho_kk * rho_(9-k)(9-k) - |a_i|^2   (block determinant)

whose eigenvalue pairs are lambda_i^+- = t_i/2 +- sqrt(t_i^2 - 4 d_i)/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CoherenceTooLarge,
    DegenerateBlock,
    DomainError,
    NegativeDiagonal,
    NonHermitianInput,
    TraceError,
)
from .linalg import BASIS_BITS

#: 0-based (row, col) of the four upper anti-diagonal coherences
ANTI_PAIRS = ((0, 7), (1, 6), (2, 5), (3, 4))

#: the only index triples (alpha, beta, gamma) with nonzero Pauli weight
SUPPORT_TRIPLES = (
    (0, 0, 0), (0, 0, 3), (0, 3, 0), (0, 3, 3),
    (3, 0, 0), (3, 0, 3), (3, 3, 0), (3, 3, 3),
    (1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2),
    (2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2),
)

VALIDATE_ATOL = 1e-12


@dataclass(frozen=True)
class XState:
    """X-shaped 8x8 matrix given by its diagonal and anti-diagonal entries.

    The constructor performs no checks; use :func:`validate` to build a
    checked density matrix.  ``sqrt_closed`` returns a plain X-shaped
    matrix through this same container (its trace is not 1).
    """

    diag: np.ndarray
    anti: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diag", np.array(self.diag, dtype=float))
        object.__setattr__(self, "anti", np.array(self.anti, dtype=complex))
        if self.diag.shape != (8,) or self.anti.shape != (4,):
            raise DomainError(
                f"expected 8 diagonals and 4 coherences, got {self.diag.shape} and {self.anti.shape}"
            )
        self.diag.setflags(write=False)
        self.anti.setflags(write=False)

    def block_traces(self) -> np.ndarray:
        """t_i for the four 2x2 blocks."""
        return np.array([self.diag[k] + self.diag[l] for k, l in ANTI_PAIRS])

    def block_dets(self) -> np.ndarray:
        """d_i for the four 2x2 blocks, rounding-level negatives clamped to 0."""
        d = np.array(
            [self.diag[k] * self.diag[l] - abs(a) ** 2 for (k, l), a in zip(ANTI_PAIRS, self.anti)]
        )
        return np.clip(d, 0.0, None)


def validate(diag, anti, atol: float = VALIDATE_ATOL) -> XState:
    """Build an XState after checking the density-matrix invariants.

    Raises TraceError, NegativeDiagonal or CoherenceTooLarge (naming the
    offending block) when the entries do not describe a state.
    """
    diag = np.array(diag, dtype=float)
    anti = np.array(anti, dtype=complex)
    if diag.shape != (8,) or anti.shape != (4,):
        raise DomainError(
            f"expected 8 diagonals and 4 coherences, got shapes {diag.shape} and {anti.shape}"
        )
    tr = float(np.sum(diag))
    if abs(tr - 1.0) > max(atol, VALIDATE_ATOL):
        raise TraceError(f"diagonal sums to {tr!r}, expected 1")
    if np.min(diag) < -atol:
        k = int(np.argmin(diag))
        raise NegativeDiagonal(f"rho_{k+1}{k+1} = {diag[k]!r} is negative")
    diag = np.clip(diag, 0.0, None)
    for i, ((k, l), a) in enumerate(zip(ANTI_PAIRS, anti)):
        bound = diag[k] * diag[l]
        if abs(a) ** 2 > bound + atol:
            raise CoherenceTooLarge(
                f"|rho_{k+1}{l+1}|^2 = {abs(a)**2:.6e} exceeds "
                f"rho_{k+1}{k+1}*rho_{l+1}{l+1} = {bound:.6e} (block {i+1})"
            )
    return XState(diag=diag, anti=anti)


def to_dense(x: XState) -> np.ndarray:
    """Dense 8x8 matrix in the module basis order."""
    M = np.zeros((8, 8), dtype=complex)
    M[np.arange(8), np.arange(8)] = x.diag
    for (k, l), a in zip(ANTI_PAIRS, x.anti):
        M[k, l] = a
        M[l, k] = np.conj(a)
    return M


def from_dense(M: np.ndarray, atol: float = 1e-12) -> XState:
    """Read an X-shaped dense matrix back into an XState.

    Raises NonHermitianInput if entries off the diagonal and anti-diagonal
    exceed ``atol``, or if the matrix is not Hermitian within ``atol``.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (8, 8):
        raise DomainError(f"expected an 8x8 matrix, got shape {M.shape}")
    if np.max(np.abs(M - M.conj().T)) > atol:
        raise NonHermitianInput("matrix is not Hermitian")
    mask = np.zeros((8, 8), dtype=bool)
    mask[np.arange(8), np.arange(8)] = True
    mask[np.arange(8), np.arange(8)[::-1]] = True
    residue = np.max(np.abs(M[~mask]))
    if residue > atol:
        raise NonHermitianInput(f"matrix is not X-shaped (off-X residue {residue:.3e})")
    diag = np.real(np.diag(M))
    anti = np.array([M[k, l] for k, l in ANTI_PAIRS])
    return XState(diag=diag, anti=anti)


def make_ghz_mixed(p: float) -> XState:
    """GHZ projector blended with white noise of weight p."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    diag = np.full(8, p / 8.0)
    diag[0] = diag[7] = (4.0 - 3.0 * p) / 8.0
    anti = np.array([(1.0 - p) / 2.0, 0.0, 0.0, 0.0], dtype=complex)
    return XState(diag=diag, anti=anti)


def make_bell_type(c1: float, c2: float, c3: float) -> XState:
    """Triple-Pauli correlated state (1/8)(1 + sum_i c_i s_i x s_i x s_i)."""
    c = (float(c1), float(c2), float(c3))
    if any(not 0.0 <= ci <= 1.0 for ci in c):
        raise DomainError(f"coefficients must lie in [0, 1], got {c}")
    if c[0] ** 2 + c[1] ** 2 + c[2] ** 2 > 1.0 + 1e-12:
        raise DomainError(f"c1^2 + c2^2 + c3^2 = {sum(ci**2 for ci in c)!r} exceeds 1")
    c1, c2, c3 = c
    diag = np.array([1 + c3, 1 - c3, 1 - c3, 1 + c3, 1 - c3, 1 + c3, 1 + c3, 1 - c3]) / 8.0
    anti = np.array([c1 + 1j * c2, c1 - 1j * c2, c1 - 1j * c2, c1 + 1j * c2]) / 8.0
    return XState(diag=diag, anti=anti)


def eigenvalues_closed(x: XState) -> np.ndarray:
    """All eight eigenvalues lambda_i^+- in descending order."""
    t = x.block_traces()
    d = x.block_dets()
    disc = np.sqrt(np.clip(t**2 - 4.0 * d, 0.0, None))
    vals = np.concatenate([(t + disc) / 2.0, (t - disc) / 2.0])
    return np.sort(np.clip(vals, 0.0, None))[::-1]


def _block_norms(x: XState) -> np.ndarray:
    """n_i = sqrt(t_i + 2 sqrt(d_i)); n_i = 0 marks an identically zero block."""
    t = x.block_traces()
    d = x.block_dets()
    return np.sqrt(np.clip(t + 2.0 * np.sqrt(d), 0.0, None))


def sqrt_closed(x: XState) -> XState:
    """Closed-form principal square root; X-shaped like the input.

    For block i the square root divides by n_i = sqrt(t_i + 2 sqrt(d_i)).
    A vanishing n_i means the entire block is zero, and its 0/0 entries
    resolve to 0; a vanishing n_i with nonzero entries cannot occur for a
    PSD input and raises DegenerateBlock.
    """
    n = _block_norms(x)
    d = x.block_dets()
    sdiag = np.zeros(8)
    santi = np.zeros(4, dtype=complex)
    for i, (k, l) in enumerate(ANTI_PAIRS):
        if n[i] <= 0.0:
            if max(x.diag[k], x.diag[l], abs(x.anti[i])) > 1e-12:
                raise DegenerateBlock(f"block {i+1} has zero norm but nonzero entries")
            continue
        root = np.sqrt(d[i])
        sdiag[k] = (x.diag[k] + root) / n[i]
        sdiag[l] = (x.diag[l] + root) / n[i]
        santi[i] = x.anti[i] / n[i]
    return XState(diag=sdiag, anti=santi)


def _pauli_tensor_of_x(diag: np.ndarray, anti: np.ndarray) -> np.ndarray:
    """4x4x4 tensor tr(M sigma_a x sigma_b x sigma_c) of an X-shaped matrix M.

    Only the sixteen SUPPORT_TRIPLES can be nonzero: the diagonal feeds the
    {0,3}^3 sector through parity signs, each coherence a_i feeds the
    {1,2}^3 sector through the transition amplitudes of sigma_1 and sigma_2.
    """
    R = np.zeros((4, 4, 4))
    signs = {0: (1.0, 1.0), 3: (1.0, -1.0)}
    for a in (0, 3):
        for b in (0, 3):
            for c in (0, 3):
                acc = 0.0
                for k, (q1, q2, q3) in enumerate(BASIS_BITS):
                    acc += diag[k] * signs[a][q1] * signs[b][q2] * signs[c][q3]
                R[a, b, c] = acc
    # <1-q|sigma_1|q> = 1 and <1-q|sigma_2|q> = i(1-2q)
    amp = {1: (1.0, 1.0), 2: (1j, -1j)}
    for a in (1, 2):
        for b in (1, 2):
            for c in (1, 2):
                acc = 0.0
                for i, (k, _) in enumerate(ANTI_PAIRS):
                    q1, q2, q3 = BASIS_BITS[k]
                    acc += 2.0 * np.real(anti[i] * amp[a][q1] * amp[b][q2] * amp[c][q3])
                R[a, b, c] = acc
    return R


def fano_bloch_R(x: XState) -> np.ndarray:
    """Pauli correlation tensor R_abc = tr(rho sigma_a x sigma_b x sigma_c)."""
    return _pauli_tensor_of_x(x.diag, x.anti)


def fano_bloch_T(x: XState) -> np.ndarray:
    """Pauli correlation tensor of the square root of the state.

    Uses the same trace normalisation as :func:`fano_bloch_R`, so the
    square root is recovered as (1/8) sum T_abc sigma_a x sigma_b x sigma_c.
    """
    s = sqrt_closed(x)
    return _pauli_tensor_of_x(s.diag, s.anti)


def random_xstate(rng: np.random.Generator) -> XState:
    """One random valid X state: flat-simplex diagonal, coherences uniform
    in the positivity disc of each block."""
    diag = rng.dirichlet(np.ones(8))
    anti = np.empty(4, dtype=complex)
    for i, (k, l) in enumerate(ANTI_PAIRS):
        rmax = np.sqrt(diag[k] * diag[l])
        r = rmax * np.sqrt(rng.uniform())
        anti[i] = r * np.exp(2j * np.pi * rng.uniform())
    return validate(diag, anti)


def random_xstates(n: int, seed: int = 0x5EED) -> list[XState]:
    """Deterministic list of n random X states."""
    rng = np.random.default_rng(seed)
    return [random_xstate(rng) for _ in range(n)]


def serialize(x: XState) -> str:
    """One-line text record: 8 reals then 4 complex entries as re,im pairs."""
    fields = [format(v, ".17g") for v in x.diag]
    fields += [f"{a.real:.17g},{a.imag:.17g}" for a in x.anti]
    return " ".join(fields)


def deserialize(text: str) -> XState:
    """Parse the 12-field record produced by :func:`serialize`.

    Lines starting with '#' are ignored; fields may be separated by any
    whitespace, including newlines.  The state is validated.
    """
    tokens: list[str] = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0]
        tokens.extend(stripped.split())
    if len(tokens) != 12:
        raise DomainError(f"expected 12 fields (8 reals + 4 re,im pairs), got {len(tokens)}")
    try:
        diag = [float(tok) for tok in tokens[:8]]
        anti = []
        for tok in tokens[8:]:
            re, im = tok.split(",")
            anti.append(complex(float(re), float(im)))
    except ValueError as exc:
        raise DomainError(f"malformed state record: {exc}") from exc
    return validate(diag, anti)


def read_state_file(path) -> XState:
    with open(path, "r", encoding="utf-8") as fh:
        return deserialize(fh.read())


def write_state_file(x: XState, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(x) + "\n")
