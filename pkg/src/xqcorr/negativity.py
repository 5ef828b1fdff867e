"""Bipartite and tripartite negativity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import check_density, partial_transpose

_NEG_FLOOR = -1e-10


@dataclass(frozen=True)
class NegativityReport:
    """Per-bipartition negativities and their geometric mean."""

    n1: float
    n2: float
    n3: float
    n3partite: float


def bipartite_negativity(rho: np.ndarray, sub: int) -> float:
    """Trace norm of the partial transpose minus one: sum_i |lambda_i| - 1.

    Rounding-level negatives (above -1e-10) are reported as 0.
    """
    rho = check_density(np.asarray(rho, dtype=complex))
    vals = np.linalg.eigvalsh(partial_transpose(rho, sub))
    value = float(np.sum(np.abs(vals)) - 1.0)
    return 0.0 if _NEG_FLOOR < value < 0.0 else value


def tripartite_negativity(rho: np.ndarray) -> NegativityReport:
    """Geometric mean of the three one-vs-two bipartite negativities."""
    n = [bipartite_negativity(rho, sub) for sub in (1, 2, 3)]
    mean = float(np.cbrt(n[0] * n[1] * n[2]))
    return NegativityReport(n1=n[0], n2=n[1], n3=n[2], n3partite=mean)


def negativity_ghz(p: float) -> float:
    """Closed-form tripartite negativity of the noisy-GHZ family:

        |p/2| + |(12 - 9p)/8| + |(5p - 4)/8| - 1,

    which simplifies to max(0, 1 - 5p/4)."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    return abs(p / 2.0) + abs((12.0 - 9.0 * p) / 8.0) + abs((5.0 * p - 4.0) / 8.0) - 1.0
