"""Elimination over Z/p^a and Z/N for integer matrices.

Over the local ring Z/p^a every entry is a unit times a power of p. Choosing the pivot of minimal p-valuation
(first in row-major order among the remaining block) guarantees that the pivot divides every other entry of
its row and column, so row elimination alone reaches an echelon form whose pivot valuations are the local
Smith invariants. Results for a composite modulus are glued together by the Chinese remainder theorem.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import factorint
from sympy.ntheory.modular import crt

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalEchelon:
    """Row echelon form of a matrix over Z/prime^exponent.

    ``pivots`` holds (row, column, valuation) triples in elimination order; pivot rows are rows
    ``0..rank-1`` of ``matrix`` and every pivot entry equals prime^valuation.
    """

    prime: int
    exponent: int
    matrix: np.ndarray
    rhs: Optional[np.ndarray]
    pivots: Tuple[Tuple[int, int, int], ...]

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def valuations(self) -> List[int]:
        return [v for _, _, v in self.pivots]


def _min_valuation_pivot(block: np.ndarray, prime: int, exponent: int) -> Optional[Tuple[int, int, int]]:
    for v in range(exponent):
        hits = np.flatnonzero(block % prime ** (v + 1))
        if hits.size:
            row, col = np.unravel_index(hits[0], block.shape)
            return int(row), int(col), v
    return None


def local_echelon(matrix: np.ndarray, prime: int, exponent: int, rhs: Optional[np.ndarray] = None) -> LocalEchelon:
    """Eliminate ``matrix`` over Z/prime^exponent, applying the same row operations to ``rhs``."""
    P = prime**exponent
    work = np.array(matrix, dtype=np.int64) % P
    b = None if rhs is None else np.array(rhs, dtype=np.int64) % P
    rows, cols = work.shape
    free_cols = list(range(cols))
    pivots: List[Tuple[int, int, int]] = []

    for t in range(min(rows, cols)):
        found = _min_valuation_pivot(work[t:, free_cols], prime, exponent) if free_cols else None
        if found is None:
            break
        r, c_pos, v = found
        r += t
        c = free_cols.pop(c_pos)
        if r != t:
            work[[t, r]] = work[[r, t]]
            if b is not None:
                b[[t, r]] = b[[r, t]]

        scale = pow(int(work[t, c]) // prime**v, -1, P)
        work[t] = (work[t] * scale) % P
        if b is not None:
            b[t] = (b[t] * scale) % P

        below = work[t + 1 :, c] // prime**v
        if below.any():
            work[t + 1 :] = (work[t + 1 :] - np.outer(below, work[t])) % P
            if b is not None:
                b[t + 1 :] = (b[t + 1 :] - below * b[t]) % P
        pivots.append((t, c, v))

    return LocalEchelon(prime=prime, exponent=exponent, matrix=work, rhs=b, pivots=tuple(pivots))


def local_solve(echelon: LocalEchelon) -> Optional[np.ndarray]:
    """Back-substitute an echelon form built with a right-hand side; free unknowns are set to 0."""
    if echelon.rhs is None:
        raise ValueError("Echelon form was built without a right-hand side.")
    P = echelon.modulus
    work, b = echelon.matrix, echelon.rhs
    if b[echelon.rank :].any():
        return None

    x = np.zeros(work.shape[1], dtype=np.int64)
    for t, c, v in reversed(echelon.pivots):
        residual = int((b[t] - int(work[t] @ x)) % P)
        step = echelon.prime**v
        if residual % step:
            return None
        # the pivot is exactly p^v after scaling, so dividing the residual solves the row
        x[c] = (residual // step) % P
    return x


def prime_power_parts(modulus: int) -> Dict[int, int]:
    return {int(p): int(a) for p, a in factorint(modulus).items()}


def crt_idempotents(modulus: int) -> Dict[int, int]:
    """e_p with e_p = 1 mod p^a and e_p = 0 mod the other prime powers of ``modulus``."""
    parts = prime_power_parts(modulus)
    moduli = [p**a for p, a in parts.items()]
    idempotents: Dict[int, int] = {}
    for i, p in enumerate(parts):
        residues = [1 if j == i else 0 for j in range(len(moduli))]
        result = crt(moduli, residues)
        idempotents[p] = int(result[0]) if result is not None else 1
    return idempotents


def solve_mod(matrix: np.ndarray, rhs: np.ndarray, modulus: int) -> Optional[np.ndarray]:
    """Some x with matrix @ x = rhs (mod modulus), or None."""
    cols = matrix.shape[1]
    if modulus == 1:
        return np.zeros(cols, dtype=np.int64)
    idempotents = crt_idempotents(modulus)
    x = np.zeros(cols, dtype=np.int64)
    for p, a in prime_power_parts(modulus).items():
        echelon = local_echelon(matrix, p, a, rhs)
        logger.debug("Local solve at %d^%d: rank %d of %s", p, a, echelon.rank, matrix.shape)
        local = local_solve(echelon)
        if local is None:
            return None
        x = (x + local * idempotents[p]) % modulus
    return x


def local_invariants(matrix: np.ndarray, modulus: int) -> Dict[int, Tuple[int, List[int]]]:
    """Per prime p dividing ``modulus``: (rank, pivot valuations) of ``matrix`` over Z/p^a."""
    out: Dict[int, Tuple[int, List[int]]] = {}
    if modulus == 1:
        return out
    for p, a in prime_power_parts(modulus).items():
        echelon = local_echelon(matrix, p, a)
        logger.debug("Local Smith form at %d^%d: rank %d, valuations %s", p, a, echelon.rank, echelon.valuations())
        out[p] = (echelon.rank, echelon.valuations())
    return out


def invariant_factors(prime_powers: Dict[int, List[int]]) -> List[int]:
    """Combine elementary divisors p^e into invariant factors, each dividing the next."""
    columns: List[List[int]] = []
    for p, exponents in prime_powers.items():
        powers = sorted((p**e for e in exponents if e > 0), reverse=True)
        columns.append(powers)
    length = max((len(c) for c in columns), default=0)
    factors = []
    for i in range(length):
        factor = 1
        for powers in columns:
            if i < len(powers):
                factor *= powers[i]
        factors.append(factor)
    return sorted(factors)
