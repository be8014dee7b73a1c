"""Coboundary matrices, trivializations and cohomology groups H^k(G, Z_N)."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from anomalous_actions.cochains import Cochain, differential, is_cocycle
from anomalous_actions.errors import (
    ConstructionInvariantError,
    InvalidArgumentError,
    PreconditionViolation,
    ResourceLimitError,
)
from anomalous_actions.groups import FiniteGroup
from anomalous_actions.smith import local_invariants, invariant_factors, solve_mod

logger = logging.getLogger(__name__)

DEFAULT_GUARDRAIL = 20000


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors of a finite abelian group; an empty tuple is the trivial group."""

    factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(f < 2 for f in self.factors):
            raise InvalidArgumentError(f"Invariant factors must be at least 2, got {self.factors}.")
        if any(b % a for a, b in zip(self.factors, self.factors[1:])):
            raise InvalidArgumentError(f"Invariant factors must divide each other in order, got {self.factors}.")

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        return " + ".join(f"Z/{f}" for f in self.factors) if self.factors else "0"


def _non_identity(group: FiniteGroup) -> np.ndarray:
    return np.array([g for g in group.elements() if g != group.identity], dtype=np.int64)


def normalized_slots(group: FiniteGroup, k: int) -> np.ndarray:
    """All k-tuples of non-identity elements in lexicographic order, shape (count, k)."""
    others = _non_identity(group)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(others, repeat=k)), dtype=np.int64).reshape(-1, k)


def coboundary_matrix(group: FiniteGroup, k: int) -> np.ndarray:
    """Integer matrix of d: C^k -> C^{k+1} on normalized slots.

    Rows are normalized (k+1)-tuples and columns normalized k-tuples, both in ``normalized_slots`` order.
    """
    rows = normalized_slots(group, k + 1)
    n_cols = (group.order - 1) ** k
    matrix = np.zeros((rows.shape[0], n_cols), dtype=np.int64)
    if k == 0 or rows.shape[0] == 0:
        return matrix

    position = np.full(group.order, -1, dtype=np.int64)
    position[_non_identity(group)] = np.arange(group.order - 1)
    radix = (group.order - 1) ** np.arange(k - 1, -1, -1)
    row_index = np.arange(rows.shape[0])

    terms: List[Tuple[int, np.ndarray]] = [(1, rows[:, 1:])]
    for i in range(1, k + 1):
        merged = group.mult[rows[:, i - 1], rows[:, i]][:, None]
        terms.append(((-1) ** i, np.hstack([rows[:, : i - 1], merged, rows[:, i + 1 :]])))
    terms.append(((-1) ** (k + 1), rows[:, :k]))

    for sign, args in terms:
        valid = (args != group.identity).all(axis=1)
        cols = position[args[valid]] @ radix
        np.add.at(matrix, (row_index[valid], cols), sign)
    return matrix


def _check_guardrail(size: int, guardrail: int, what: str) -> None:
    if size > guardrail:
        logger.error("%s needs %d unknowns, above the guardrail of %d.", what, size, guardrail)
        raise ResourceLimitError(f"{what} needs {size} unknowns (guardrail {guardrail}).")


def coboundary_solve(phi: Cochain, modulus: int, guardrail: int = DEFAULT_GUARDRAIL) -> Optional[Cochain]:
    """Some normalized beta with values in (1/modulus)Z/Z and d(beta) = phi, or None."""
    group, k = phi.group, phi.degree
    if k < 1:
        raise InvalidArgumentError("coboundary_solve needs a cochain of degree at least 1.")
    if modulus % phi.modulus:
        raise InvalidArgumentError(f"Modulus {modulus} is not a multiple of the cochain modulus {phi.modulus}.")
    if not is_cocycle(phi):
        logger.error("coboundary_solve called on a non-closed %d-cochain on %s.", k, group.name)
        raise PreconditionViolation(f"The {k}-cochain on {group.name} is not a cocycle.")
    _check_guardrail(group.order ** (k - 1), guardrail, f"Solving for a {k - 1}-cochain on {group.name}")

    if k == 1:
        # normalized 0-cochains have zero differential
        return Cochain.zero(group, 0, modulus) if phi.is_zero() else None

    matrix = coboundary_matrix(group, k - 1)
    slots = normalized_slots(group, k)
    rhs = phi.rescaled(modulus).data[tuple(slots.T)]
    logger.debug("Coboundary system on %s: %s mod %d", group.name, matrix.shape, modulus)
    solution = solve_mod(matrix, rhs, modulus)
    if solution is None:
        return None

    data = np.zeros((group.order,) * (k - 1), dtype=np.int64)
    data[tuple(normalized_slots(group, k - 1).T)] = solution
    beta = Cochain(group, k - 1, modulus, data)
    if differential(beta) != phi:
        raise ConstructionInvariantError(f"Solver returned a non-solution on {group.name} in degree {k - 1}.")
    return beta


def cohomology(group: FiniteGroup, modulus: int, k: int, guardrail: int = DEFAULT_GUARDRAIL) -> AbelianInvariants:
    """Invariant factors of H^k(G, Z_modulus) with trivial action."""
    if k < 0:
        raise InvalidArgumentError(f"Cohomology degree must be non-negative, got {k}.")
    if modulus < 1:
        raise InvalidArgumentError(f"Coefficient modulus must be positive, got {modulus}.")
    _check_guardrail(group.order**k, guardrail, f"H^{k}({group.name})")

    size = (group.order - 1) ** k
    incoming = local_invariants(coboundary_matrix(group, k - 1), modulus) if k > 0 else {}
    outgoing = local_invariants(coboundary_matrix(group, k), modulus)

    elementary: Dict[int, List[int]] = {}
    for p, (rank_out, vals_out) in outgoing.items():
        rank_in, vals_in = incoming.get(p, (0, []))
        exponent = _exponent(modulus, p)
        free = size - rank_in - rank_out
        elementary[p] = vals_in + vals_out + [exponent] * free
    result = AbelianInvariants(tuple(invariant_factors(elementary)))
    logger.debug("H^%d(%s, Z/%d) = %s", k, group.name, modulus, result)
    return result


def _exponent(modulus: int, prime: int) -> int:
    exponent = 0
    while modulus % prime == 0:
        modulus //= prime
        exponent += 1
    return exponent


def cx_triviality_test(phi: Cochain, guardrail: int = DEFAULT_GUARDRAIL) -> bool:
    """Whether a Z_N-valued cocycle becomes a coboundary with values in Q/Z.

    Solutions are searched with values in (1/(N |G|))Z/Z, which bounds the denominators a trivialization
    over Q/Z needs on a finite group.
    """
    return coboundary_solve(phi, phi.modulus * phi.group.order, guardrail) is not None
