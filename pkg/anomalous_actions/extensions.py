"""Surjections with kernels, set-theoretic sections and the gamma discrepancy."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

import numpy as np

from anomalous_actions.cochains import Cochain, is_cocycle
from anomalous_actions.errors import ConstructionInvariantError, InvalidArgumentError, PreconditionViolation
from anomalous_actions.groups import FiniteGroup, GroupHom, subgroup

logger = logging.getLogger(__name__)

TablePair = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True, eq=False)
class Section:
    """A unital set-theoretic section q -> q_hat of a surjection."""

    surjection: GroupHom
    lift: np.ndarray

    def __post_init__(self) -> None:
        lift = np.array(self.lift, dtype=np.int64)
        quotient = self.surjection.target
        if lift.shape != (quotient.order,):
            raise InvalidArgumentError(f"A section of {quotient.name} needs {quotient.order} lifts, got {lift.shape}.")
        if lift.min() < 0 or lift.max() >= self.surjection.source.order:
            raise InvalidArgumentError("Section lifts must be elements of the source group.")
        lift.flags.writeable = False
        object.__setattr__(self, "lift", lift)

    def __call__(self, q: int) -> int:
        return int(self.lift[q])


@dataclass(frozen=True, eq=False)
class ExtensionData:
    """G -> Q with kernel K, a section and the gamma table.

    ``gamma`` holds indices into ``kernel_group``; ``gamma_of`` translates them back to elements of G.
    Instances are not validated on construction so that altered data can still be reported;
    ``defects()`` lists every violated invariant.
    """

    G: FiniteGroup
    Q: FiniteGroup
    rho: GroupHom
    kernel_elems: Tuple[int, ...]
    kernel_group: FiniteGroup
    kernel_embedding: GroupHom
    section: Section
    gamma: np.ndarray
    kernel_index: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        index = np.full(self.G.order, -1, dtype=np.int64)
        index[self.kernel_embedding.map] = np.arange(self.kernel_group.order)
        index.flags.writeable = False
        gamma = np.array(self.gamma, dtype=np.int64)
        gamma.flags.writeable = False
        object.__setattr__(self, "kernel_index", index)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def from_section(cls, rho: GroupHom, section: Section) -> ExtensionData:
        """Derive kernel and gamma from a surjection and a section."""
        if section.surjection is not rho:
            raise InvalidArgumentError("Section does not belong to the given surjection.")
        if not rho.is_surjective():
            raise InvalidArgumentError(f"{rho.source.name} -> {rho.target.name} is not surjective.")
        G, Q = rho.source, rho.target
        kernel_elems = rho.kernel()
        kernel_group, embedding = subgroup(G, kernel_elems, name=f"ker({G.name}->{Q.name})")

        kernel_index = np.full(G.order, -1, dtype=np.int64)
        kernel_index[list(kernel_elems)] = np.arange(len(kernel_elems))
        lift = section.lift
        # gamma(q, r) = q_hat r_hat (qr)_hat^-1
        products = G.mult[lift[:, None], lift[None, :]]
        target = G.inverse[lift[Q.mult]]
        discrepancy = G.mult[products, target]
        gamma = kernel_index[discrepancy]
        if (gamma < 0).any():
            q, r = (int(x) for x in np.argwhere(gamma < 0)[0])
            logger.error("Section is not compatible with %s: gamma(%d,%d) leaves the kernel.", rho.source.name, q, r)
            raise InvalidArgumentError(f"Section lifts do not map onto the quotient (gamma({q},{r}) not in K).")
        return cls(
            G=G,
            Q=Q,
            rho=rho,
            kernel_elems=tuple(kernel_elems),
            kernel_group=kernel_group,
            kernel_embedding=embedding,
            section=section,
            gamma=gamma,
        )

    def lift(self, q: int) -> int:
        return self.section(q)

    def gamma_element(self, q: int, r: int) -> int:
        return int(self.kernel_embedding.map[self.gamma[q, r]])

    def gamma_elements(self) -> np.ndarray:
        """The gamma table as elements of G."""
        return self.kernel_embedding.map[self.gamma]

    def with_gamma(self, gamma: np.ndarray) -> ExtensionData:
        return replace(self, gamma=np.asarray(gamma, dtype=np.int64))

    # invariant tables: each returns (lhs, rhs) pairs that agree exactly when the invariant holds

    def section_tables(self) -> List[TablePair]:
        """rho(q_hat) = q for every q, and e_hat = e."""
        lift = self.section.lift
        return [
            (self.rho.map[lift], np.arange(self.Q.order)),
            (lift[[self.Q.identity]], np.array([self.G.identity])),
        ]

    def kernel_tables(self) -> List[TablePair]:
        """K = {g : rho(g) = e}, and rho(g k g^-1) = e over G x K."""
        G = self.G
        members = np.zeros(G.order, dtype=np.int64)
        members[list(self.kernel_elems)] = 1
        expected = (self.rho.map == self.Q.identity).astype(np.int64)
        k = self.kernel_embedding.map
        conj = G.mult[G.mult[np.arange(G.order)[:, None], k[None, :]], G.inverse[:, None]]
        lhs = self.rho.map[conj]
        return [(members, expected), (lhs, np.full_like(lhs, self.Q.identity))]

    def gamma_tables(self) -> List[TablePair]:
        """Over Q x Q: q_hat r_hat = gamma(q,r) (qr)_hat."""
        G, Q = self.G, self.Q
        lift = self.section.lift
        lhs = G.mult[lift[:, None], lift[None, :]]
        rhs = G.mult[self.gamma_elements(), lift[Q.mult]]
        return [(lhs, rhs)]

    def gamma_identity_tables(self) -> List[TablePair]:
        """Over Q^3: gamma(q,r) gamma(qr,s) = q_hat gamma(r,s) q_hat^-1 gamma(q,rs)."""
        G, Q = self.G, self.Q
        lift = self.section.lift
        gam = self.gamma_elements()
        q, r, s = np.indices((Q.order,) * 3)
        lhs = G.mult[gam[q, r], gam[Q.mult[q, r], s]]
        conj = G.mult[G.mult[lift[q], gam[r, s]], G.inverse[lift[q]]]
        rhs = G.mult[conj, gam[q, Q.mult[r, s]]]
        return [(lhs, rhs)]

    def invariant_tables(self) -> Dict[str, List[TablePair]]:
        return {
            "extension_section": self.section_tables(),
            "extension_kernel": self.kernel_tables(),
            "extension_gamma": self.gamma_tables(),
            "gamma_identity": self.gamma_identity_tables(),
        }

    def defects(self) -> List[str]:
        """Names of the violated invariants; empty for valid data."""
        return [
            name
            for name, pairs in self.invariant_tables().items()
            if not all(np.array_equal(lhs, rhs) for lhs, rhs in pairs)
        ]


def gamma_of(ext: ExtensionData, q: int, r: int) -> int:
    """The element k of K (as an element of G) with q_hat r_hat = k (qr)_hat."""
    return ext.gamma_element(q, r)


def central_extension(Q: FiniteGroup, N: int, sigma: Cochain) -> ExtensionData:
    """Z_N x Q with (a,q)(b,r) = (a + b + N sigma(q,r) mod N, qr).

    Element (a, q) has index a * |Q| + q; the section is q -> (0, q) and K = Z_N x {e}.
    """
    if N < 1:
        raise InvalidArgumentError(f"Extension modulus must be positive, got {N}.")
    if not sigma.group.is_same(Q) or sigma.degree != 2:
        raise InvalidArgumentError(f"sigma must be a 2-cochain on {Q.name}.")
    if N % sigma.modulus:
        raise InvalidArgumentError(f"sigma has values outside (1/{N})Z/Z (modulus {sigma.modulus}).")
    if not is_cocycle(sigma):
        logger.error("Extension cocycle on %s is not closed.", Q.name)
        raise PreconditionViolation(f"sigma is not a 2-cocycle on {Q.name}.")

    m = Q.order
    s = sigma.rescaled(N).data
    a = np.arange(N)[:, None, None, None]
    q = np.arange(m)[None, :, None, None]
    b = np.arange(N)[None, None, :, None]
    r = np.arange(m)[None, None, None, :]
    fiber = (a + b + s[q, r]) % N
    mult = (fiber * m + Q.mult[q, r]).reshape(N * m, N * m)
    labels = [f"({x},{Q.label(y)})" for x in range(N) for y in range(m)]
    G = FiniteGroup(name=f"Z{N}.{Q.name}", mult=mult, labels=tuple(labels))

    rho = GroupHom(source=G, target=Q, map=np.arange(N * m) % m)
    section = Section(surjection=rho, lift=np.arange(m))
    ext = ExtensionData.from_section(rho, section)
    defects = ext.defects()
    if defects:
        logger.error("Central extension of %s by Z%d violates %s.", Q.name, N, defects)
        raise ConstructionInvariantError(f"Central extension violates {defects}.")
    logger.debug("Built central extension %s of order %d", G.name, G.order)
    return ext
