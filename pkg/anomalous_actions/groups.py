"""Finite groups presented by multiplication tables.

Elements are dense indices ``0..order-1``; the table is the only source of truth.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from anomalous_actions.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MAX_SYMMETRIC_DEGREE = 5


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    Construction validates the table eagerly (Latin square, two-sided identity, associativity);
    invalid tables are rejected, never repaired.
    """

    name: str
    mult: np.ndarray
    labels: Tuple[str, ...] = ()
    factors: Tuple["FiniteGroup", ...] = ()
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        mult = np.array(self.mult, dtype=np.int64)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or mult.shape[0] == 0:
            raise InvalidArgumentError(f"Group '{self.name}': multiplication table must be a non-empty square table.")
        order = mult.shape[0]
        if mult.min() < 0 or mult.max() >= order:
            raise InvalidArgumentError(f"Group '{self.name}': table entries must lie in 0..{order - 1}.")

        expected = np.arange(order)
        if not (np.sort(mult, axis=1) == expected).all() or not (np.sort(mult, axis=0) == expected[:, None]).all():
            raise InvalidArgumentError(f"Group '{self.name}': every row and column must be a permutation.")

        units = [e for e in range(order) if (mult[e] == expected).all() and (mult[:, e] == expected).all()]
        if len(units) != 1:
            raise InvalidArgumentError(f"Group '{self.name}': no two-sided identity element.")
        identity = units[0]

        # (ab)c == a(bc) over all triples
        left = mult[mult[:, :, None], expected[None, None, :]]
        right = mult[expected[:, None, None], mult[None, :, :]]
        if not (left == right).all():
            a, b, c = (int(x) for x in np.argwhere(left != right)[0])
            raise InvalidArgumentError(f"Group '{self.name}': table is not associative at ({a},{b},{c}).")

        inverse = np.argmax(mult == identity, axis=1).astype(np.int64)
        if self.labels and len(self.labels) != order:
            raise InvalidArgumentError(f"Group '{self.name}': expected {order} labels, got {len(self.labels)}.")

        mult.flags.writeable = False
        inverse.flags.writeable = False
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "labels", tuple(str(label) for label in self.labels))
        logger.debug("Validated group %s of order %d", self.name, order)

    @property
    def order(self) -> int:
        return int(self.mult.shape[0])

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def product(self, *elements: int) -> int:
        acc = self.identity
        for element in elements:
            acc = int(self.mult[acc, element])
        return acc

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def index_of(self, label: str) -> int:
        if not self.labels:
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise InvalidArgumentError(f"Group '{self.name}' has no element labelled '{label}'.") from e

    def is_abelian(self) -> bool:
        return bool((self.mult == self.mult.T).all())

    def is_same(self, other: FiniteGroup) -> bool:
        """Two groups are the same when their tables coincide."""
        return other is self or np.array_equal(self.mult, other.mult)


def conjugate(group: FiniteGroup, k: int, g: int) -> int:
    """Return g k g^-1."""
    return group.product(g, k, group.inv(g))


def element_order(group: FiniteGroup, g: int) -> int:
    power, order = g, 1
    while power != group.identity:
        power = group.mul(power, g)
        order += 1
    return order


def center(group: FiniteGroup) -> Tuple[int, ...]:
    mult = group.mult
    return tuple(g for g in group.elements() if (mult[g, :] == mult[:, g]).all())


def make_table_group(mult: Sequence[Sequence[int]], labels: Sequence[str] = (), name: str = "table") -> FiniteGroup:
    return FiniteGroup(name=name, mult=np.asarray(mult, dtype=np.int64), labels=tuple(labels))


def make_cyclic(n: int) -> FiniteGroup:
    """Z_n with i*j := (i + j) mod n and identity 0."""
    if n < 1:
        raise InvalidArgumentError(f"Cyclic group order must be positive, got {n}.")
    elements = np.arange(n)
    return FiniteGroup(name=f"Z{n}", mult=(elements[:, None] + elements[None, :]) % n)


def make_symmetric(n: int) -> FiniteGroup:
    """S_n on one-line permutations in lexicographic order.

    The product st applies t first: (st)(i) = s(t(i)). Labels are 1-based one-line strings, e.g. "213".
    """
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise InvalidArgumentError(f"Symmetric degree must lie in 1..{MAX_SYMMETRIC_DEGREE}, got {n}.")
    perms = list(itertools.permutations(range(n)))
    index: Dict[Tuple[int, ...], int] = {perm: i for i, perm in enumerate(perms)}
    mult = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    labels = ["".join(str(x + 1) for x in perm) for perm in perms]
    return FiniteGroup(name=f"S{n}", mult=np.asarray(mult, dtype=np.int64), labels=tuple(labels))


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product with mixed-radix packing, first factor most significant."""
    if not groups:
        raise InvalidArgumentError("direct_product needs at least one factor.")
    orders = [group.order for group in groups]
    tuples = list(itertools.product(*(range(order) for order in orders)))
    index = {t: i for i, t in enumerate(tuples)}
    mult = [[index[tuple(g.mul(x, y) for g, x, y in zip(groups, s, t))] for t in tuples] for s in tuples]
    labels = ["(" + ",".join(g.label(x) for g, x in zip(groups, t)) + ")" for t in tuples]
    name = "x".join(group.name for group in groups)
    return FiniteGroup(name=name, mult=np.asarray(mult, dtype=np.int64), labels=tuple(labels), factors=tuple(groups))


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by its value on every element; the hom law is checked exhaustively."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __post_init__(self) -> None:
        image = np.array(self.map, dtype=np.int64)
        if image.shape != (self.source.order,):
            raise InvalidArgumentError(f"Homomorphism map needs {self.source.order} entries, got {image.shape}.")
        if image.min() < 0 or image.max() >= self.target.order:
            raise InvalidArgumentError("Homomorphism map leaves the target group.")
        if image[self.source.identity] != self.target.identity:
            raise InvalidArgumentError("Homomorphism must send the identity to the identity.")
        broken = image[self.source.mult] != self.target.mult[image[:, None], image[None, :]]
        if broken.any():
            x, y = (int(v) for v in np.argwhere(broken)[0])
            raise InvalidArgumentError(f"Map {self.source.name}->{self.target.name} is not multiplicative at {x},{y}.")
        image.flags.writeable = False
        object.__setattr__(self, "map", image)

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    @classmethod
    def identity(cls, group: FiniteGroup) -> GroupHom:
        return cls(source=group, target=group, map=np.arange(group.order))

    def compose(self, first: GroupHom) -> GroupHom:
        """Return self after first."""
        return GroupHom(source=first.source, target=self.target, map=self.map[first.map])

    def kernel(self) -> Tuple[int, ...]:
        return tuple(int(g) for g in np.flatnonzero(self.map == self.target.identity))

    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.target.order


def projection(group: FiniteGroup, factor: int) -> GroupHom:
    """Projection of a direct product onto one of its factors."""
    if not group.factors:
        raise InvalidArgumentError(f"Group '{group.name}' is not a direct product.")
    if not 0 <= factor < len(group.factors):
        raise InvalidArgumentError(f"Factor index {factor} out of range for '{group.name}'.")
    orders = [g.order for g in group.factors]
    stride = int(np.prod(orders[factor + 1 :], dtype=np.int64))
    image = (np.arange(group.order) // stride) % orders[factor]
    return GroupHom(source=group, target=group.factors[factor], map=image)


def subgroup(group: FiniteGroup, elements: Sequence[int], name: Optional[str] = None) -> Tuple[FiniteGroup, GroupHom]:
    """Return a subgroup as a group in its own right together with its embedding.

    Elements are re-indexed in increasing order of their index in ``group``.
    """
    members = sorted(set(int(g) for g in elements))
    position = {g: i for i, g in enumerate(members)}
    try:
        mult = [[position[group.mul(x, y)] for y in members] for x in members]
    except KeyError as e:
        raise InvalidArgumentError(f"Elements {members} are not closed under multiplication.") from e
    labels = [group.label(g) for g in members]
    sub = FiniteGroup(name=name or f"{group.name}_sub", mult=np.asarray(mult, dtype=np.int64), labels=tuple(labels))
    return sub, GroupHom(source=sub, target=group, map=np.asarray(members, dtype=np.int64))
