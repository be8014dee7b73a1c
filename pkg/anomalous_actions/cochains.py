"""Normalized group cochains with values in the N-torsion of Q/Z.

A cochain of degree k on G stores residues r in 0..N-1 (standing for r/N) in a dense numpy array of shape
``(|G|,) * k``. The flat index is C order, so the leftmost argument is the most significant one.
The group acts trivially on coefficients.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, Iterator, Mapping, Tuple, Union

import numpy as np

from anomalous_actions.errors import InvalidArgumentError, PreconditionViolation
from anomalous_actions.groups import FiniteGroup, GroupHom, make_cyclic
from anomalous_actions.scalars import UnitScalar

if TYPE_CHECKING:
    from anomalous_actions.extensions import ExtensionData

logger = logging.getLogger(__name__)

ScalarLike = Union[UnitScalar, Fraction, int, str]


def as_scalar(value: ScalarLike) -> UnitScalar:
    if isinstance(value, UnitScalar):
        return value
    if isinstance(value, str):
        return UnitScalar.parse(value)
    return UnitScalar(Fraction(value))


@dataclass(frozen=True, eq=False)
class Cochain:
    """A normalized k-cochain on ``group`` with values in (1/modulus)Z/Z."""

    group: FiniteGroup
    degree: int
    modulus: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise InvalidArgumentError(f"Cochain degree must be non-negative, got {self.degree}.")
        if self.modulus < 1:
            raise InvalidArgumentError(f"Cochain modulus must be positive, got {self.modulus}.")
        # in-place so that a degree-0 table stays a 0-d array
        data = np.array(self.data, dtype=np.int64)
        np.remainder(data, self.modulus, out=data)
        expected = (self.group.order,) * self.degree
        if data.shape != expected:
            raise InvalidArgumentError(f"Cochain table has shape {data.shape}, expected {expected}.")
        e = self.group.identity
        for axis in range(self.degree):
            if np.take(data, e, axis=axis).any():
                raise PreconditionViolation(
                    f"Cochain on {self.group.name} is not normalized: non-zero value with identity in slot {axis}."
                )
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    # construction

    @classmethod
    def zero(cls, group: FiniteGroup, degree: int, modulus: int = 1) -> Cochain:
        return cls(group, degree, modulus, np.zeros((group.order,) * degree, dtype=np.int64))

    @classmethod
    def from_entries(
        cls, group: FiniteGroup, degree: int, modulus: int, entries: Mapping[Tuple[int, ...], ScalarLike]
    ) -> Cochain:
        """Build a cochain from its non-zero values; omitted arguments are 0."""
        data = np.zeros((group.order,) * degree, dtype=np.int64)
        for args, value in entries.items():
            if len(args) != degree:
                raise InvalidArgumentError(f"Entry {args} does not have {degree} arguments.")
            if any(not 0 <= g < group.order for g in args):
                raise InvalidArgumentError(f"Entry {args} is not a tuple of elements of {group.name}.")
            data[tuple(args)] = as_scalar(value).residue(modulus)
        return cls(group, degree, modulus, data)

    @classmethod
    def carry(cls, group: FiniteGroup) -> Cochain:
        """The carry 2-cocycle on Z_n: 1/n at (a, b) when a + b >= n, else 0."""
        n = group.order
        if not group.is_same(make_cyclic(n)):
            raise InvalidArgumentError(f"The carry cocycle needs a cyclic group Z_n, got {group.name}.")
        elements = np.arange(n)
        return cls(group, 2, n, (elements[:, None] + elements[None, :] >= n).astype(np.int64))

    @classmethod
    def character(cls, group: FiniteGroup) -> Cochain:
        """The 1-cochain a -> a/n on Z_n."""
        n = group.order
        if not group.is_same(make_cyclic(n)):
            raise InvalidArgumentError(f"The standard character needs a cyclic group Z_n, got {group.name}.")
        return cls(group, 1, n, np.arange(n))

    # access

    def value(self, *args: int) -> UnitScalar:
        return UnitScalar.of(int(self.data[args]), self.modulus)

    def residue(self, *args: int) -> int:
        return int(self.data[args])

    def entries(self) -> Dict[Tuple[int, ...], UnitScalar]:
        """Non-zero values keyed by argument tuple, in lexicographic order."""
        return {tuple(int(g) for g in args): self.value(*args) for args in np.argwhere(self.data)}

    def slots(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(range(self.group.order), repeat=self.degree)

    def is_zero(self) -> bool:
        return not self.data.any()

    def fractions(self) -> np.ndarray:
        """Values as an object array of Fractions."""
        to_fraction = np.frompyfunc(lambda r: Fraction(int(r), self.modulus), 1, 1)
        return to_fraction(self.data)

    # arithmetic

    def rescaled(self, modulus: int) -> Cochain:
        """The same values expressed over a multiple of the current modulus."""
        if modulus % self.modulus:
            raise InvalidArgumentError(f"Cannot rescale a modulus-{self.modulus} cochain to modulus {modulus}.")
        return Cochain(self.group, self.degree, modulus, self.data * (modulus // self.modulus))

    def with_entry(self, args: Tuple[int, ...], value: ScalarLike) -> Cochain:
        """Copy with one slot replaced; the modulus grows if the new value needs it."""
        scalar = as_scalar(value)
        modulus = math.lcm(self.modulus, scalar.denominator)
        data = np.array(self.rescaled(modulus).data)
        data[tuple(args)] = scalar.residue(modulus)
        return Cochain(self.group, self.degree, modulus, data)

    def _aligned(self, other: Cochain) -> Tuple[int, np.ndarray, np.ndarray]:
        if not self.group.is_same(other.group) or self.degree != other.degree:
            raise InvalidArgumentError(
                f"Cochains live in different groups ({self.group.name}/{other.group.name}, "
                f"degrees {self.degree}/{other.degree})."
            )
        modulus = math.lcm(self.modulus, other.modulus)
        return modulus, self.rescaled(modulus).data, other.rescaled(modulus).data

    def __add__(self, other: Cochain) -> Cochain:
        modulus, left, right = self._aligned(other)
        return Cochain(self.group, self.degree, modulus, left + right)

    def __sub__(self, other: Cochain) -> Cochain:
        modulus, left, right = self._aligned(other)
        return Cochain(self.group, self.degree, modulus, left - right)

    def __neg__(self) -> Cochain:
        return Cochain(self.group, self.degree, self.modulus, -self.data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        if not self.group.is_same(other.group) or self.degree != other.degree:
            return False
        _, left, right = self._aligned(other)
        return bool(np.array_equal(left, right))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        nonzero = np.count_nonzero(self.data)
        return f"Cochain(group={self.group.name}, degree={self.degree}, modulus={self.modulus}, nonzero={nonzero})"


def differential(f: Cochain) -> Cochain:
    """Coboundary with trivial coefficients.

    df(g1..gk+1) = f(g2..gk+1) + sum_i (-1)^i f(..gi gi+1..) + (-1)^(k+1) f(g1..gk).
    """
    group, k = f.group, f.degree
    if k == 0:
        return Cochain.zero(group, 1, f.modulus)

    grid = np.indices((group.order,) * (k + 1))
    acc = f.data[tuple(grid[1:])].copy()
    for i in range(1, k + 1):
        merged = group.mult[grid[i - 1], grid[i]]
        args = tuple(grid[: i - 1]) + (merged,) + tuple(grid[i + 1 :])
        acc += (-1) ** i * f.data[args]
    acc += (-1) ** (k + 1) * f.data[tuple(grid[:k])]
    return Cochain(group, k + 1, f.modulus, acc % f.modulus)


def is_cocycle(f: Cochain) -> bool:
    return differential(f).is_zero()


def cup(f: Cochain, g: Cochain) -> Cochain:
    """(f cup g)(x1..xk+m) = f(x1..xk) g(xk+1..xk+m), multiplying in Z_L for L = lcm of the moduli."""
    if not f.group.is_same(g.group):
        raise InvalidArgumentError(f"Cannot cup cochains on {f.group.name} and {g.group.name}.")
    modulus = math.lcm(f.modulus, g.modulus)
    left = f.rescaled(modulus).data
    right = g.rescaled(modulus).data
    return Cochain(f.group, f.degree + g.degree, modulus, np.multiply.outer(left, right) % modulus)


def pullback(rho: GroupHom, f: Cochain) -> Cochain:
    """rho^*(f)(h1..hk) = f(rho(h1)..rho(hk))."""
    if not rho.target.is_same(f.group):
        raise InvalidArgumentError(f"Cannot pull back a cochain on {f.group.name} along a map into {rho.target.name}.")
    if f.degree == 0:
        return Cochain(rho.source, 0, f.modulus, f.data)
    return Cochain(rho.source, f.degree, f.modulus, f.data[np.ix_(*([rho.map] * f.degree))])


def restrict(f: Cochain, ext: ExtensionData) -> Cochain:
    """Restriction of a cochain on G to the kernel subgroup K."""
    if not f.group.is_same(ext.G):
        raise InvalidArgumentError(f"Cochain lives on {f.group.name}, not on the extension group {ext.G.name}.")
    return pullback(ext.kernel_embedding, f)
