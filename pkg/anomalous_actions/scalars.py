from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from anomalous_actions.errors import InvalidArgumentError


@dataclass(frozen=True, order=True)
class UnitScalar:
    """An element of Q/Z standing for the root of unity exp(2*pi*i*value).

    The group law is addition modulo 1, so composing scalar morphisms adds their values.
    """

    value: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> UnitScalar:
        if denominator == 0:
            raise InvalidArgumentError("UnitScalar denominator must be non-zero.")
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parse(cls, text: str) -> UnitScalar:
        """Parse ``"p/q"`` or an integer string."""
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidArgumentError(f"Cannot parse scalar '{text}': {e}") from e

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def residue(self, modulus: int) -> int:
        """Return r with value == r/modulus, if the value is a multiple of 1/modulus."""
        scaled = self.value * modulus
        if scaled.denominator != 1:
            raise InvalidArgumentError(f"{self} is not a multiple of 1/{modulus}.")
        return int(scaled) % modulus

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: UnitScalar) -> UnitScalar:
        return UnitScalar(self.value + other.value)

    def __sub__(self, other: UnitScalar) -> UnitScalar:
        return UnitScalar(self.value - other.value)

    def __neg__(self) -> UnitScalar:
        return UnitScalar(-self.value)

    def __str__(self) -> str:
        return str(self.value)


ZERO = UnitScalar()


def total(*scalars: UnitScalar) -> UnitScalar:
    """Sum scalars in Q/Z."""
    acc = Fraction(0)
    for scalar in scalars:
        acc += scalar.value
    return UnitScalar(acc)
