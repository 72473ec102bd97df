"""Exact coefficient rings: Q, Z, Z[1/3] and prime fields.

Scalars are plain Python numbers in a canonical form that depends on the
ring:

* ``Q`` and ``Z[1/3]``: :class:`fractions.Fraction` (for ``Z[1/3]`` the
  denominator is a power of 3),
* ``Z``: :class:`int`,
* ``GF(p)``: :class:`int` in ``range(p)``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime

Scalar = Union[int, Fraction]


class RingKind(str, enum.Enum):
    RATIONALS = "Q"
    INTEGERS = "Z"
    INTEGERS_LOC3 = "Z3loc"
    PRIME_FIELD = "Fp"


class NotInRing(ValueError):
    """A value has no canonical representative in the requested ring."""


class RingMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


def _is_power_of_3(d: int) -> bool:
    while d % 3 == 0:
        d //= 3
    return d == 1


@dataclass(frozen=True)
class RingSpec:
    kind: RingKind
    modulus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", RingKind(self.kind))
        if self.kind is RingKind.PRIME_FIELD:
            if self.modulus is None or self.modulus < 2 or not isprime(self.modulus):
                raise ValueError(f"prime field modulus must be a prime >= 2, got {self.modulus}")
        elif self.modulus is not None:
            raise ValueError(f"modulus is only meaningful for prime fields, got {self.modulus}")

    def __str__(self) -> str:
        if self.kind is RingKind.PRIME_FIELD:
            return f"Fp:{self.modulus}"
        return self.kind.value

    @property
    def is_field(self) -> bool:
        return self.kind in (RingKind.RATIONALS, RingKind.PRIME_FIELD)

    @property
    def three_invertible(self) -> bool:
        if self.kind is RingKind.PRIME_FIELD:
            return self.modulus != 3
        return self.kind in (RingKind.RATIONALS, RingKind.INTEGERS_LOC3)

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self._fractional else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self._fractional else 1

    @property
    def _fractional(self) -> bool:
        return self.kind in (RingKind.RATIONALS, RingKind.INTEGERS_LOC3)

    def coerce(self, value) -> Scalar:
        """Return the canonical representative of ``value``.

        Accepts ints, Fractions and scalar text (``"3"``, ``"-1/9"``).
        """
        if isinstance(value, str):
            value = parse_scalar_text(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise NotInRing(f"{value!r} is not an exact scalar")
        kind = self.kind
        if kind is RingKind.RATIONALS:
            return Fraction(value)
        if kind is RingKind.INTEGERS:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise NotInRing(f"{value} is not an integer")
                return value.numerator
            return value
        if kind is RingKind.INTEGERS_LOC3:
            value = Fraction(value)
            if not _is_power_of_3(value.denominator):
                raise NotInRing(f"{value} is not in Z[1/3]")
            return value
        p = self.modulus
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise NotInRing(f"{value} has a denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return value % p

    def is_canonical(self, a) -> bool:
        kind = self.kind
        if kind is RingKind.INTEGERS:
            return type(a) is int
        if kind is RingKind.PRIME_FIELD:
            return type(a) is int and 0 <= a < self.modulus
        if type(a) is not Fraction:
            return False
        return kind is RingKind.RATIONALS or _is_power_of_3(a.denominator)

    def check(self, a) -> Scalar:
        if not self.is_canonical(a):
            raise RingMismatch(f"{a!r} is not a canonical scalar of {self}")
        return a

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self._norm(self.check(a) + self.check(b))

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self._norm(self.check(a) - self.check(b))

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self._norm(self.check(a) * self.check(b))

    def neg(self, a: Scalar) -> Scalar:
        return self._norm(-self.check(a))

    def _norm(self, a: Scalar) -> Scalar:
        if self.kind is RingKind.PRIME_FIELD:
            return a % self.modulus
        return a

    def is_unit(self, a: Scalar) -> bool:
        a = self.check(a)
        if not a:
            return False
        kind = self.kind
        if kind is RingKind.INTEGERS:
            return a in (1, -1)
        if kind is RingKind.INTEGERS_LOC3:
            return _is_power_of_3(abs(a.numerator))
        return True

    def invert(self, a: Scalar) -> Scalar:
        if not self.is_unit(a):
            raise NotInvertible(f"{a} is not a unit in {self}")
        if self.kind is RingKind.PRIME_FIELD:
            return pow(a, -1, self.modulus)
        if self.kind is RingKind.INTEGERS:
            return a
        return 1 / a

    def render(self, a: Scalar) -> str:
        return str(self.check(a))


QQ = RingSpec(RingKind.RATIONALS)
ZZ = RingSpec(RingKind.INTEGERS)
ZZ3 = RingSpec(RingKind.INTEGERS_LOC3)


def GF(p: int) -> RingSpec:
    return RingSpec(RingKind.PRIME_FIELD, p)


_SCALAR_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar_text(text: str) -> Scalar:
    m = _SCALAR_RE.match(text)
    if not m:
        raise NotInRing(f"malformed scalar {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise NotInRing("zero denominator")
    return Fraction(num, den)


def parse_ring(text: str) -> RingSpec:
    """Parse a ring flag: ``Q``, ``Z``, ``Z3loc`` or ``Fp:<p>``."""
    text = text.strip()
    if text.startswith("Fp:"):
        try:
            return GF(int(text[3:]))
        except ValueError as exc:
            raise ValueError(f"bad ring {text!r}: {exc}") from None
    try:
        kind = RingKind(text)
    except ValueError:
        raise ValueError(f"unknown ring {text!r}; expected Q, Z, Z3loc or Fp:<p>") from None
    if kind is RingKind.PRIME_FIELD:
        raise ValueError("prime field needs a modulus, e.g. Fp:5")
    return RingSpec(kind)


def scalar_arith(op: str, a: Scalar, b: Scalar, ring: RingSpec) -> Scalar:
    try:
        fn = {"add": ring.add, "sub": ring.sub, "mul": ring.mul}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)


def scalar_invert(a: Scalar, ring: RingSpec) -> Scalar:
    return ring.invert(a)


def three_invertible(ring: RingSpec) -> bool:
    return ring.three_invertible
