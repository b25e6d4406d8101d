"""Coefficient rings: the integers, the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class RingError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of ``Integers``, ``Rationals`` or ``PrimeField(p)``.

    Elements are plain Python numbers: ``int`` for the integers, ``int`` in
    ``range(p)`` for prime fields, ``Fraction`` (or ``int``) for the rationals.
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "F"):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "F" and not _is_prime(self.p):
            raise RingError(f"PrimeField modulus {self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "F" else 0

    @property
    def name(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"F{self.p}")

    def __str__(self):
        return self.name

    def coerce(self, x):
        if self.kind == "F":
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise RingError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inverse(self, x):
        if self.kind == "F":
            return pow(x, -1, self.p)
        if self.kind == "Q":
            return 1 / Fraction(x)
        if x in (1, -1):
            return x
        raise RingError(f"{x} is not a unit in Z")


Integers = CoefficientRing("Z")
Rationals = CoefficientRing("Q")


def PrimeField(p: int) -> CoefficientRing:
    return CoefficientRing("F", p)


def parse_ring(text: str) -> CoefficientRing:
    """Parse ``"Z"``, ``"Q"``, ``"F2"``, ``"F3"``, ... (also ``"GF(p)"``)."""
    t = text.strip().upper().replace("GF(", "F").rstrip(")")
    if t in ("Z", "ZZ"):
        return Integers
    if t in ("Q", "QQ"):
        return Rationals
    if t.startswith("F") and t[1:].isdigit():
        return PrimeField(int(t[1:]))
    raise RingError(f"cannot parse ring {text!r}")
