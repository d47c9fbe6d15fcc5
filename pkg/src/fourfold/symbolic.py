"""Exact symbolic numbers of the form q * pi^p * sqrt(s), plus +/-infinity.

Every quantitative statement this toolkit certifies is an exact rational
multiple of 1, pi, pi^2, pi*sqrt(s) or pi^2*sqrt(s) with s a nonnegative
integer, so this tiny closed family is all we need; keeping it exact makes
acceptance checks tolerance-free.

Canonical form: the radicand is squarefree (square factors are absorbed into
q), and q == 0 forces pi_power == 0 and radicand == 1.  Equality is decidable
by comparing canonical fields; two distinct canonical forms never denote the
same real number (pi is transcendental, and squarefree radicands of equal
rationals coincide).

Strict inequalities against pi^2 never tie: pi^2 is irrational, so for
rational A != 0 and B the predicate A*pi^2 > B is decided exactly once B/A
falls outside a rational enclosure of pi^2.  Comparisons that the shipped
enclosure cannot separate report a tie instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

RationalLike = Union[int, Fraction, str]

# pi^2 = 9.86960440108935861883449099987615113531369940724079 0626...
# The bounds below bracket it to 50 decimal places; tests re-verify them
# against an independent high-precision evaluation.
PI2_LO = Fraction(986960440108935861883449099987615113531369940724079, 10**50)
PI2_HI = PI2_LO + Fraction(1, 10**50)

# pi = 3.14159265358979323846264338327950288419716939937510 58...
PI_LO = Fraction(314159265358979323846264338327950288419716939937510, 10**50)
PI_HI = PI_LO + Fraction(1, 10**50)


@dataclass(frozen=True)
class Pi2Enclosure:
    """A certified rational interval containing pi^2."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (Fraction(9) < self.lo < self.hi < Fraction(10)):
            raise ValueError("implausible pi^2 enclosure")


DEFAULT_PI2 = Pi2Enclosure(PI2_LO, PI2_HI)
# The coarse interval used for independent re-verification of search output.
COARSE_PI2 = Pi2Enclosure(Fraction("9.8696"), Fraction("9.8697"))


def pi2_greater(a: Fraction, b: Fraction, strict: bool = True,
                enclosure: Pi2Enclosure = DEFAULT_PI2) -> Optional[bool]:
    """Decide a*pi^2 > b (or >= when strict=False) over the rationals.

    Returns True/False when the enclosure settles it, None on a tie.  For
    a != 0 the strict and non-strict answers coincide (a*pi^2 is irrational);
    for a == 0 the comparison is purely rational.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0:
        return (0 > b) if strict else (0 >= b)
    r = b / a
    if a > 0:
        # need pi^2 > r
        if r <= enclosure.lo:
            return True
        if r >= enclosure.hi:
            return False
        return None
    # a < 0: need pi^2 < r
    if r >= enclosure.hi:
        return True
    if r <= enclosure.lo:
        return False
    return None


def squarefree_decompose(s: int) -> tuple[int, int]:
    """Write s = c^2 * r with r squarefree; returns (c, r).  Requires s >= 0."""
    if s < 0:
        raise ValueError("radicand must be nonnegative")
    if s in (0, 1):
        return (1, s)
    c = 1
    r = s
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            c *= p
        p += 1 if p == 2 else 2
    return (c, r)


class SymbolicValue:
    """An exact number q*pi^p*sqrt(s) (q rational, p in {0,1,2}, s squarefree >= 0),
    or one of the distinguished infinities."""

    __slots__ = ("q", "pi_power", "radicand", "inf")

    def __init__(self, q: RationalLike = 0, pi_power: int = 0, radicand: int = 1,
                 inf: int = 0):
        if inf not in (-1, 0, 1):
            raise ValueError("inf must be -1, 0 or +1")
        if inf != 0:
            object.__setattr__(self, "q", Fraction(0))
            object.__setattr__(self, "pi_power", 0)
            object.__setattr__(self, "radicand", 1)
            object.__setattr__(self, "inf", inf)
            return
        q = Fraction(q)
        if pi_power not in (0, 1, 2):
            raise ValueError("pi_power must be 0, 1 or 2")
        if radicand < 0:
            raise ValueError("radicand must be a nonnegative integer")
        c, r = squarefree_decompose(radicand)
        q = q * c
        if r == 0:
            q = Fraction(0)
            r = 1
        if q == 0:
            pi_power = 0
            r = 1
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "pi_power", pi_power)
        object.__setattr__(self, "radicand", r)
        object.__setattr__(self, "inf", 0)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SymbolicValue is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def plus_infinity(cls) -> "SymbolicValue":
        return cls(inf=1)

    @classmethod
    def minus_infinity(cls) -> "SymbolicValue":
        return cls(inf=-1)

    @classmethod
    def rational(cls, q: RationalLike) -> "SymbolicValue":
        return cls(q)

    @classmethod
    def pi_squared_multiple(cls, q: RationalLike) -> "SymbolicValue":
        return cls(q, pi_power=2)

    # -- predicates --------------------------------------------------------

    @property
    def is_infinite(self) -> bool:
        return self.inf != 0

    @property
    def is_zero(self) -> bool:
        return self.inf == 0 and self.q == 0

    def sign(self) -> int:
        if self.inf != 0:
            return self.inf
        if self.q > 0:
            return 1
        if self.q < 0:
            return -1
        return 0

    # -- arithmetic --------------------------------------------------------

    def _family(self) -> tuple[int, int]:
        return (self.pi_power, self.radicand)

    def __add__(self, other: "SymbolicValue") -> "SymbolicValue":
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        if self.inf != 0 or other.inf != 0:
            if self.inf != 0 and other.inf != 0 and self.inf != other.inf:
                raise ValueError("cannot add opposite infinities")
            return SymbolicValue(inf=self.inf or other.inf)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self._family() != other._family():
            raise ValueError(
                f"addition across symbolic families {self._family()} and {other._family()}"
            )
        return SymbolicValue(self.q + other.q, self.pi_power, self.radicand)

    def __neg__(self) -> "SymbolicValue":
        if self.inf != 0:
            return SymbolicValue(inf=-self.inf)
        return SymbolicValue(-self.q, self.pi_power, self.radicand)

    def __sub__(self, other: "SymbolicValue") -> "SymbolicValue":
        return self + (-other)

    def scale(self, c: RationalLike) -> "SymbolicValue":
        c = Fraction(c)
        if self.inf != 0:
            if c == 0:
                raise ValueError("cannot scale an infinity by zero")
            return SymbolicValue(inf=self.inf if c > 0 else -self.inf)
        return SymbolicValue(self.q * c, self.pi_power, self.radicand)

    def __mul__(self, other: "SymbolicValue") -> "SymbolicValue":
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        if self.inf != 0 or other.inf != 0:
            s = self.sign() * other.sign()
            if s == 0:
                raise ValueError("0 * infinity is undefined")
            return SymbolicValue(inf=s)
        p = self.pi_power + other.pi_power
        if p > 2:
            raise ValueError("product leaves the representable family (pi power > 2)")
        return SymbolicValue(self.q * other.q, p, self.radicand * other.radicand)

    def __abs__(self) -> "SymbolicValue":
        return -self if self.sign() < 0 else self

    def squared(self) -> "SymbolicValue":
        return self * self

    # -- comparison --------------------------------------------------------

    def _bounds(self) -> tuple[Fraction, Fraction]:
        """A rational enclosure of the value (finite values only)."""
        if self.inf != 0:
            raise ValueError("no rational bounds for an infinity")
        lo = hi = Fraction(1)
        if self.pi_power == 1:
            lo, hi = PI_LO, PI_HI
        elif self.pi_power == 2:
            lo, hi = PI2_LO, PI2_HI
        if self.radicand != 1:
            # sqrt enclosure to 25 digits via integer square root
            scale = 10**25
            root_lo = Fraction(math.isqrt(self.radicand * scale * scale), scale)
            root_hi = root_lo + Fraction(1, scale)
            lo, hi = lo * root_lo, hi * root_hi
        if self.q >= 0:
            return (self.q * lo, self.q * hi)
        return (self.q * hi, self.q * lo)

    def compare(self, other: "SymbolicValue") -> int:
        if not isinstance(other, SymbolicValue):
            raise TypeError("can only compare SymbolicValue with SymbolicValue")
        if self == other:
            return 0
        if self.inf != 0 or other.inf != 0:
            a = self.inf * 2 if self.inf != 0 else 0
            b = other.inf * 2 if other.inf != 0 else 0
            if self.inf == 0:
                return -1 if other.inf > 0 else 1
            if other.inf == 0:
                return 1 if self.inf > 0 else -1
            return -1 if a < b else 1
        if self._family() == other._family():
            return -1 if self.q < other.q else 1
        # Distinct canonical families never coincide, so a 50-digit
        # enclosure separates every value this toolkit produces.
        lo1, hi1 = self._bounds()
        lo2, hi2 = other._bounds()
        if hi1 < lo2:
            return -1
        if hi2 < lo1:
            return 1
        raise ArithmeticError("enclosure too coarse to order symbolic values")

    def __lt__(self, other: "SymbolicValue") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "SymbolicValue") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "SymbolicValue") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "SymbolicValue") -> bool:
        return self.compare(other) >= 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        return (self.q, self.pi_power, self.radicand, self.inf) == (
            other.q, other.pi_power, other.radicand, other.inf)

    def __hash__(self) -> int:
        return hash((self.q, self.pi_power, self.radicand, self.inf))

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if self.inf == 1:
            return "+inf"
        if self.inf == -1:
            return "-inf"
        parts = [str(self.q)]
        if self.pi_power == 1:
            parts.append("pi")
        elif self.pi_power == 2:
            parts.append("pi^2")
        if self.radicand != 1:
            parts.append(f"sqrt({self.radicand})")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"SymbolicValue({self})"

    def approx(self) -> float:
        """Non-authoritative float approximation (display only)."""
        if self.inf != 0:
            return float("inf") * self.inf
        value = float(self.q)
        if self.pi_power:
            value *= math.pi ** self.pi_power
        if self.radicand != 1:
            value *= math.sqrt(self.radicand)
        return value

    def to_json(self) -> dict:
        if self.inf != 0:
            return {"inf": "+" if self.inf == 1 else "-"}
        return {"q": str(self.q), "pi_power": self.pi_power, "radicand": self.radicand}

    @classmethod
    def from_json(cls, doc: dict) -> "SymbolicValue":
        if "inf" in doc:
            return cls(inf=1 if doc["inf"] == "+" else -1)
        return cls(Fraction(doc["q"]), int(doc["pi_power"]), int(doc["radicand"]))


ZERO = SymbolicValue(0)
