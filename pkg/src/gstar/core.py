"""Exact rationals and color-subset primitives.

Rationals are :class:`fractions.Fraction` values (unbounded integers, always
reduced, positive denominator).  Color sets are bitmasks over ``1..r`` where
color ``i`` lives in bit ``i - 1``.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class DomainError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its configured resource budget."""


# ---------------------------------------------------------------------------
# Rationals


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


_ARITH = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat_arith(x: RationalLike, y: RationalLike, op: str) -> Fraction | int:
    """Apply ``op`` exactly.  ``cmp`` returns -1, 0 or 1."""
    x, y = as_rational(x), as_rational(y)
    if op == "cmp":
        return (x > y) - (x < y)
    if op == "div" and y == 0:
        raise ZeroDivisionError(f"division of {format_rational(x)} by zero")
    try:
        return _ARITH[op](x, y)
    except KeyError:
        raise DomainError(f"unknown rational operation {op!r}") from None


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; the denominator must be positive."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise DomainError(f"malformed rational {text!r}") from None
    if q <= 0:
        raise DomainError(f"rational {text!r} needs a positive denominator")
    return Fraction(p, q)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def lcm_denominators(values: Iterable[RationalLike]) -> int:
    """Smallest positive N with N*v integral for every v."""
    dens = [as_rational(v).denominator for v in values]
    if not dens:
        raise DomainError("lcm_denominators needs at least one value")
    return reduce(math.lcm, dens, 1)


# ---------------------------------------------------------------------------
# Color sets


@dataclass(frozen=True, slots=True)
class ColorSet:
    """A subset of ``[r]`` stored as a bitmask."""

    bits: int
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(f"r must be positive, got {self.r}")
        if self.bits < 0 or self.bits >> self.r:
            raise DomainError(f"bitmask {self.bits:#b} has colors outside [1, {self.r}]")

    @classmethod
    def of(cls, colors: Iterable[int], r: int) -> "ColorSet":
        bits = 0
        for c in colors:
            if not 1 <= c <= r:
                raise DomainError(f"color {c} outside [1, {r}]")
            bits |= 1 << (c - 1)
        return cls(bits, r)

    @classmethod
    def full(cls, r: int) -> "ColorSet":
        return cls((1 << r) - 1, r)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.r) if self.bits >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, color: object) -> bool:
        return isinstance(color, int) and 1 <= color <= self.r and bool(self.bits >> (color - 1) & 1)

    def _check(self, other: "ColorSet") -> None:
        if not isinstance(other, ColorSet):
            raise TypeError(f"expected ColorSet, got {type(other).__name__}")
        if other.r != self.r:
            raise DomainError(f"color sets over different r ({self.r} vs {other.r})")

    def __and__(self, other: "ColorSet") -> "ColorSet":
        self._check(other)
        return ColorSet(self.bits & other.bits, self.r)

    def __or__(self, other: "ColorSet") -> "ColorSet":
        self._check(other)
        return ColorSet(self.bits | other.bits, self.r)

    def __sub__(self, other: "ColorSet") -> "ColorSet":
        self._check(other)
        return ColorSet(self.bits & ~other.bits, self.r)

    def isdisjoint(self, other: "ColorSet") -> bool:
        self._check(other)
        return not self.bits & other.bits

    def issubset(self, other: "ColorSet") -> bool:
        self._check(other)
        return not self.bits & ~other.bits

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical order: cardinality, then ascending element list."""
        return (len(self), self.colors)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.colors)) + "}"

    def __repr__(self) -> str:
        return f"ColorSet({self}, r={self.r})"


def set_ops(a: ColorSet, b: ColorSet, op: str):
    """Dispatch form of the color-set operations."""
    if op == "intersect":
        return a & b
    if op == "union":
        return a | b
    if op == "minus":
        return a - b
    if op == "is_disjoint":
        return a.isdisjoint(b)
    if op == "card":
        a._check(b)
        return len(a)
    raise DomainError(f"unknown set operation {op!r}")


def parse_colorset(text: str, r: int) -> ColorSet:
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise DomainError(f"malformed color set {text!r}")
    body = s[1:-1].strip()
    if not body:
        return ColorSet(0, r)
    try:
        colors = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise DomainError(f"malformed color set {text!r}") from None
    if len(set(colors)) != len(colors):
        raise DomainError(f"repeated color in {text!r}")
    return ColorSet.of(colors, r)


def sorted_sets(sets: Iterable[ColorSet]) -> list[ColorSet]:
    return sorted(sets, key=ColorSet.sort_key)


def format_family(family: Iterable[ColorSet]) -> str:
    return ";".join(str(s) for s in sorted_sets(family))


def parse_family(text: str, r: int) -> frozenset[ColorSet]:
    s = text.strip()
    if not s:
        return frozenset()
    members = [parse_colorset(tok, r) for tok in s.split(";")]
    if len(set(members)) != len(members):
        raise DomainError(f"repeated member in family {text!r}")
    return frozenset(members)


def all_colorsets(r: int, *, nonempty: bool = False) -> list[ColorSet]:
    start = 1 if nonempty else 0
    return sorted_sets(ColorSet(bits, r) for bits in range(start, 1 << r))


def upward_closure(s: ColorSet) -> frozenset[ColorSet]:
    """All T with T ⊇ s."""
    rest = ~s.bits & ((1 << s.r) - 1)
    out = []
    sub = rest
    while True:
        out.append(ColorSet(s.bits | sub, s.r))
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return frozenset(out)


def isqrt_exact(n: int) -> int | None:
    """Integer square root when ``n`` is a perfect square, else None."""
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None
