"""Explicit profiles (grid, square-minus-one, universal layouts, small catalog)
and the closed-form values they achieve.

Layouts are described geometrically as a list of columns over the unit
square.  Each column has a width and a bottom-up stack of ``(height, color)``
cells.  A column contributes its width to ``a`` of its color set; horizontal
bands between consecutive cell boundaries contribute their height to ``b`` of
the set of colors they meet.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ColorSet, DomainError, format_rational, isqrt_exact
from .profile import SolutionProfile, objective

Column = tuple[Fraction, Sequence[tuple[Fraction, int]]]

KNOWN_VALUES = {
    1: Fraction(2),
    2: Fraction(3, 2),
    3: Fraction(5, 4),
    4: Fraction(1),
    5: Fraction(11, 12),
    6: Fraction(5, 6),
    7: Fraction(7, 9),
    8: Fraction(13, 18),
    9: Fraction(2, 3),
}


def from_layout(r: int, columns: Sequence[Column]) -> SolutionProfile:
    a: dict[ColorSet, Fraction] = {}
    breaks = {Fraction(0), Fraction(1)}
    stacks = []
    for width, cells in columns:
        if width <= 0:
            continue
        colors = ColorSet.of([c for _, c in cells], r)
        a[colors] = a.get(colors, Fraction(0)) + width
        y, stack = Fraction(0), []
        for height, color in cells:
            stack.append((y, y + height, color))
            y += height
            breaks.add(y)
        if y != 1:
            raise DomainError(f"column heights sum to {format_rational(y)}, not 1")
        stacks.append(stack)
    ys = sorted(breaks)
    b: dict[ColorSet, Fraction] = {}
    for lo, hi in zip(ys, ys[1:]):
        mid = (lo + hi) / 2
        met = [c for stack in stacks for y0, y1, c in stack if y0 < mid < y1]
        key = ColorSet.of(met, r)
        b[key] = b.get(key, Fraction(0)) + (hi - lo)
    return SolutionProfile(r, a, b)


def _uniform_column(width: Fraction, colors: Sequence[int]) -> Column:
    h = Fraction(1, len(colors))
    return width, [(h, c) for c in colors]


# ---------------------------------------------------------------------------
# Families


def square_grid(t: int) -> SolutionProfile:
    """t x t grid of squares; r = t^2 and every color has a_i + b_i = 2/t."""
    if t < 1:
        raise DomainError(f"square_grid needs t >= 1, got {t}")
    r = t * t
    w = Fraction(1, t)
    a = {ColorSet.of([j * t + i for j in range(t)], r): w for i in range(1, t + 1)}
    b = {ColorSet.of(range(i * t + 1, i * t + t + 1), r): w for i in range(t)}
    return SolutionProfile(r, a, b)


def square_minus_one(t: int) -> SolutionProfile:
    """Layout for r = t^2 - 1 built from a (t-1) x t block and a column of t-1 cells."""
    if t < 3:
        raise DomainError(f"square_minus_one needs t >= 3, got {t}")
    r = t * t - 1
    left_w = Fraction(1, t - 1) - Fraction(1, t * t)
    right_w = Fraction(1, t) - Fraction(1, t * t)
    cols: list[Column] = []
    for i in range(t - 1):
        cols.append(_uniform_column(left_w, [(t - j - 1) * (t - 1) + i + 1 for j in range(t)]))
    cols.append(_uniform_column(right_w, [t * t - j - 1 for j in range(t - 1)]))
    return from_layout(r, cols)


def regime_t(r: int) -> int:
    """The t with t^2 <= r < (t+1)^2."""
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    return math.isqrt(r)


def universal_low(r: int) -> SolutionProfile:
    t = regime_t(r)
    if not t * t <= r <= t * (t + 1):
        raise DomainError(f"universal_low needs t^2 <= r <= t(t+1); r={r} has t={t}")
    p = t * (t + 1) - r
    q = t - p
    x = Fraction(p, t * t) + Fraction(q, t * (t + 1))
    cols: list[Column] = []
    for i in range(p):
        cols.append(_uniform_column(x, [(t - j - 1) * p + i + 1 for j in range(t)]))
    if q:
        w = (1 - p * x) / q
        for i in range(q):
            cols.append(_uniform_column(w, [(t - j) * q + i + 1 + p * t for j in range(t + 1)]))
    return from_layout(r, cols)


def universal_high(r: int) -> SolutionProfile:
    t = regime_t(r)
    if r < t * (t + 1):
        t -= 1
    if t < 1 or not t * (t + 1) <= r <= (t + 1) ** 2:
        raise DomainError(f"universal_high needs t(t+1) <= r <= (t+1)^2 for some t >= 1; got r={r}")
    p = r - t * (t + 1)
    q = t + 1 - p
    x = Fraction(p, (t + 1) ** 2) + Fraction(q, t * (t + 1))
    cols: list[Column] = []
    for i in range(p):
        cols.append(_uniform_column(x, [(t - j) * p + i + 1 for j in range(t + 1)]))
    if q:
        w = (1 - p * x) / q
        for i in range(q):
            cols.append(_uniform_column(w, [(t - j - 1) * q + i + 1 + p * (t + 1) for j in range(t)]))
    return from_layout(r, cols)


def universal(r: int) -> SolutionProfile:
    t = regime_t(r)
    if r <= t * (t + 1):
        low = universal_low(r)
        if r == t * (t + 1):
            high = universal_high(r)
            if objective(low) != objective(high):
                raise AssertionError(f"low/high disagree at r={r}")
        return low
    return universal_high(r)


def _catalog_raw() -> dict[int, tuple[list, list]]:
    F = Fraction
    return {
        2: ([((1,), F(1, 2)), ((2,), F(1, 2))], [((1, 2), F(1))]),
        3: ([((1,), F(1, 4)), ((2, 3), F(3, 4))], [((1, 2), F(1, 2)), ((1, 3), F(1, 2))]),
        5: (
            [((1, 2), F(5, 12)), ((3, 4, 5), F(7, 12))],
            [((2, 5), F(1, 3)), ((2, 4), F(1, 6)), ((1, 4), F(1, 6)), ((1, 3), F(1, 3))],
        ),
        6: (
            [((1, 3, 5), F(1, 2)), ((2, 4, 6), F(1, 2))],
            [((1, 2), F(1, 3)), ((3, 4), F(1, 3)), ((5, 6), F(1, 3))],
        ),
        7: (
            [((1, 3), F(5, 18)), ((2, 4), F(5, 18)), ((5, 6, 7), F(4, 9))],
            [((3, 4, 7), F(1, 3)), ((3, 4, 6), F(1, 6)), ((1, 2, 6), F(1, 6)), ((1, 2, 5), F(1, 3))],
        ),
        8: (
            [((1, 3, 5), F(7, 18)), ((2, 4, 6), F(7, 18)), ((7, 8), F(2, 9))],
            [((5, 6, 8), F(1, 3)), ((3, 4, 8), F(1, 6)), ((3, 4, 7), F(1, 6)), ((1, 2, 7), F(1, 3))],
        ),
    }


def small_catalog(r: int) -> SolutionProfile:
    """Optimal profiles for 2 <= r <= 8 as drawn for the individual small cases."""
    if not 2 <= r <= 8:
        raise DomainError(f"small_catalog covers 2 <= r <= 8, got {r}")
    if r == 4:
        return square_grid(2)
    a, b = _catalog_raw()[r]
    return SolutionProfile.from_lists(r, a, b)


FAMILIES = ("auto", "square", "square-minus-one", "universal", "catalog")


def auto(r: int) -> SolutionProfile:
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    if 2 <= r <= 8:
        return small_catalog(r)
    t = isqrt_exact(r)
    if t is not None:
        return square_grid(t)
    t = isqrt_exact(r + 1)
    if t is not None and t >= 3:
        return square_minus_one(t)
    return universal(r)


def construct(r: int, family: str = "auto") -> SolutionProfile:
    if family == "auto":
        return auto(r)
    if family == "square":
        t = isqrt_exact(r)
        if t is None:
            raise DomainError(f"family 'square' needs a perfect square r, got {r}")
        return square_grid(t)
    if family == "square-minus-one":
        t = isqrt_exact(r + 1)
        if t is None or t < 3:
            raise DomainError(f"family 'square-minus-one' needs r = t^2 - 1 with t >= 3, got {r}")
        return square_minus_one(t)
    if family == "universal":
        return universal(r)
    if family == "catalog":
        return small_catalog(r)
    raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


# ---------------------------------------------------------------------------
# Closed forms


def square_value(t: int) -> Fraction:
    return Fraction(2, t)


def square_minus_one_value(t: int) -> Fraction:
    return Fraction(1, t) - Fraction(1, t * t) + Fraction(1, t - 1)


def low_value(r: int) -> Fraction:
    t = regime_t(r)
    return Fraction(2, t) + Fraction(1, t + 1) + Fraction(r, t * (t + 1)) - Fraction(r, t * t)


def high_value(r: int, t: int | None = None) -> Fraction:
    if t is None:
        t = regime_t(r)
        if r < t * (t + 1):
            t -= 1
    return Fraction(2, t + 1) + Fraction(1, t) + Fraction(r, (t + 1) ** 2) - Fraction(r, t * (t + 1))


def universal_value(r: int) -> Fraction:
    t = regime_t(r)
    return low_value(r) if r <= t * (t + 1) else high_value(r, t)


@dataclass(frozen=True)
class BoundTable:
    r: int
    lower_sq: Fraction
    upper: Fraction
    exact: Fraction | None = None

    def csv_row(self) -> str:
        exact = "" if self.exact is None else format_rational(self.exact)
        return f"{self.r},{format_rational(self.lower_sq)},{format_rational(self.upper)},{exact}"


BOUND_CSV_HEADER = "r,lower_sq,upper,exact"


def bound_table(r: int) -> BoundTable:
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    candidates = [universal_value(r)]
    if 2 <= r <= 8:
        candidates.append(KNOWN_VALUES[r])
    t = isqrt_exact(r)
    if t is not None:
        candidates.append(square_value(t))
    s = isqrt_exact(r + 1)
    if s is not None and s >= 3:
        candidates.append(square_minus_one_value(s))
    upper = min(candidates)
    exact = None
    if r <= 9 or t is not None or (s is not None and s >= 3):
        exact = upper
    if upper * upper * r < 4:
        raise AssertionError(f"construction value {upper} beats the 2/sqrt(r) bound at r={r}")
    return BoundTable(r, Fraction(4, r), upper, exact)
