"""Concrete n x n coloring squares and the brute-force g(n, r) oracle.

``cells[k, j]`` is the color of the edge between column vertex ``u_{j+1}`` and
row vertex ``v_{k+1}``.  Row 0 is ``v_1``, drawn at the bottom.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .core import BudgetExceeded, ColorSet, DomainError, lcm_denominators
from .profile import SolutionProfile, marginals, validate

DEFAULT_ORACLE_BUDGET = 1 << 24


@dataclass(frozen=True, eq=False)
class ColoringSquare:
    n: int
    r: int
    cells: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise DomainError(f"n and r must be positive, got n={self.n}, r={self.r}")
        cells = np.array(self.cells, dtype=np.int64)
        if cells.shape != (self.n, self.n):
            raise DomainError(f"cells must be {self.n}x{self.n}, got shape {cells.shape}")
        if cells.size and (cells.min() < 1 or cells.max() > self.r):
            raise DomainError(f"cell colors must lie in [1, {self.r}]")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def monochrome(cls, n: int, r: int, color: int = 1) -> "ColoringSquare":
        return cls(n, r, np.full((n, n), color, dtype=np.int64))

    def column_colors(self, j: int) -> ColorSet:
        return ColorSet.of(set(self.cells[:, j].tolist()), self.r)

    def row_colors(self, k: int) -> ColorSet:
        return ColorSet.of(set(self.cells[k, :].tolist()), self.r)

    def __eq__(self, other):
        if not isinstance(other, ColoringSquare):
            return NotImplemented
        return self.n == other.n and self.r == other.r and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.n, self.r, self.cells.tobytes()))


@dataclass(frozen=True)
class TouchReport:
    columns_containing: tuple[int, ...]
    rows_containing: tuple[int, ...]

    @property
    def touched(self) -> tuple[int, ...]:
        return tuple(c + w for c, w in zip(self.columns_containing, self.rows_containing))

    @property
    def max_touched(self) -> int:
        return max(self.touched)


def touched_counts(sq: ColoringSquare) -> TouchReport:
    cols, rows = kernels.touched(sq.cells.tolist(), sq.r)
    return TouchReport(tuple(cols), tuple(rows))


def profile_to_square(p: SolutionProfile, t: int) -> ColoringSquare:
    """Blow the profile up to an n x n square with n = t * N.

    Each column set R gets a contiguous block of a(R) * n columns, in the
    profile's key order, and likewise for rows.  The cell shared by blocks R1
    and R2 takes the least color of R1 & R2.
    """
    report = validate(p)
    if not report.ok:
        raise DomainError("invalid profile: " + "; ".join(map(str, report)))
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    N = lcm_denominators(p.values())
    n = t * N
    col_blocks = [(key, int(v * n)) for key, v in p.a.items()]
    row_blocks = [(key, int(v * n)) for key, v in p.b.items()]
    cells = np.zeros((n, n), dtype=np.int64)
    y = 0
    for r2, height in row_blocks:
        x = 0
        for r1, width in col_blocks:
            cells[y : y + height, x : x + width] = min((r1 & r2).colors)
            x += width
        y += height
    return ColoringSquare(n, p.r, cells)


def extend_square(sq: ColoringSquare, n: int) -> ColoringSquare:
    """Grow to n x n by repeating the last column, then the last row."""
    if n < sq.n:
        raise DomainError(f"target size n={n} is smaller than the square ({sq.n})")
    extra = n - sq.n
    cells = sq.cells
    if extra:
        cells = np.hstack([cells, np.repeat(cells[:, -1:], extra, axis=1)])
        cells = np.vstack([cells, np.repeat(cells[-1:, :], extra, axis=0)])
    return ColoringSquare(n, sq.r, cells)


def square_for_size(p: SolutionProfile, n: int) -> tuple[ColoringSquare, int]:
    """A size-n square from p: blow up by floor(n/N), then extend.

    When n < N there is nothing to blow up and a one-color square is used;
    its maximum 2n is still within 2(N - 1).  Returns the square and N.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    N = lcm_denominators(p.values())
    t = n // N
    base = profile_to_square(p, t) if t else ColoringSquare.monochrome(1, p.r)
    return extend_square(base, n), N


def square_to_profile(sq: ColoringSquare) -> SolutionProfile:
    step = Fraction(1, sq.n)
    a: dict[ColorSet, Fraction] = {}
    b: dict[ColorSet, Fraction] = {}
    for j in range(sq.n):
        key = sq.column_colors(j)
        a[key] = a.get(key, Fraction(0)) + step
    for k in range(sq.n):
        key = sq.row_colors(k)
        b[key] = b.get(key, Fraction(0)) + step
    return SolutionProfile(sq.r, a, b)


def oracle_budget() -> int:
    env = os.environ.get("GSTAR_BUDGET")
    return int(env) if env else DEFAULT_ORACLE_BUDGET


def brute_force_g(n: int, r: int, budget: int | None = None, prune: bool = True, backend: str | None = None) -> int:
    """g(n, r): the least possible maximum touched count over all colorings."""
    if n < 1 or r < 1:
        raise DomainError(f"n and r must be positive, got n={n}, r={r}")
    limit = oracle_budget() if budget is None else budget
    size = r ** (n * n)
    if size > limit:
        raise BudgetExceeded(f"r^(n^2) = {r}^{n * n} colorings exceeds the oracle budget {limit}")
    return kernels.brute_force_min(n, r, prune=prune, backend=backend)


def discretization_bound(p: SolutionProfile, n: int) -> Fraction:
    """objective(p) * n + 2(N - 1): the guarantee for square_for_size(p, n)."""
    N = lcm_denominators(p.values())
    return marginals(p).objective * n + 2 * (N - 1)


# ---------------------------------------------------------------------------
# CSV


def format_square(sq: ColoringSquare) -> str:
    lines = [f"n={sq.n} r={sq.r}"]
    lines += [",".join(str(int(c)) for c in row) for row in sq.cells]
    return "\n".join(lines) + "\n"


def parse_square(text: str) -> ColoringSquare:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DomainError("empty square file")
    head = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    try:
        n, r = int(head["n"]), int(head["r"])
    except (KeyError, ValueError):
        raise DomainError(f"malformed square header {lines[0]!r}; expected 'n=<n> r=<r>'") from None
    if len(lines) - 1 != n:
        raise DomainError(f"expected {n} rows, found {len(lines) - 1}")
    try:
        rows = [[int(tok) for tok in ln.split(",")] for ln in lines[1:]]
    except ValueError:
        raise DomainError("non-integer cell in square file") from None
    if any(len(row) != n for row in rows):
        raise DomainError(f"every row must have {n} entries")
    return ColoringSquare(n, r, np.array(rows, dtype=np.int64))
