"""Exact two-phase simplex over Fractions, and the restricted coloring LP.

All variables are nonnegative.  Pivoting follows Bland's rule (lowest index
enters, ties in the ratio test leave by lowest basic index), so results are
deterministic and the method terminates on degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .core import ColorSet, DomainError, as_rational, sorted_sets
from .profile import SolutionProfile

RELATIONS = ("<=", "=", ">=")
ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[str, Fraction]
    rel: str
    rhs: Fraction

    def satisfied_by(self, x: Mapping[str, Fraction]) -> bool:
        lhs = sum((c * x.get(v, ZERO) for v, c in self.coeffs.items()), ZERO)
        if self.rel == "<=":
            return lhs <= self.rhs
        if self.rel == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """Minimize ``objective`` (a variable name) subject to ``constraints``.

    Every variable is implicitly >= 0; ``upper`` holds optional box bounds.
    """

    variables: list[str]
    objective: str
    constraints: list[Constraint] = field(default_factory=list)
    upper: dict[str, Fraction] = field(default_factory=dict)

    def add(self, coeffs: Mapping[str, object], rel: str, rhs: object = 0) -> None:
        self.constraints.append(
            Constraint({v: as_rational(c) for v, c in coeffs.items() if c}, rel, as_rational(rhs))
        )

    def check(self) -> None:
        names = set(self.variables)
        if len(names) != len(self.variables):
            raise DomainError("duplicate variable names")
        if self.objective not in names:
            raise DomainError(f"objective variable {self.objective!r} is not declared")
        seen_obj = False
        for con in self.constraints:
            if con.rel not in RELATIONS:
                raise DomainError(f"unknown relation {con.rel!r}")
            unknown = set(con.coeffs) - names
            if unknown:
                raise DomainError(f"constraint uses undeclared variables {sorted(unknown)}")
            seen_obj = seen_obj or self.objective in con.coeffs
        for v, u in self.upper.items():
            if v not in names:
                raise DomainError(f"bound on undeclared variable {v!r}")
            if u < 0:
                raise DomainError(f"negative upper bound on {v!r}")
            seen_obj = seen_obj or v == self.objective
        if not seen_obj:
            raise DomainError("objective variable appears in no constraint")

    def all_constraints(self) -> list[Constraint]:
        bounds = [Constraint({v: ONE}, "<=", u) for v, u in self.upper.items()]
        return [*self.constraints, *bounds]


@dataclass(frozen=True)
class LPOutcome:
    status: str  # optimal | infeasible | unbounded
    value: Fraction | None = None
    assignment: Mapping[str, Fraction] | None = None

    def verify(self, lp: LinearProgram) -> bool:
        """Re-check the witness against every constraint with exact arithmetic."""
        if self.status != "optimal" or self.assignment is None:
            return False
        x = self.assignment
        if any(x.get(v, ZERO) < 0 for v in lp.variables):
            return False
        if x.get(lp.objective, ZERO) != self.value:
            return False
        return all(c.satisfied_by(x) for c in lp.all_constraints())


class _Tableau:
    """Dense tableau in canonical form with respect to ``basis``."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, i: int, j: int, cost: list[Fraction], extra: list[Fraction] | None = None) -> None:
        row = self.rows[i]
        piv = row[j]
        if piv != 1:
            inv = 1 / piv
            for k in range(self.ncols):
                if row[k]:
                    row[k] *= inv
            self.rhs[i] *= inv
        nz = [k for k in range(self.ncols) if row[k]]
        b_i = self.rhs[i]
        for r_idx, other in enumerate(self.rows):
            if r_idx == i:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
                self.rhs[r_idx] -= f * b_i
        for vec in (cost, extra):
            if vec is None:
                continue
            f = vec[j]
            if f:
                for k in nz:
                    vec[k] -= f * row[k]
                vec[-1] -= f * b_i
        self.basis[i] = j

    def run(self, cost: list[Fraction], allowed: int, extra=None) -> str:
        """Minimize with reduced-cost row ``cost`` (last entry is -objective)."""
        while True:
            enter = next((j for j in range(allowed) if cost[j] < 0), None)
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded"
            self.pivot(leave, enter, cost, extra)


def solve_min(lp: LinearProgram) -> LPOutcome:
    """Exact optimum of ``lp`` with a rational witness."""
    lp.check()
    index = {v: k for k, v in enumerate(lp.variables)}
    n = len(lp.variables)
    norm: list[tuple[dict[int, Fraction], str, Fraction]] = []
    for con in lp.all_constraints():
        coeffs = {index[v]: c for v, c in con.coeffs.items() if c}
        rel, rhs = con.rel, con.rhs
        if rhs < 0 or (rhs == 0 and rel == ">="):
            coeffs = {k: -c for k, c in coeffs.items()}
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        if not coeffs:
            ok = (rel == "<=" and 0 <= rhs) or (rel == ">=" and 0 >= rhs) or (rel == "=" and rhs == 0)
            if not ok:
                return LPOutcome("infeasible")
            continue
        norm.append((coeffs, rel, rhs))

    n_slack = sum(1 for _, rel, _ in norm if rel != "=")
    n_art = sum(1 for _, rel, _ in norm if rel != "<=")
    ncols = n + n_slack + n_art
    rows, rhs_vec, basis = [], [], []
    s_next, a_next = n, n + n_slack
    art_rows = []
    for coeffs, rel, rhs in norm:
        row = [ZERO] * ncols
        for k, c in coeffs.items():
            row[k] = c
        if rel == "<=":
            row[s_next] = ONE
            basis.append(s_next)
            s_next += 1
        else:
            if rel == ">=":
                row[s_next] = -ONE
                s_next += 1
            row[a_next] = ONE
            basis.append(a_next)
            art_rows.append(len(rows))
            a_next += 1
        rows.append(row)
        rhs_vec.append(rhs)
    tab = _Tableau(rows, rhs_vec, basis, ncols)

    obj_col = index[lp.objective]

    def phase2_cost() -> list[Fraction]:
        cost = [ZERO] * (ncols + 1)
        cost[obj_col] = ONE
        for i, bj in enumerate(tab.basis):
            f = cost[bj]
            if f:
                row = tab.rows[i]
                for k in range(ncols):
                    if row[k]:
                        cost[k] -= f * row[k]
                cost[-1] -= f * tab.rhs[i]
        return cost

    if art_rows:
        cost1 = [ZERO] * (ncols + 1)
        for i in art_rows:
            row = tab.rows[i]
            for k in range(n + n_slack):
                if row[k]:
                    cost1[k] -= row[k]
            cost1[-1] -= tab.rhs[i]
        tab.run(cost1, n + n_slack)
        if cost1[-1] != 0:
            return LPOutcome("infeasible")
        # drive remaining (zero-level) artificials out of the basis
        drop = []
        for i, bj in enumerate(tab.basis):
            if bj >= n + n_slack:
                j = next((k for k in range(n + n_slack) if tab.rows[i][k]), None)
                if j is None:
                    drop.append(i)
                else:
                    tab.pivot(i, j, cost1)
        for i in reversed(drop):
            del tab.rows[i], tab.rhs[i], tab.basis[i]
    status = tab.run(phase2_cost(), n + n_slack)
    if status == "unbounded":
        return LPOutcome("unbounded")
    x = [ZERO] * ncols
    for i, bj in enumerate(tab.basis):
        x[bj] = tab.rhs[i]
    assignment = {v: x[index[v]] for v in lp.variables}
    return LPOutcome("optimal", assignment[lp.objective], assignment)


# ---------------------------------------------------------------------------
# Coloring problem on a support pair


def set_var(side: str, s: ColorSet) -> str:
    return f"{side}{s}"


def color_var(side: str, i: int) -> str:
    return f"{side}_{i}"


def _check_family(r: int, family: Iterable[ColorSet]) -> list[ColorSet]:
    out = []
    for s in family:
        if not isinstance(s, ColorSet):
            raise TypeError(f"family members must be ColorSet, got {s!r}")
        if s.r != r:
            raise DomainError(f"member {s} is over r={s.r}, expected r={r}")
        out.append(s)
    return sorted_sets(set(out))


def build_coloring_lp(r: int, P1: Iterable[ColorSet], P2: Iterable[ColorSet]) -> LinearProgram:
    """The coloring LP with a(R) free only on ``P1`` and b(R) only on ``P2``."""
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    fam = {"a": _check_family(r, P1), "b": _check_family(r, P2)}
    variables = [set_var(side, s) for side in "ab" for s in fam[side]]
    variables += [color_var(side, i) for side in "ab" for i in range(1, r + 1)]
    variables.append("m")
    lp = LinearProgram(variables, "m")
    for side in "ab":
        for s in fam[side]:
            lp.upper[set_var(side, s)] = ONE
        lp.add({set_var(side, s): 1 for s in fam[side]}, "=", 1)
        for i in range(1, r + 1):
            coeffs = {color_var(side, i): 1}
            coeffs.update({set_var(side, s): -1 for s in fam[side] if i in s})
            lp.add(coeffs, "=", 0)
    for i in range(1, r + 1):
        lp.add({"m": 1, color_var("a", i): -1, color_var("b", i): -1}, ">=", 0)
    return lp


def guard_fires(P1: Iterable[ColorSet], P2: Iterable[ColorSet]) -> bool:
    """True when h is 2 by definition: an empty family or a disjoint cross pair."""
    P1, P2 = list(P1), list(P2)
    if not P1 or not P2:
        return True
    return any(s.isdisjoint(t) for s in P1 for t in P2)


def solve_support(r: int, P1: Iterable[ColorSet], P2: Iterable[ColorSet]) -> tuple[Fraction, SolutionProfile | None]:
    """h value of a support pair plus the LP witness profile (None when guarded)."""
    P1, P2 = list(P1), list(P2)
    lp = build_coloring_lp(r, P1, P2)
    if guard_fires(P1, P2):
        return Fraction(2), None
    out = solve_min(lp)
    if out.status != "optimal":
        raise AssertionError(f"coloring LP unexpectedly {out.status}")
    x = out.assignment
    profile = SolutionProfile(
        r,
        {s: x[set_var("a", s)] for s in P1},
        {s: x[set_var("b", s)] for s in P2},
    )
    return out.value, profile


def h_value(r: int, P1: Iterable[ColorSet], P2: Iterable[ColorSet]) -> Fraction:
    return solve_support(r, P1, P2)[0]
