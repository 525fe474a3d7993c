"""Column/row distributions a(R), b(R) and the checks that hold for them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    ColorSet,
    DomainError,
    RationalLike,
    as_rational,
    format_rational,
    parse_colorset,
    parse_rational,
    sorted_sets,
    upward_closure,
)

SIDES = ("a", "b")


@dataclass(frozen=True)
class SolutionProfile:
    """Proportions of columns (``a``) and rows (``b``) by exact color set.

    Zero entries are dropped on construction so the stored keys are exactly
    the supports.  Constraint checks live in :func:`validate`; constructing an
    invalid profile is allowed so that it can be reported on.
    """

    r: int
    a: Mapping[ColorSet, Fraction]
    b: Mapping[ColorSet, Fraction]

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(f"r must be positive, got {self.r}")
        for side in SIDES:
            clean = {}
            for key, value in dict(getattr(self, side)).items():
                if not isinstance(key, ColorSet):
                    raise TypeError(f"profile keys must be ColorSet, got {key!r}")
                if key.r != self.r:
                    raise DomainError(f"{side}-key {key} is over r={key.r}, profile has r={self.r}")
                value = as_rational(value)
                if value < 0:
                    raise DomainError(f"negative entry {side}({key}) = {format_rational(value)}")
                if value:
                    clean[key] = value
            ordered = {k: clean[k] for k in sorted_sets(clean)}
            object.__setattr__(self, side, ordered)

    @classmethod
    def from_lists(cls, r: int, a: Iterable, b: Iterable) -> "SolutionProfile":
        """Build from ``[(colors, value), ...]`` pairs for each side."""
        return cls(
            r,
            {ColorSet.of(c, r): as_rational(v) for c, v in a},
            {ColorSet.of(c, r): as_rational(v) for c, v in b},
        )

    def side(self, side: str) -> Mapping[ColorSet, Fraction]:
        if side not in SIDES:
            raise DomainError(f"side must be 'a' or 'b', got {side!r}")
        return getattr(self, side)

    @property
    def supports(self) -> tuple[frozenset[ColorSet], frozenset[ColorSet]]:
        return frozenset(self.a), frozenset(self.b)

    def values(self) -> list[Fraction]:
        return [*self.a.values(), *self.b.values()]

    def transpose(self) -> "SolutionProfile":
        return SolutionProfile(self.r, self.b, self.a)

    def __eq__(self, other):
        if not isinstance(other, SolutionProfile):
            return NotImplemented
        return self.r == other.r and dict(self.a) == dict(other.a) and dict(self.b) == dict(other.b)

    def __hash__(self):
        return hash((self.r, frozenset(self.a.items()), frozenset(self.b.items())))


@dataclass(frozen=True)
class Violation:
    constraint: str
    message: str
    witness: tuple = ()

    def __str__(self):
        return f"[{self.constraint}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __iter__(self):
        return iter(self.violations)


@dataclass(frozen=True)
class Marginals:
    a_i: tuple[Fraction, ...]
    b_i: tuple[Fraction, ...]
    objective: Fraction

    @property
    def totals(self) -> tuple[Fraction, ...]:
        return tuple(x + y for x, y in zip(self.a_i, self.b_i))


def validate(p: SolutionProfile) -> ValidationReport:
    """Report every violated coloring constraint; an empty report means valid."""
    found: list[Violation] = []
    for side in SIDES:
        entries = p.side(side)
        for key, value in entries.items():
            if key.bits == 0:
                found.append(Violation("empty-set", f"{side}({{}}) = {format_rational(value)} must be 0", (side, key)))
            if value > 1:
                found.append(Violation("box", f"{side}({key}) = {format_rational(value)} exceeds 1", (side, key)))
        total = sum(entries.values(), Fraction(0))
        if total != 1:
            found.append(Violation("sum", f"{side}-side sums to {format_rational(total)}, not 1", (side, total)))
    for r1 in p.a:
        for r2 in p.b:
            if r1.isdisjoint(r2):
                found.append(
                    Violation("cross-intersection", f"a({r1}) > 0 and b({r2}) > 0 with {r1} ∩ {r2} = {{}}", (r1, r2))
                )
    return ValidationReport(tuple(found))


def _marginal(entries: Mapping[ColorSet, Fraction], r: int) -> tuple[Fraction, ...]:
    acc = [Fraction(0)] * r
    for key, value in entries.items():
        for c in key.colors:
            acc[c - 1] += value
    return tuple(acc)


def marginals(p: SolutionProfile) -> Marginals:
    report = validate(p)
    if not report.ok:
        raise DomainError("invalid profile: " + "; ".join(map(str, report)))
    return unchecked_marginals(p)


def unchecked_marginals(p: SolutionProfile) -> Marginals:
    a_i = _marginal(p.a, p.r)
    b_i = _marginal(p.b, p.r)
    return Marginals(a_i, b_i, max(x + y for x, y in zip(a_i, b_i)))


def objective(p: SolutionProfile) -> Fraction:
    return marginals(p).objective


def area_check(p: SolutionProfile) -> tuple[Fraction, bool]:
    """Total coverable area ``sum_i a_i b_i`` and whether it reaches 1."""
    m = unchecked_marginals(p)
    area = sum((x * y for x, y in zip(m.a_i, m.b_i)), Fraction(0))
    return area, area >= 1


def weight_identity(p: SolutionProfile) -> bool:
    """``sum_i a_i == sum_R |R| a(R)`` on both sides."""
    m = unchecked_marginals(p)
    for side, marg in (("a", m.a_i), ("b", m.b_i)):
        weighted = sum((len(k) * v for k, v in p.side(side).items()), Fraction(0))
        if sum(marg, Fraction(0)) != weighted:
            return False
    return True


def small_set_predicate(p: SolutionProfile, t: int) -> bool:
    """If every color total is below ``1/t``, no support set may have size <= t.

    Returns False only when a counterexample exists.
    """
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    m = unchecked_marginals(p)
    if not m.objective < Fraction(1, t):
        return True
    return all(len(k) > t for side in SIDES for k in p.side(side))


def aggregate(p: SolutionProfile, side: str, family: Iterable[ColorSet]) -> Fraction:
    entries = p.side(side)
    return sum((entries.get(k, Fraction(0)) for k in set(family)), Fraction(0))


def color_marginal(p: SolutionProfile, side: str, color: int) -> Fraction:
    """``a_i`` (or ``b_i``) via the upward closure of ``{color}``."""
    return aggregate(p, side, upward_closure(ColorSet.of([color], p.r)))


def delete_and_rescale(p: SolutionProfile, side: str, key: ColorSet, eps: RationalLike) -> SolutionProfile:
    """Remove ``eps`` mass from ``side(key)`` and renormalize that side."""
    eps = as_rational(eps)
    entries = p.side(side)
    if key not in entries:
        raise DomainError(f"{key} is not in the {side}-support")
    if not 0 < eps < entries[key]:
        raise DomainError(f"eps={format_rational(eps)} must lie in (0, {format_rational(entries[key])})")
    scale = 1 - eps
    new = {k: ((v - eps) if k == key else v) / scale for k, v in entries.items()}
    if side == "a":
        return SolutionProfile(p.r, new, p.b)
    return SolutionProfile(p.r, p.a, new)


def all_totals_equal(p: SolutionProfile) -> bool:
    """Empirical flag: every color has the same a_i + b_i."""
    totals = unchecked_marginals(p).totals
    return len(set(totals)) == 1


def max_overlap(p: SolutionProfile) -> int:
    """Largest |R1 ∩ R2| over support pairs (a(R1) > 0, b(R2) > 0)."""
    return max((len(r1 & r2) for r1 in p.a for r2 in p.b), default=0)


# ---------------------------------------------------------------------------
# Text format


def format_profile(p: SolutionProfile) -> str:
    lines = [f"r={p.r}"]
    for side in SIDES:
        for key, value in p.side(side).items():
            lines.append(f"{side} {key} {format_rational(value)}")
    return "\n".join(lines) + "\n"


def parse_profile_lines(lines: list[str]) -> SolutionProfile:
    lines = [ln.strip() for ln in lines if ln.strip()]
    if not lines or not lines[0].startswith("r="):
        raise DomainError("profile must start with a line 'r=<integer>'")
    try:
        r = int(lines[0][2:])
    except ValueError:
        raise DomainError(f"malformed header {lines[0]!r}") from None
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    sides: dict[str, dict[ColorSet, Fraction]] = {"a": {}, "b": {}}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] not in SIDES:
            raise DomainError(f"malformed profile line {ln!r}")
        side, key_text, value_text = parts
        key = parse_colorset(key_text, r)
        value = parse_rational(value_text)
        if value == 0:
            raise DomainError(f"zero value in line {ln!r}; zeros must be omitted")
        if key in sides[side]:
            raise DomainError(f"duplicate key {side} {key}")
        sides[side][key] = value
    return SolutionProfile(r, sides["a"], sides["b"])


def parse_profile(text: str) -> SolutionProfile:
    return parse_profile_lines(text.splitlines())
