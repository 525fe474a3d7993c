"""Closed-form area bounds and a one-sided numeric oracle for them.

Every bound caps ``sum_i c_i d_i`` (or a related sum) over points with
``c_i + d_i <= k`` and some covering constraints.  The rational bounds are
returned exactly.  The two irrational ones (the sqrt interval and its
specialization) come as floats for display plus exact predicates that
decide comparisons with rationals by squaring.

``numeric_max`` only ever evaluates feasible points, so it can approach a
bound from below but never certify one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import DomainError, RationalLike, as_rational, format_rational

KINDS = ("lemma3", "lemma4", "lemma6", "lemma7", "corollary1")


def _k(k: RationalLike) -> Fraction:
    k = as_rational(k)
    if not 0 < k <= 1:
        raise DomainError(f"k must lie in (0, 1], got {format_rational(k)}")
    return k


def _positive(name: str, v: int) -> None:
    if not isinstance(v, int) or v < 1:
        raise DomainError(f"{name} must be a positive integer, got {v!r}")


# ---------------------------------------------------------------------------
# Rational bounds


def lemma3_bound(s: int, k: RationalLike) -> Fraction:
    """Cap on sum c_i d_i when sum c_i >= 1 and c_i + d_i <= k <= 2/s."""
    _positive("s", s)
    k = _k(k)
    if k > Fraction(2, s):
        raise DomainError(f"need k <= 2/s; k={format_rational(k)} exceeds 2/{s}")
    return k - Fraction(1, s)


def _split_check(nI: int, nO: int, k: Fraction, min_inner: int) -> None:
    if not isinstance(nI, int) or nI < min_inner:
        raise DomainError(f"|I| must be an integer >= {min_inner}, got {nI!r}")
    _positive("|O1|", nO)
    if not k < Fraction(2, nI + nO):
        raise DomainError(f"need k < 2/(|I|+|O1|) = 2/{nI + nO}; got k={format_rational(k)}")


def _in_range(name: str, e: Fraction, k: Fraction) -> None:
    if not 0 <= e <= k:
        raise DomainError(f"{name}={format_rational(e)} falls outside [0, k={format_rational(k)}]")


def lemma6_e(nI: int, nO: int, k: RationalLike) -> Fraction:
    k = as_rational(k)
    return (2 - nI * k) / (2 * nO)


def lemma6_bound(nI: int, nO: int, k: RationalLike) -> Fraction:
    """Cap when the c-sum over I+O1 and the d-sum over I+O2 both reach 1."""
    k = _k(k)
    _split_check(nI, nO, k, 1)
    e = lemma6_e(nI, nO, k)
    _in_range("e", e, k)
    return nI * k * k / 4 + 2 * nO * e * (k - e)


def lemma7_e(nI: int, nO: int, k: RationalLike) -> tuple[Fraction, Fraction]:
    k = as_rational(k)
    e1 = (2 + nI * k) / (2 * nI + nO) - k / 2
    e2 = (1 + nI * k / 2) / (2 * nI + nO)
    return e1, e2


def lemma7_bound(nI: int, nO: int, k: RationalLike) -> Fraction:
    """Cap when the c-sums over I+O1 and over I+O2 both reach 1."""
    k = _k(k)
    _split_check(nI, nO, k, 0)
    e1, e2 = lemma7_e(nI, nO, k)
    if nI:
        _in_range("e1", e1, k)
    _in_range("e2", e2, k)
    return nI * e1 * (k - e1) + 2 * nO * e2 * (k - e2)


# ---------------------------------------------------------------------------
# Irrational bounds


def lemma4_radicand(s: int, k: RationalLike, A: RationalLike) -> Fraction:
    _positive("s", s)
    k = _k(k)
    A = as_rational(A)
    if not 0 <= A <= 1:
        raise DomainError(f"A must lie in [0, 1], got {format_rational(A)}")
    D = k * k / 4 - A / s
    if D < 0:
        raise DomainError(f"need k^2/4 >= A/s; radicand {format_rational(D)} is negative")
    return D


def _sqrt(x: Fraction) -> float:
    # floor square root with 120 fractional bits, then one rounding to float
    num, den = x.numerator, x.denominator
    scale = 1 << 120
    return math.isqrt(num * scale * scale // den) / scale


def lemma4_interval(s: int, k: RationalLike, A: RationalLike) -> tuple[float, float]:
    """Range of sum_i min(c_i, d_i) .. sum_i max(c_i, d_i) when sum c_i d_i >= A."""
    D = lemma4_radicand(s, k, A)
    k = as_rational(k)
    root = _sqrt(D)
    half = float(k) / 2
    return s * (half - root), s * (half + root)


def upper_end_at_most(s: int, k: Fraction, D: Fraction, c: RationalLike) -> bool:
    """Exactly decide s(k/2 + sqrt(D)) <= c."""
    gap = as_rational(c) / s - k / 2
    return gap >= 0 and D <= gap * gap


def lower_end_at_least(s: int, k: Fraction, D: Fraction, c: RationalLike) -> bool:
    """Exactly decide s(k/2 - sqrt(D)) >= c."""
    gap = k / 2 - as_rational(c) / s
    return gap >= 0 and D <= gap * gap


def lemma4_upper_at_most(s: int, k: RationalLike, A: RationalLike, c: RationalLike) -> bool:
    D = lemma4_radicand(s, k, A)
    return upper_end_at_most(s, as_rational(k), D, c)


def lemma4_lower_at_least(s: int, k: RationalLike, A: RationalLike, c: RationalLike) -> bool:
    D = lemma4_radicand(s, k, A)
    return lower_end_at_least(s, as_rational(k), D, c)


def corollary1_A(r: int, s: int, k: RationalLike) -> Fraction:
    _positive("r", r)
    _positive("s", s)
    k = _k(k)
    if s > r:
        raise DomainError(f"need s <= r, got s={s}, r={r}")
    A = 1 - (r - s) * k * k / 4
    if not 0 <= A <= 1:
        raise DomainError(f"need 1 - (r-s)k^2/4 in [0, 1], got {format_rational(A)}")
    return A


def corollary1_radicand(r: int, s: int, k: RationalLike) -> Fraction:
    return lemma4_radicand(s, k, corollary1_A(r, s, k))


def corollary1_max(r: int, s: int, k: RationalLike) -> float:
    """Largest possible sum of max(c_i, d_i) over s of r colors."""
    return lemma4_interval(s, k, corollary1_A(r, s, k))[1]


def corollary1_at_most(r: int, s: int, k: RationalLike, c: RationalLike) -> bool:
    D = corollary1_radicand(r, s, k)
    return upper_end_at_most(s, as_rational(k), D, c)


# ---------------------------------------------------------------------------
# Queries and the numeric oracle


@dataclass(frozen=True)
class BoundQuery:
    kind: str
    k: Fraction
    s: int | None = None
    nI: int | None = None
    nO: int | None = None
    A: Fraction | None = None
    r: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "k", as_rational(self.k))
        if self.A is not None:
            object.__setattr__(self, "A", as_rational(self.A))
        self.closed_form()  # validates the hypotheses

    def closed_form(self) -> Fraction | float:
        if self.kind == "lemma3":
            return lemma3_bound(self.s, self.k)
        if self.kind == "lemma6":
            return lemma6_bound(self.nI, self.nO, self.k)
        if self.kind == "lemma7":
            return lemma7_bound(self.nI, self.nO, self.k)
        if self.kind == "lemma4":
            return lemma4_interval(self.s, self.k, self.A)[1]
        return corollary1_max(self.r, self.s, self.k)

    def closed_at_least(self, value: Fraction) -> bool:
        """Exactly decide value <= closed form."""
        if self.kind in ("lemma4", "corollary1"):
            A = self.A if self.kind == "lemma4" else corollary1_A(self.r, self.s, self.k)
            D = lemma4_radicand(self.s, self.k, A)
            if value <= self.s * self.k / 2:
                return True
            gap = value / self.s - self.k / 2
            return gap * gap <= D
        return value <= self.closed_form()


@dataclass(frozen=True)
class NumericResult:
    value: Fraction
    point: dict = field(default_factory=dict)


def _clip(x: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return lo if x < lo else hi if x > hi else x


def _group_objective(k: Fraction, groups) -> Fraction:
    return sum((n * x * (k - x) for n, x in groups), Fraction(0))


def _pair_setup(q: BoundQuery):
    """Feasible range of the shared I-value x and the best response for the rest.

    Points are symmetric within each group (I, O1, O2) and saturate
    c + d = k; the objective is concave and the feasible set convex and
    invariant under permuting a group, so nothing is lost.
    """
    k, nI, nO = q.k, q.nI, q.nO
    half = k / 2

    if q.kind == "lemma6":
        # c-sum over I+O1 >= 1, d-sum over I+O2 >= 1, d = k - c
        def respond(x):
            y = max((1 - nI * x) / nO, half)
            z = min(k - (1 - nI * (k - x)) / nO, half)
            if not (0 <= y <= k and 0 <= z <= k):
                return None
            return {"I": x, "O1": y, "O2": z}
    else:
        def respond(x):
            y = max((1 - nI * x) / nO, half)
            if not 0 <= y <= k:
                return None
            return {"I": x, "O1": y, "O2": y}

    def value(pt):
        return _group_objective(k, [(nI, pt["I"]), (nO, pt["O1"]), (nO, pt["O2"])])

    lo, hi = Fraction(0), k
    if nI:
        slack = (1 - nO * k) / nI
        lo = max(lo, slack)
        if q.kind == "lemma6":
            hi = min(hi, k - slack)
    return respond, value, lo, hi


def _concave_search(lo: Fraction, hi: Fraction, resolution: int, k: Fraction, f: Callable[[Fraction], Fraction | None]):
    """Grid over [lo, hi] at spacing k/resolution, then ternary refinement."""
    step = k / resolution
    best_x, best_v = None, None
    j0 = math.ceil(lo / step)
    j1 = math.floor(hi / step)
    xs = [lo, hi] + [j * step for j in range(j0, j1 + 1)]
    for x in xs:
        v = f(x)
        if v is not None and (best_v is None or v > best_v):
            best_x, best_v = x, v
    if best_x is None:
        return None, None
    a, b = float(max(lo, best_x - step)), float(min(hi, best_x + step))
    for _ in range(100):
        m1, m2 = a + (b - a) / 3, b - (b - a) / 3
        v1, v2 = f(_clip(Fraction(m1), lo, hi)), f(_clip(Fraction(m2), lo, hi))
        if v1 is None or v2 is None:
            break
        if v1 < v2:
            a = m1
        else:
            b = m2
    x = _clip(Fraction((a + b) / 2), lo, hi)
    v = f(x)
    if v is not None and v > best_v:
        best_x, best_v = x, v
    return best_x, best_v


def numeric_search(q: BoundQuery, resolution: int = 512) -> NumericResult:
    """Best feasible point found, evaluated exactly."""
    if resolution < 8:
        raise DomainError(f"resolution must be at least 8, got {resolution}")
    k = q.k
    if q.kind == "lemma3":
        s = q.s
        lo, hi = Fraction(1, s), k
        if lo > hi:
            raise DomainError("empty feasible region: s*k < 1")
        x, v = _concave_search(lo, hi, resolution, k, lambda x: s * x * (k - x))
        return NumericResult(v, {"c": x, "d": k - x})

    if q.kind in ("lemma4", "corollary1"):
        s = q.s
        A = q.A if q.kind == "lemma4" else corollary1_A(q.r, s, k)

        def ok(x):
            return s * x * (k - x) >= A

        # feasible c-values form [k/2, x*]; largest grid point, then bisection
        step = k / resolution
        lo = k / 2
        j = resolution
        while j * step > lo and not ok(j * step):
            j -= 1
        good = max(lo, j * step)
        bad = min(k, good + step)
        if ok(bad):
            good = bad
        for _ in range(80):
            if bad <= good:
                break
            mid = Fraction((float(good) + float(bad)) / 2)
            if not good < mid < bad:
                break
            if ok(mid):
                good = mid
            else:
                bad = mid
        return NumericResult(s * good, {"c": good, "d": k - good})

    respond, value, lo, hi = _pair_setup(q)

    def f(x):
        pt = respond(x)
        return None if pt is None else value(pt)

    if q.nI == 0:
        pt = respond(Fraction(0))
        if pt is None:
            raise DomainError("empty feasible region")
        return NumericResult(value(pt), pt)
    if lo > hi:
        raise DomainError("empty feasible region")
    x, v = _concave_search(lo, hi, resolution, k, f)
    if x is None:
        raise DomainError("no feasible grid point found")
    return NumericResult(v, respond(x))


def numeric_max(q: BoundQuery, resolution: int = 512) -> float:
    """Float value of :func:`numeric_search`, rounded toward zero so it never overstates."""
    exact = numeric_search(q, resolution).value
    out = float(exact)
    if Fraction(out) > exact:
        out = math.nextafter(out, -math.inf)
    return out
