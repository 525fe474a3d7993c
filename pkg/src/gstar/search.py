"""Exact g*(r) by enumerating support pairs, and certificates for the result.

A family of color sets is encoded as an integer whose bit ``R`` marks
membership of the subset with bitmask ``R``.  Only families without the
empty set are enumerated: any pair with a disjoint cross member (the empty
set included) has h = 2 by definition, and so does an empty family.
"""
from __future__ import annotations

import functools
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import constructions, kernels
from .core import (
    ColorSet,
    DomainError,
    format_family,
    format_rational,
    parse_family,
    parse_rational,
)
from .lp import solve_support
from .profile import (
    SolutionProfile,
    format_profile,
    objective,
    parse_profile_lines,
    validate,
)

MODES = ("exact", "upper-bound-only")
DEFAULT_SEARCH_BUDGET = 10_000_000


@dataclass(frozen=True)
class Certificate:
    r: int
    value: Fraction
    P1: frozenset[ColorSet]
    P2: frozenset[ColorSet]
    profile: SolutionProfile
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "P1", frozenset(self.P1))
        object.__setattr__(self, "P2", frozenset(self.P2))

    def summary(self) -> str:
        return f"value={format_rational(self.value)} mode={self.mode}"


# ---------------------------------------------------------------------------
# Family encoding and symmetry


def family_of(sets: Iterable[ColorSet]) -> int:
    fam = 0
    for s in sets:
        fam |= 1 << s.bits
    return fam


def sets_of(fam: int, r: int) -> frozenset[ColorSet]:
    out = []
    bits = 0
    while fam:
        if fam & 1:
            out.append(ColorSet(bits, r))
        fam >>= 1
        bits += 1
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def permutation_maps(r: int) -> tuple[tuple[int, ...], ...]:
    """For every color permutation, the induced map on subset bitmasks."""
    maps = []
    for perm in itertools.permutations(range(r)):
        pmap = []
        for R in range(1 << r):
            img = 0
            for i in range(r):
                if R >> i & 1:
                    img |= 1 << perm[i]
            pmap.append(img)
        maps.append(tuple(pmap))
    return tuple(maps)


def _check_sets(sets: Iterable[ColorSet], r: int) -> list[ColorSet]:
    out = list(sets)
    for s in out:
        if s.r != r:
            raise DomainError(f"member {s} is over r={s.r}, expected r={r}")
    return out


def canonicalize(P1: Iterable[ColorSet], P2: Iterable[ColorSet], r: int) -> tuple[frozenset[ColorSet], frozenset[ColorSet]]:
    """Least image of the pair under relabeling colors (same relabeling on both)."""
    f1 = family_of(_check_sets(P1, r))
    f2 = family_of(_check_sets(P2, r))
    c1, c2 = kernels.canonical_pair(r, f1, f2, permutation_maps(r))
    return sets_of(c1, r), sets_of(c2, r)


def quick_bound(f1: int, f2: int, r: int) -> int:
    """A color lying in every member of a family has marginal 1 on that side."""
    full = (1 << r) - 1
    common1, common2 = full, full
    for R in sets_of(f1, r):
        common1 &= R.bits
    for R in sets_of(f2, r):
        common2 &= R.bits
    return max(((common1 >> i) & 1) + ((common2 >> i) & 1) for i in range(r))


def _better(cand: tuple[Fraction, tuple[int, int]], cur: tuple[Fraction, tuple[int, int]] | None) -> bool:
    if cur is None:
        return True
    if cand[0] != cur[0]:
        return cand[0] < cur[0]
    return kernels.pair_cmp(*cand[1], *cur[1]) < 0


def _evaluate_chunk(r: int, pairs: list[tuple[int, int]], seed: Fraction) -> tuple[Fraction, tuple[int, int]] | None:
    best_val = seed
    best = None
    for f1, f2 in pairs:
        if quick_bound(f1, f2, r) > best_val:
            continue
        value, _ = solve_support(r, sets_of(f1, r), sets_of(f2, r))
        if value > best_val:
            continue
        cand = (value, (f1, f2))
        if _better(cand, best):
            best = cand
            best_val = value
    return best


def search_budget() -> int:
    env = os.environ.get("GSTAR_BUDGET")
    return int(env) if env else DEFAULT_SEARCH_BUDGET


def family_count(r: int) -> int:
    return (1 << ((1 << r) - 1)) - 1


def candidate_families(r: int) -> list[int]:
    """Nonempty families avoiding the empty set, by increasing size."""
    fams = range(2, 1 << (1 << r), 2)
    return sorted(fams, key=lambda f: (f.bit_count(), f))


def _certificate(r: int, P1, P2, mode: str) -> Certificate:
    value, witness = solve_support(r, P1, P2)
    if witness is None:
        raise AssertionError("certificate pair hits the h = 2 guard")
    return Certificate(r, value, frozenset(P1), frozenset(P2), witness, mode)


def meets_sqrt_bound(value: Fraction, r: int) -> bool:
    """True when value equals 2/sqrt(r), compared after squaring."""
    return value * value * r == 4


def enumerate_gstar(r: int, budget: int | None = None, jobs: int = 1) -> Certificate:
    """g*(r) with a certificate.

    Exact by enumeration when every candidate pair fits in ``budget``.  For
    r >= 4 the construction is checked first against the 2/sqrt(r) lower
    bound, which settles perfect squares without any search.  Otherwise the
    best construction is reported as an upper bound.
    """
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    limit = search_budget() if budget is None else budget
    best_construction = constructions.auto(r)
    seed = objective(best_construction)
    P1c, P2c = best_construction.supports

    if r >= 4 and meets_sqrt_bound(seed, r):
        return _certificate(r, P1c, P2c, "exact")

    if family_count(r) ** 2 > limit:
        return _certificate(r, P1c, P2c, "upper-bound-only")

    fams = candidate_families(r)
    pairs = kernels.scan_pairs(r, fams, fams, kernels.disjoint_table(r), permutation_maps(r), True)
    if jobs > 1 and len(pairs) > 1:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_chunk, [r] * jobs, chunks, [seed] * jobs))
    else:
        results = [_evaluate_chunk(r, pairs, seed)]
    best = None
    for res in results:
        if res is not None and _better(res, best):
            best = res
    if best is None:
        raise AssertionError(f"no pair reached the construction value {seed} at r={r}")
    f1, f2 = best[1]
    return _certificate(r, sets_of(f1, r), sets_of(f2, r), "exact")


def certify(c: Certificate) -> bool:
    """Re-solve the certificate's pair and re-check its profile.

    For exact certificates this does not repeat the enumeration.
    """
    try:
        value, _ = solve_support(c.r, c.P1, c.P2)
        if value != c.value:
            return False
        if c.profile.r != c.r or not validate(c.profile).ok:
            return False
        if not (set(c.profile.a) <= c.P1 and set(c.profile.b) <= c.P2):
            return False
        return objective(c.profile) == c.value
    except (DomainError, TypeError, AssertionError):
        return False


# ---------------------------------------------------------------------------
# Text format


def format_certificate(c: Certificate) -> str:
    head = [
        f"value={format_rational(c.value)}",
        f"mode={c.mode}",
        f"P1={format_family(c.P1)}",
        f"P2={format_family(c.P2)}",
    ]
    return "\n".join(head) + "\n" + format_profile(c.profile)


def parse_certificate(text: str) -> Certificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 5:
        raise DomainError("certificate needs value, mode, P1, P2 headers and a profile")
    fields = {}
    for ln, key in zip(lines[:4], ("value", "mode", "P1", "P2")):
        prefix = key + "="
        if not ln.startswith(prefix):
            raise DomainError(f"expected a line starting with {prefix!r}, got {ln!r}")
        fields[key] = ln[len(prefix):]
    profile = parse_profile_lines(lines[4:])
    r = profile.r
    return Certificate(
        r,
        parse_rational(fields["value"]),
        parse_family(fields["P1"], r),
        parse_family(fields["P2"], r),
        profile,
        fields["mode"],
    )
