import dataclasses
import itertools
from fractions import Fraction

import pytest

from gstar import constructions, search
from gstar.core import ColorSet, DomainError
from gstar.lp import h_value
from gstar.profile import SolutionProfile, objective

F = Fraction


def fam(r, *sets):
    return frozenset(ColorSet.of(s, r) for s in sets)


def test_canonicalize_examples():
    assert search.canonicalize(fam(2, [2]), fam(2, [1, 2]), 2) == (fam(2, [1]), fam(2, [1, 2]))
    pair = (fam(2, [1], [2]), fam(2, [1, 2]))
    assert search.canonicalize(*pair, 2) == pair
    least = search.canonicalize(fam(3, [1, 2], [3]), fam(3, [1, 3], [2, 3]), 3)
    assert search.canonicalize(*least, 3) == least


def test_canonicalize_constant_on_orbits():
    r = 3
    P1, P2 = fam(r, [1], [2, 3]), fam(r, [1, 2], [1, 3])
    target = search.canonicalize(P1, P2, r)
    for perm in itertools.permutations(range(1, r + 1)):
        def m(f):
            return frozenset(ColorSet.of([perm[c - 1] for c in s], r) for s in f)

        assert search.canonicalize(m(P1), m(P2), r) == target


def test_family_encoding_round_trip():
    f = fam(3, [1], [2, 3], [])
    assert search.sets_of(search.family_of(f), 3) == f


@pytest.mark.parametrize("r,value", [(1, F(2)), (2, F(3, 2)), (3, F(5, 4))])
def test_exact_small_values(r, value):
    c = search.enumerate_gstar(r)
    assert c.mode == "exact"
    assert c.value == value
    assert search.certify(c)


def test_r_zero_rejected():
    with pytest.raises(DomainError):
        search.enumerate_gstar(0)


def test_perfect_squares_settled_by_bound():
    for r in (4, 9, 16):
        c = search.enumerate_gstar(r)
        assert c.mode == "exact"
        assert c.value * c.value * r == 4


def test_other_r_are_upper_bounds():
    for r in (5, 6, 7, 8, 10):
        c = search.enumerate_gstar(r)
        assert c.mode == "upper-bound-only"
        assert c.value <= objective_of(r)
        assert c.value * c.value * r >= 4
        assert search.certify(c)


def objective_of(r):
    return objective(constructions.auto(r))


def test_budget_degrades_gracefully():
    c = search.enumerate_gstar(3, budget=10)
    assert c.mode == "upper-bound-only"
    assert c.value == F(5, 4)


def test_sandwich_and_monotone():
    values = [search.enumerate_gstar(r).value for r in range(1, 10)]
    for r, v in enumerate(values, start=1):
        assert constructions.universal_value(r) >= v
        assert v * v * r >= 4
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_parallel_matches_serial():
    assert search.enumerate_gstar(3, jobs=3) == search.enumerate_gstar(3)


def test_tie_break_picks_least_pair():
    c = search.enumerate_gstar(2)
    f1, f2 = search.family_of(c.P1), search.family_of(c.P2)
    assert search.kernels.is_canonical(2, f1, f2, search.permutation_maps(2))


def test_certify_rejects_tampering():
    c = search.enumerate_gstar(2)
    assert not search.certify(dataclasses.replace(c, value=F(1)))
    bad_profile = SolutionProfile.from_lists(2, [((1,), 1)], [((2,), 1)])
    assert not search.certify(dataclasses.replace(c, profile=bad_profile))
    foreign = SolutionProfile.from_lists(2, [((1, 2), 1)], [((1, 2), 1)])
    assert not search.certify(dataclasses.replace(c, profile=foreign))


def test_certificate_text_round_trip():
    c = search.enumerate_gstar(3)
    text = search.format_certificate(c)
    head = text.splitlines()[:4]
    assert head[0] == "value=5/4" and head[1] == "mode=exact"
    assert head[2].startswith("P1=") and head[3].startswith("P2=")
    assert search.parse_certificate(text) == c


def test_parse_certificate_rejects_garbage():
    with pytest.raises(DomainError):
        search.parse_certificate("value=1\nmode=exact\n")
    with pytest.raises(DomainError):
        search.parse_certificate("value=1\nmode=maybe\nP1={1}\nP2={1}\nr=1\na {1} 1\nb {1} 1\n")


def test_quick_bound_is_admissible():
    r = 3
    for f1 in search.candidate_families(r)[:60]:
        for f2 in search.candidate_families(r)[:60:7]:
            P1, P2 = search.sets_of(f1, r), search.sets_of(f2, r)
            assert search.quick_bound(f1, f2, r) <= h_value(r, P1, P2)
