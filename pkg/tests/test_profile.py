from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gstar.constructions import small_catalog, square_grid
from gstar.core import ColorSet, DomainError, all_colorsets
from gstar.grid import ColoringSquare, square_to_profile
from gstar.profile import (
    SolutionProfile,
    aggregate,
    all_totals_equal,
    area_check,
    color_marginal,
    delete_and_rescale,
    format_profile,
    marginals,
    objective,
    parse_profile,
    small_set_predicate,
    unchecked_marginals,
    validate,
    weight_identity,
)

F = Fraction
TWO = SolutionProfile.from_lists(2, [((1,), F(1, 2)), ((2,), F(1, 2))], [((1, 2), 1)])
GRID3 = square_grid(3)


@st.composite
def squares(draw, max_n=5, max_r=5):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, max_r))
    cells = draw(st.lists(st.lists(st.integers(1, r), min_size=n, max_size=n), min_size=n, max_size=n))
    return ColoringSquare(n, r, cells)


def test_validate_examples():
    assert validate(TWO).ok
    bad = SolutionProfile.from_lists(2, [((1,), 1)], [((2,), 1)])
    report = validate(bad)
    assert [v.constraint for v in report] == ["cross-intersection"]
    assert report.violations[0].witness == (ColorSet.of([1], 2), ColorSet.of([2], 2))
    short = SolutionProfile.from_lists(1, [((1,), F(1, 2))], [((1,), 1)])
    assert [v.constraint for v in validate(short)] == ["sum"]


def test_validate_collects_everything():
    p = SolutionProfile(2, {ColorSet(0, 2): F(1, 2), ColorSet.of([1], 2): F(3, 2)}, {ColorSet.of([2], 2): 1})
    kinds = sorted(v.constraint for v in validate(p))
    assert kinds == ["box", "cross-intersection", "cross-intersection", "empty-set", "sum"]


def test_zeros_dropped_and_negatives_rejected():
    p = SolutionProfile.from_lists(2, [((1,), 1), ((2,), 0)], [((1,), 1)])
    assert list(p.a) == [ColorSet.of([1], 2)]
    with pytest.raises(DomainError):
        SolutionProfile.from_lists(2, [((1,), -1)], [((1,), 1)])


def test_marginals_examples():
    m = marginals(TWO)
    assert m.a_i == (F(1, 2), F(1, 2)) and m.b_i == (1, 1) and m.objective == F(3, 2)
    assert set(marginals(GRID3).totals) == {F(2, 3)}
    one = SolutionProfile.from_lists(1, [((1,), 1)], [((1,), 1)])
    assert objective(one) == 2


def test_marginals_rejects_invalid():
    with pytest.raises(DomainError):
        marginals(SolutionProfile.from_lists(2, [((1,), 1)], [((2,), 1)]))


def test_area_and_weight_examples():
    assert area_check(TWO) == (1, True)
    assert area_check(GRID3) == (1, True)
    assert weight_identity(TWO) and weight_identity(GRID3)


def test_small_set_predicate_examples():
    assert small_set_predicate(small_catalog(6), 1)
    assert small_set_predicate(TWO, 1)
    assert small_set_predicate(GRID3, 1)
    # invalid on purpose: totals 1/2 < 1 alongside singleton supports
    quarter = [((i,), F(1, 4)) for i in range(1, 5)]
    probe = SolutionProfile.from_lists(4, quarter, quarter)
    assert not validate(probe).ok
    assert not small_set_predicate(probe, 1)


def test_aggregate_examples():
    assert aggregate(TWO, "a", [ColorSet.of([1], 2)]) == F(1, 2)
    assert color_marginal(TWO, "b", 1) == 1
    assert aggregate(TWO, "a", []) == 0
    assert aggregate(GRID3, "b", all_colorsets(9)) == 1


def test_delete_and_rescale_examples():
    out = delete_and_rescale(TWO, "a", ColorSet.of([1], 2), F(1, 4))
    assert out.a == {ColorSet.of([1], 2): F(1, 3), ColorSet.of([2], 2): F(2, 3)}
    assert out.b == TWO.b
    same = delete_and_rescale(TWO, "b", ColorSet.of([1, 2], 2), F(1, 2))
    assert same.b == {ColorSet.of([1, 2], 2): 1}


@pytest.mark.parametrize("eps", [F(0), F(1, 2), F(3, 4), F(-1, 8)])
def test_delete_and_rescale_range(eps):
    with pytest.raises(DomainError):
        delete_and_rescale(TWO, "a", ColorSet.of([1], 2), eps)


def test_delete_and_rescale_missing_key():
    with pytest.raises(DomainError):
        delete_and_rescale(TWO, "a", ColorSet.of([1, 2], 2), F(1, 8))


def test_text_round_trip_and_order():
    text = format_profile(small_catalog(5))
    assert text.splitlines()[0] == "r=5"
    assert parse_profile(text) == small_catalog(5)
    body = text.splitlines()[1:]
    assert [ln.split()[0] for ln in body] == sorted(ln.split()[0] for ln in body)


@pytest.mark.parametrize(
    "text",
    [
        "r=2\na {1} 1/2\na {1} 1/2\nb {1,2} 1\n",
        "r=2\na {1} 0\nb {1,2} 1\n",
        "r=2\na {3} 1\nb {1,2} 1\n",
        "a {1} 1\n",
        "r=2\nc {1} 1\n",
    ],
)
def test_parser_rejects(text):
    with pytest.raises(DomainError):
        parse_profile(text)


def test_small_set_flag_is_only_a_flag():
    p = square_to_profile(ColoringSquare(2, 2, [[1, 1], [1, 2]]))
    assert validate(p).ok
    assert not all_totals_equal(p)


@given(squares())
def test_square_profiles_satisfy_the_identities(sq):
    p = square_to_profile(sq)
    assert validate(p).ok
    assert area_check(p)[1]
    assert weight_identity(p)
    assert aggregate(p, "a", all_colorsets(p.r)) == 1
    for i in range(1, p.r + 1):
        assert color_marginal(p, "a", i) == unchecked_marginals(p).a_i[i - 1]


@given(squares(max_r=3), squares(max_r=3), st.fractions(0, 1))
def test_marginals_are_linear(s1, s2, lam):
    if s1.r != s2.r:
        return
    p, q = square_to_profile(s1), square_to_profile(s2)
    mix_a = {k: lam * p.a.get(k, 0) + (1 - lam) * q.a.get(k, 0) for k in set(p.a) | set(q.a)}
    mix_b = {k: lam * p.b.get(k, 0) + (1 - lam) * q.b.get(k, 0) for k in set(p.b) | set(q.b)}
    mix = SolutionProfile(p.r, mix_a, mix_b)
    mp, mq, mm = unchecked_marginals(p), unchecked_marginals(q), unchecked_marginals(mix)
    assert mm.a_i == tuple(lam * x + (1 - lam) * y for x, y in zip(mp.a_i, mq.a_i))
    assert mm.b_i == tuple(lam * x + (1 - lam) * y for x, y in zip(mp.b_i, mq.b_i))


@given(squares(), st.data())
def test_delete_and_rescale_keeps_sums(sq, data):
    p = square_to_profile(sq)
    side = data.draw(st.sampled_from(["a", "b"]))
    entries = p.side(side)
    key = data.draw(st.sampled_from(sorted(entries, key=ColorSet.sort_key)))
    if entries[key] == 1:
        return
    eps = entries[key] * data.draw(st.fractions(F(1, 100), F(99, 100)))
    out = delete_and_rescale(p, side, key, eps)
    assert sum(out.side(side).values()) == 1
    assert sum(out.side("b" if side == "a" else "a").values()) == 1
