import pytest

from conftest import weighted
from homomonoid.oracle import BudgetExceeded, census_counts, enumerate_census


def words(p, *texts):
    return frozenset(p.alphabet.word(t).codes for t in texts)


def test_nilpotent_example_classes():
    p = weighted("nil_xy")
    census = enumerate_census(p, 3)
    lvl = census.levels[2]
    assert set(lvl.classes) == {words(p, "yx"), words(p, "yy")}
    assert lvl.zero_class == words(p, "xx", "xy")
    assert census_counts(census) == [1, 2, 2, 2]


def test_commutative_degree_two():
    p = weighted("commutative")
    lvl = enumerate_census(p, 2).levels[2]
    assert set(lvl.classes) == {words(p, "xx"), words(p, "xy", "yx"), words(p, "yy")}
    assert lvl.zero_class == frozenset()


def test_weighted_counts():
    # x = yy with x of weight 2: one element per weight, the power y^n
    assert census_counts(enumerate_census(weighted("weighted"), 8)) == [1] * 9


def test_free_counts():
    assert census_counts(enumerate_census(weighted("free2"), 6)) == [2 ** n for n in range(7)]


def test_zero_propagates_through_classes():
    # yy = xy makes xyx and yyx equal; yyx = 0 must kill both
    from homomonoid.presentation import homogeneous, parse_presentation
    p = homogeneous(parse_presentation("gens: x y\nrels: yy = xy, yyx = 0\n"))
    census = enumerate_census(p, 3)
    assert census.class_of(p.alphabet.word("xyx").codes) is None
    assert p.alphabet.word("xyx").codes in census.levels[3].zero_class


@pytest.mark.parametrize("name", ["nil_xy", "commutative", "squares", "infinite_completion"])
def test_enumeration_order_does_not_matter(name):
    p = weighted(name)
    base = enumerate_census(p, 7)
    for seed in range(3):
        shuffled = enumerate_census(p, 7, order_seed=seed)
        assert [set(l.classes) for l in shuffled.levels] == [set(l.classes) for l in base.levels]


def test_degree_bound_is_monotone():
    p = weighted("squares")
    assert census_counts(enumerate_census(p, 9))[:6] == census_counts(enumerate_census(p, 5))


def test_budget_exceeded_keeps_partial_census():
    p = weighted("free2")
    with pytest.raises(BudgetExceeded) as info:
        enumerate_census(p, 20, budget=100)
    exc = info.value
    assert exc.degree == 6
    assert census_counts(exc.partial) == [1, 2, 4, 8, 16, 32]
