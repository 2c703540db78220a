import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus, weighted
from homomonoid.oracle import enumerate_census
from homomonoid.presentation import ZERO, homogeneous, parse_presentation
from homomonoid.rewriting import (
    Complete,
    TruncatedAt,
    complete,
    normal_form,
    obstruction_set,
    unresolved_pairs,
)
from homomonoid.words import Word

CORPUS = corpus()


def rules(rs):
    return [str(r) for r in rs.rules]


def test_nilpotent_example():
    rs = complete(weighted("nil_xy"))
    assert rs.status == Complete()
    assert rules(rs) == ["xx -> 0", "xy -> 0"]
    assert {w.text() for w in obstruction_set(rs)} == {"xx", "xy"}


def test_commutative_example():
    rs = complete(weighted("commutative"))
    assert rs.is_complete and rules(rs) == ["yx -> xy"]


def test_squares_needs_a_new_rule():
    rs = complete(weighted("squares"))
    assert rs.is_complete
    assert rules(rs) == ["yy -> xx", "yxx -> xxy"]


def test_infinite_completion_is_truncated():
    rs = complete(weighted("infinite_completion"))
    assert rs.status == TruncatedAt(8)
    assert not rs.is_complete
    with pytest.raises(ValueError):
        obstruction_set(rs)
    alpha = rs.alphabet
    assert rs.certified_for(alpha.word("x" * 8))
    assert not rs.certified_for(alpha.word("x" * 9))


def test_truncation_respects_bound():
    rs = complete(weighted("squares"), max_degree=2)
    assert rs.status == TruncatedAt(2)


def test_weighted_completion():
    rs = complete(weighted("weighted"))
    # the overlap yyy forces x to commute with y
    assert rs.is_complete and rules(rs) == ["yy -> x", "yx -> xy"]


def test_rejects_non_homogeneous():
    p = parse_presentation("gens: x\nrels: x = xx\n")
    with pytest.raises(ValueError):
        complete(p, weights={"x": 1})


@pytest.mark.parametrize("label, p", CORPUS, ids=[c[0] for c in CORPUS])
def test_agrees_with_oracle(label, p):
    """Two words have equal normal forms exactly when the oracle puts them in one class."""
    rs = complete(p)
    assert rs.is_complete
    assert unresolved_pairs(rs) == []
    degree = 12 if len(p.generators) <= 2 else 9
    census = enumerate_census(p, degree)
    for lvl in census.levels:
        for cls in lvl.classes:
            forms = {normal_form(rs, Word(p.alphabet, w)) for w in cls}
            assert len(forms) == 1
            (nf,) = forms
            assert nf is not ZERO and nf.codes in cls
        for w in lvl.zero_class:
            assert normal_form(rs, Word(p.alphabet, w)) is ZERO
        # distinct classes have distinct normal forms
        assert len({normal_form(rs, Word(p.alphabet, min(c))) for c in lvl.classes}) == len(lvl.classes)


@pytest.mark.parametrize("label, p", CORPUS, ids=[c[0] for c in CORPUS])
def test_normal_form_laws(label, p):
    rs = complete(p)
    rng = random.Random(label)
    alpha = p.alphabet
    for _ in range(200):
        u = Word(alpha, tuple(rng.randrange(len(alpha)) for _ in range(rng.randrange(11))))
        v = Word(alpha, tuple(rng.randrange(len(alpha)) for _ in range(rng.randrange(11))))
        nu, nv = normal_form(rs, u), normal_form(rs, v)
        assert nu is ZERO or normal_form(rs, nu) == nu
        if nu is ZERO or nv is ZERO:
            assert normal_form(rs, u + v) is ZERO
        else:
            assert nu.weight == u.weight
            assert normal_form(rs, u + v) == normal_form(rs, nu + nv)


def test_generator_order_changes_rules_not_counts():
    from homomonoid.automaton import build_automaton, count_words
    p = weighted("squares")
    counts = None
    for order in itertools.permutations(p.generators):
        q = p.reordered(list(order))
        rs = complete(q)
        c = count_words(build_automaton(obstruction_set(rs), q.alphabet), 10)
        assert counts is None or c == counts
        counts = c


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_presentations_complete_or_truncate_honestly(seed):
    from homomonoid.corpus import random_presentation
    p = homogeneous(random_presentation(random.Random(seed), letters="xy", max_rels=3,
                                        lengths=(1, 2, 3), zero_rate=0.3))
    if not p:
        return
    rs = complete(p, max_degree=8)
    if rs.is_complete:
        assert unresolved_pairs(rs) == []
    # up to the bound, the rules never merge words the oracle keeps apart
    census = enumerate_census(p, 6)
    for lvl in census.levels:
        for cls in lvl.classes:
            assert len({normal_form(rs, Word(p.alphabet, w)) for w in cls}) == 1
        assert len({normal_form(rs, Word(p.alphabet, min(c))) for c in lvl.classes}) == len(lvl.classes)
