import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus, weighted
from homomonoid.automaton import build_automaton, classify_growth, count_words
from homomonoid.rewriting import complete, obstruction_set
from homomonoid.sandwich import (
    Family,
    MonogenicRefutation,
    MonogenicWitness,
    Sandwich,
    SandwichDecomposition,
    check_monogenic_plus_finite,
    count_up_to,
    disjointify,
    extract_decomposition,
    gamma_bounds,
    intersect,
    member_word,
    progression_cover_size,
    subtract,
)
from homomonoid.words import Alphabet, Word

AB = Alphabet.unit("ab")
CORPUS = [c for c in corpus() if classify_growth(
    build_automaton(obstruction_set(complete(c[1])), c[1].alphabet)).at_most_linear]


def sw(a, w, b, alpha=AB):
    return Sandwich(alpha.word(a), alpha.word(w), alpha.word(b))


def brute_pairs(s1, s2, max_len):
    left = {}
    for n, u in enumerate(s1.members(max_length=max_len)):
        left.setdefault(u, n)
    return sorted((left[v], m) for m, v in enumerate(s2.members(max_length=max_len)) if v in left)


def dfa_of(p):
    return build_automaton(obstruction_set(complete(p)), p.alphabet)


def random_sandwich(rng, alpha=AB, max_ab=3, max_w=4):
    def word(lo, hi):
        return Word(alpha, tuple(rng.randrange(len(alpha)) for _ in range(rng.randint(lo, hi))))
    return Sandwich(word(0, max_ab), word(1, max_w), word(0, max_ab))


def test_members_are_distinct():
    s = sw("a", "ba", "b")
    assert [str(u) for u in s.members(max_length=7)] == ["ab", "abab", "ababab"]
    assert len(set(s.members(max_length=40))) == len(list(s.members(max_length=40)))


def test_count_up_to():
    s = sw("a", "bb", "")
    assert [count_up_to(s, n) for n in range(6)] == [0, 1, 1, 2, 2, 3]
    assert count_up_to(sw("ab", "", ""), 1) == 0 and count_up_to(sw("ab", "", ""), 2) == 1


def test_canonical_form_keeps_the_set():
    s = sw("aab", "ab", "")
    c = s.canonical()
    assert str(c) == "a<ab>ab"
    assert list(c.members(max_length=20)) == list(s.members(max_length=20))


def test_intersect_examples():
    r = intersect(sw("", "ab", ""), sw("a", "ba", "b"))
    assert r.points == () and r.family == Family(1, 0, 1, 1)
    r = intersect(sw("", "aa", ""), sw("", "aaa", ""))
    assert r.family == Family(0, 0, 3, 2)
    assert intersect(sw("", "a", ""), sw("", "b", "")).index_pairs(10) == [(0, 0)]
    assert intersect(sw("a", "b", ""), sw("b", "a", "")).is_empty


def test_intersect_sporadic_point():
    # a b^n a and (ab)^m a meet in finitely many words
    s1, s2 = sw("a", "b", "a"), sw("", "ab", "a")
    r = intersect(s1, s2)
    assert r.is_finite
    assert r.index_pairs(50) == brute_pairs(s1, s2, 60)


def test_intersect_random_against_enumeration():
    rng = random.Random(7)
    for _ in range(1500):
        s1, s2 = random_sandwich(rng), random_sandwich(rng)
        r = intersect(s1, s2)
        want = brute_pairs(s1, s2, 60)
        limit = (60 - len(s1.a) - len(s1.b)) // len(s1.w) + 1
        got = [pt for pt in r.index_pairs(limit)
               if len(member_word(s2, pt[1])) <= 60]
        assert got == want, (s1, s2)


def test_subtract_example():
    s = sw("", "aa", "")
    dec = subtract(s, intersect(s, sw("", "aaa", "")))
    assert [str(x) for x in dec.sandwiches] == ["<aaaaaa>aa", "<aaaaaa>aaaa"]
    assert dec.finite == ()


@pytest.mark.parametrize("pieces, expected", [
    ([("", "a", ""), ("", "aa", "")], ["<a>"]),
    ([("", "aa", ""), ("a", "aa", "")], ["<aa>", "<aa>a"]),
])
def test_disjointify_examples(pieces, expected):
    dec = disjointify(sw(*p) for p in pieces)
    assert sorted(str(s) for s in dec.sandwiches) == expected


def union(sandwiches, max_len):
    return {u for s in sandwiches for u in s.members(max_length=max_len)}


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 5))
def test_disjointify_preserves_union_and_separates(seed, k):
    rng = random.Random(seed)
    given_pieces = [random_sandwich(rng) for _ in range(k)]
    dec = disjointify(given_pieces)
    words = dec.words(max_length=40)
    assert len(words) == len(set(words))
    assert set(words) == union(given_pieces, 40)
    for s1, s2 in combinations(dec.pieces(), 2):
        assert intersect(s1, s2).is_empty


def test_extract_nilpotent_example():
    p = weighted("nil_xy")
    dec = extract_decomposition(dfa_of(p), has_zero=p.has_zero)
    assert [str(s) for s in dec.sandwiches] == ["<y>", "<y>x"]
    assert dec.finite == ()
    assert dec.has_unit and dec.has_zero


def test_extract_rejects_superlinear():
    with pytest.raises(ValueError):
        extract_decomposition(dfa_of(weighted("commutative")))


@pytest.mark.parametrize("label, p", CORPUS, ids=[c[0] for c in CORPUS])
def test_extract_matches_accepted_words(label, p):
    dfa = dfa_of(p)
    dec = extract_decomposition(dfa, has_zero=p.has_zero)
    words = dec.words(max_weight=14)
    assert len(words) == len(set(words))
    assert all(dfa.accepts(u) for u in words)
    assert dec.counts(20) == count_words(dfa, 20)
    for s1, s2 in combinations(dec.pieces(), 2):
        assert intersect(s1, s2).is_empty


@pytest.mark.parametrize("label, p", CORPUS, ids=[c[0] for c in CORPUS])
def test_gamma_witness_is_a_decomposition(label, p):
    dfa = dfa_of(p)
    gb = gamma_bounds(extract_decomposition(dfa), dfa)
    assert gb.lower <= gb.upper == len(gb.witness.sandwiches)
    assert gb.witness.counts(20) == count_words(dfa, 20)
    for s1, s2 in combinations(gb.witness.pieces(), 2):
        assert intersect(s1, s2).is_empty


@pytest.mark.parametrize("name, gamma", [
    ("nil_xy", 2), ("free1", 1), ("finite", 0), ("powers_then_y", 2),
    ("commutative_nil", 2), ("monogenic_plus_finite", 1),
])
def test_gamma_values(name, gamma):
    dfa = dfa_of(weighted(name))
    gb = gamma_bounds(extract_decomposition(dfa), dfa)
    assert gb.exact and gb.lower == gamma


def test_gamma_interval_for_weighted_monogenic():
    # x = yy: the monoid is <y>, but words of odd and even weight come from different sandwiches
    dfa = dfa_of(weighted("weighted"))
    gb = gamma_bounds(extract_decomposition(dfa), dfa)
    assert (gb.lower, gb.upper) == (1, 2)


def test_progression_cover_size():
    assert progression_cover_size([1]) == 1
    assert progression_cover_size([2]) == 2
    assert progression_cover_size([1, 0]) == 1
    assert progression_cover_size([2, 1]) == 2
    assert progression_cover_size([0, 0, 0]) == 0
    assert progression_cover_size([1, 1, 1, 2, 1, 1]) == 2


def test_monogenic_plus_finite():
    dfa = dfa_of(weighted("monogenic_plus_finite"))
    gb = gamma_bounds(extract_decomposition(dfa), dfa)
    result = check_monogenic_plus_finite(gb.witness)
    assert isinstance(result, MonogenicWitness)
    assert result.generator.text() == "x"
    assert [u.text() for u in result.residual] == ["y"]


def test_monogenic_shifted_sandwich():
    # a<w>b = x<yx>y is the set of (xy)^(n+1)
    xy = Alphabet.unit("xy")
    dec = SandwichDecomposition((), (Sandwich(xy.word("x"), xy.word("yx"), xy.word("y")),), True)
    result = check_monogenic_plus_finite(dec)
    assert result.generator.text() == "xy" and result.shift == 1


def test_monogenic_refutations():
    xy = Alphabet.unit("xy")
    dec = SandwichDecomposition((), (Sandwich(xy.word(""), xy.word("x"), xy.word("y")),), True)
    assert isinstance(check_monogenic_plus_finite(dec), MonogenicRefutation)
    assert not check_monogenic_plus_finite(dec)
    with pytest.raises(ValueError):
        check_monogenic_plus_finite(SandwichDecomposition())


def test_json_round_trip():
    p = weighted("nil_xy")
    dec = extract_decomposition(dfa_of(p), has_zero=True)
    again = SandwichDecomposition.from_json(dec.to_json(), p.alphabet)
    assert again == dec
