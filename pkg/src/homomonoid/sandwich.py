"""Sandwiches a<w>b = {a w^n b : n >= 0} in a free monoid and their algebra.

The central routine is :func:`intersect`.  For infinite sandwiches
U = a<w>b and U' = a'<w'>b' it solves a w^n b = a' w'^m b' exactly:

* the length equation forces n into a single residue class modulo
  p = |w'| / gcd(|w|, |w'|), with m determined by n;
* once the two periodic blocks overlap on at least |r| + |r'| letters
  (r, r' the primitive roots of w, w'), Fine and Wilf force r, r' to be
  conjugate and the union of both blocks to be one periodic stretch.  From
  that point on, n is a solution iff n + p is one, because inserting
  p|w| = q|w'| letters of the period into that stretch grows both blocks
  consistently.

So scanning n below that threshold plus one more step p decides every
index, and the answer is a finite set plus at most one arithmetic family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .automaton import (
    NormalWordAutomaton,
    classify_growth,
    count_words,
    cycle_structure,
    lcm_of,
)
from .words import Alphabet, Word, primitive_root_codes

__all__ = [
    "Sandwich",
    "SandwichDecomposition",
    "Family",
    "IntersectionResult",
    "GammaBounds",
    "MonogenicWitness",
    "MonogenicRefutation",
    "member_word",
    "count_up_to",
    "intersect",
    "subtract",
    "disjointify",
    "extract_decomposition",
    "gamma_bounds",
    "check_monogenic_plus_finite",
    "progression_cover_size",
]


@dataclass(frozen=True)
class Sandwich:
    a: Word
    w: Word
    b: Word

    def __post_init__(self):
        self.a._check(self.w)
        self.a._check(self.b)

    @property
    def alphabet(self) -> Alphabet:
        return self.a.alphabet

    @property
    def is_singleton(self) -> bool:
        return not self.w.codes

    def member(self, n: int) -> Word:
        return member_word(self, n)

    def members(self, max_length: int | None = None, max_weight: int | None = None) -> Iterator[Word]:
        """Members in index order, stopping at the given length/weight bound."""
        n = 0
        while True:
            word = member_word(self, n)
            if max_length is not None and len(word) > max_length:
                return
            if max_weight is not None and word.weight > max_weight:
                return
            yield word
            if self.is_singleton:
                return
            n += 1

    def canonical(self) -> Sandwich:
        """Same set, with the prefix ``a`` made as short as possible.

        a1·c·(w1·c)^n·b equals a1·(c·w1)^n·c·b, so trailing letters of ``a``
        matching the tail of ``w`` are rotated through into ``b``.
        """
        if self.is_singleton:
            return Sandwich(self.a + self.b, self.w, Word(self.alphabet))
        a, w, b = self.a.codes, self.w.codes, self.b.codes
        while a and a[-1] == w[-1]:
            c = a[-1:]
            a, w, b = a[:-1], c + w[:-1], c + b
        alpha = self.alphabet
        return Sandwich(Word(alpha, a), Word(alpha, w), Word(alpha, b))

    def key(self) -> tuple:
        c = self.canonical()
        return (c.a.codes, c.w.codes, c.b.codes)

    def __str__(self):
        if self.is_singleton:
            return "{" + str(self.a + self.b) + "}"
        a = "" if not self.a else str(self.a)
        b = "" if not self.b else str(self.b)
        return f"{a}<{self.w}>{b}"


def member_word(s: Sandwich, n: int) -> Word:
    if n < 0:
        raise ValueError("sandwich index must be nonnegative")
    return s.a + s.w * n + s.b


def count_up_to(s: Sandwich, n: int) -> int:
    """Number of members of weight at most ``n``."""
    base = s.a.weight + s.b.weight
    if n < base:
        return 0
    if s.is_singleton:
        return 1
    return (n - base) // s.w.weight + 1


@dataclass(frozen=True)
class Family:
    """Index pairs (n0 + k p, m0 + k q) for all k >= 0."""

    n0: int
    m0: int
    p: int
    q: int

    def contains_first(self, n: int) -> bool:
        return n >= self.n0 and (n - self.n0) % self.p == 0


@dataclass(frozen=True)
class IntersectionResult:
    """Solutions (n, m) of s1.member(n) == s2.member(m).

    ``points`` are sporadic solutions outside ``family``.
    """

    points: tuple[tuple[int, int], ...] = ()
    family: Family | None = None

    @property
    def is_empty(self) -> bool:
        return not self.points and self.family is None

    @property
    def is_finite(self) -> bool:
        return self.family is None

    def first_indices(self) -> tuple[set[int], Family | None]:
        return {n for n, _ in self.points}, self.family

    def index_pairs(self, limit: int) -> list[tuple[int, int]]:
        """All solution pairs with first index below ``limit``."""
        out = [pt for pt in self.points if pt[0] < limit]
        if self.family is not None:
            f = self.family
            k = 0
            while f.n0 + k * f.p < limit:
                out.append((f.n0 + k * f.p, f.m0 + k * f.q))
                k += 1
        return sorted(out)


def _member_index(s: Sandwich, word: tuple[int, ...]) -> int | None:
    a, w, b = s.a.codes, s.w.codes, s.b.codes
    extra = len(word) - len(a) - len(b)
    if extra < 0 or word[:len(a)] != a or word[len(word) - len(b):] != b:
        return None
    if not w:
        return 0 if extra == 0 else None
    n, r = divmod(extra, len(w))
    if r or word[len(a):len(a) + extra] != w * n:
        return None
    return n


def intersect(s1: Sandwich, s2: Sandwich) -> IntersectionResult:
    s1.a._check(s2.a)
    if s1.is_singleton:
        m = _member_index(s2, (s1.a + s1.b).codes)
        return IntersectionResult(((0, m),) if m is not None else ())
    if s2.is_singleton:
        n = _member_index(s1, (s2.a + s2.b).codes)
        return IntersectionResult(((n, 0),) if n is not None else ())

    a, w, b = s1.a.codes, s1.w.codes, s1.b.codes
    a2, w2, b2 = s2.a.codes, s2.w.codes, s2.b.codes
    la, lw, lb = len(a), len(w), len(b)
    la2, lw2, lb2 = len(a2), len(w2), len(b2)
    g = math.gcd(lw, lw2)
    p, q = lw2 // g, lw // g
    root_sum = len(primitive_root_codes(w)[0]) + len(primitive_root_codes(w2)[0])
    # overlap of the two periodic blocks inside a common word of index n
    slack = (max(la, la2) - la) + (max(lb, lb2) - lb)
    threshold = max(0, -(-(root_sum + slack) // lw))

    solutions = []
    for n in range(threshold + p):
        total = la + lb + n * lw
        m, r = divmod(total - la2 - lb2, lw2)
        if r or m < 0:
            continue
        if a + w * n + b == a2 + w2 * m + b2:
            solutions.append((n, m))

    family = None
    tail = [(n, m) for n, m in solutions if n >= threshold]
    if tail:
        n0, m0 = tail[0]
        found = set(solutions)
        while (n0 - p, m0 - q) in found:
            n0, m0 = n0 - p, m0 - q
        family = Family(n0, m0, p, q)
        solutions = [(n, m) for n, m in solutions if not family.contains_first(n)]
    return IntersectionResult(tuple(solutions), family)


def _remove_indices(s: Sandwich, removed: set[int], family: Family | None) -> list[Sandwich]:
    """Pieces covering the members of ``s`` whose index is not removed."""
    alpha = s.alphabet
    if s.is_singleton:
        return [] if (0 in removed or (family and family.contains_first(0))) else [s]
    empty = Word(alpha)
    pieces = []

    def single(n):
        pieces.append(Sandwich(member_word(s, n), empty, empty))

    if family is None:
        start = max(removed) + 1 if removed else 0
        for n in range(start):
            if n not in removed:
                single(n)
        pieces.append(Sandwich(s.a + s.w * start, s.w, s.b))
        return pieces

    step = family.p
    for r in range(step):
        if r == family.n0 % step:
            for n in range(r, family.n0, step):
                if n not in removed:
                    single(n)
            continue
        hits = [n for n in removed if n % step == r]
        start = max(hits) + step if hits else r
        for n in range(r, start, step):
            if n not in removed:
                single(n)
        pieces.append(Sandwich(s.a + s.w * start, s.w * step, s.b))
    return pieces


@dataclass(frozen=True)
class SandwichDecomposition:
    """A finite word set plus free sandwiches, all pairwise disjoint.

    ``has_unit`` and ``has_zero`` record the monoid's identity and zero as
    elements; the empty word itself is listed in ``finite`` only when no
    sandwich already contains it.
    """

    finite: tuple[Word, ...] = ()
    sandwiches: tuple[Sandwich, ...] = ()
    has_unit: bool = False
    has_zero: bool = False

    @classmethod
    def from_pieces(cls, pieces: Iterable[Sandwich], **flags) -> SandwichDecomposition:
        finite, infinite = [], []
        for s in pieces:
            if s.is_singleton:
                finite.append(s.a + s.b)
            else:
                infinite.append(s.canonical())
        finite.sort(key=lambda u: (u.weight, len(u), u.codes))
        infinite.sort(key=lambda s: (s.w.weight, s.a.weight + s.b.weight, s.key()))
        return cls(tuple(finite), tuple(infinite), **flags)

    def pieces(self) -> list[Sandwich]:
        out = []
        for u in self.finite:
            out.append(Sandwich(u, Word(u.alphabet), Word(u.alphabet)))
        out.extend(self.sandwiches)
        return out

    def words(self, max_weight: int | None = None, max_length: int | None = None) -> list[Word]:
        """All words of the decomposition within the bounds, with repetition."""
        out = []
        for s in self.pieces():
            out.extend(s.members(max_length=max_length, max_weight=max_weight))
        return out

    def counts(self, max_degree: int) -> list[int]:
        c = [0] * (max_degree + 1)
        for u in self.words(max_weight=max_degree):
            c[u.weight] += 1
        return c

    @property
    def gamma_candidate(self) -> int:
        return len(self.sandwiches)

    def to_json(self, gamma: GammaBounds | None = None) -> dict:
        data = {
            "finite": [u.text() for u in self.finite],
            "has_unit": self.has_unit,
            "has_zero": self.has_zero,
            "sandwiches": [{"a": s.a.text(), "w": s.w.text(), "b": s.b.text()} for s in self.sandwiches],
        }
        if gamma is not None:
            data["gamma"] = {"lower": gamma.lower, "upper": gamma.upper, "exact": gamma.exact}
        return data

    @classmethod
    def from_json(cls, data: dict, alphabet: Alphabet) -> SandwichDecomposition:
        sandwiches = tuple(Sandwich(alphabet.word(s["a"]), alphabet.word(s["w"]), alphabet.word(s["b"]))
                           for s in data["sandwiches"])
        return cls(tuple(alphabet.word(u) for u in data["finite"]), sandwiches,
                   data.get("has_unit", False), data.get("has_zero", False))


def subtract(s: Sandwich, r: IntersectionResult) -> SandwichDecomposition:
    """Members of ``s`` whose index is not a first index of ``r``."""
    removed, family = r.first_indices()
    return SandwichDecomposition.from_pieces(_remove_indices(s, removed, family))


def disjointify(sandwiches: Iterable[Sandwich]) -> SandwichDecomposition:
    """Disjoint pieces with the same union.

    Each incoming sandwich is cut against every piece already placed, and
    only what lies outside all of them is appended.
    """
    placed: list[Sandwich] = []
    for incoming in sandwiches:
        remaining = [incoming]
        for piece in placed:
            nxt = []
            for part in remaining:
                hit = intersect(part, piece)
                if hit.is_empty:
                    nxt.append(part)
                else:
                    removed, family = hit.first_indices()
                    nxt.extend(_remove_indices(part, removed, family))
            remaining = nxt
            if not remaining:
                break
        placed.extend(remaining)
    return SandwichDecomposition.from_pieces(placed)


def _cycle_of(dfa: NormalWordAutomaton, comp: list[int], start: int):
    """States and letters around the simple cycle through ``start``."""
    members = set(comp)
    states, letters = [start], []
    s = start
    while True:
        nxt = [(c, t) for c, t in sorted(dfa.transitions[s].items()) if t in members]
        c, t = nxt[0]
        letters.append(c)
        if t == start:
            return states, letters
        states.append(t)
        s = t


def _acyclic_paths(dfa, start, on_cycle, prefix=()):
    """Labels of all paths from ``start`` that never enter a cycle state."""
    yield prefix
    for c, t in sorted(dfa.transitions[start].items()):
        if t not in on_cycle:
            yield from _acyclic_paths(dfa, t, on_cycle, prefix + (c,))


def extract_decomposition(dfa: NormalWordAutomaton, has_zero: bool = False,
                          has_unit: bool = True) -> SandwichDecomposition:
    """Disjoint decomposition of the accepted language of a slender automaton.

    A path of an accepted word meets at most one cycle.  It is split
    uniquely into the acyclic prefix up to the first cycle state v, some
    full turns of the cycle, a partial turn from v to u, and an acyclic
    tail that leaves the cycle at u (or stops there).
    """
    growth = classify_growth(dfa)
    if not growth.at_most_linear:
        raise ValueError(f"no sandwich decomposition for growth class {growth}")
    comps, comp_of, internal = cycle_structure(dfa)
    on_cycle = {s for comp, e in zip(comps, internal) if e for s in comp}
    alpha = dfa.alphabet

    finite: list[tuple] = []
    pieces: list[Sandwich] = []

    def walk(state, prefix):
        if state in on_cycle:
            enter_cycle(state, prefix)
            return
        finite.append(prefix)
        for c, t in sorted(dfa.transitions[state].items()):
            walk(t, prefix + (c,))

    def enter_cycle(v, prefix):
        comp = comps[comp_of[v]]
        states, letters = _cycle_of(dfa, comp, v)
        cycle_word = tuple(letters)
        for r, u in enumerate(states):
            partial = cycle_word[:r]
            tails = [()]
            for c, t in sorted(dfa.transitions[u].items()):
                if t not in on_cycle:
                    tails.extend(_acyclic_paths(dfa, t, on_cycle, (c,)))
            for tail in tails:
                pieces.append(Sandwich(Word(alpha, prefix), Word(alpha, cycle_word),
                                       Word(alpha, partial + tail)))

    walk(0, ())
    pieces.extend(Sandwich(Word(alpha, u), Word(alpha), Word(alpha)) for u in finite)
    dec = SandwichDecomposition.from_pieces(pieces, has_unit=has_unit, has_zero=has_zero)
    _assert_disjoint(dec.pieces())
    return dec


def _assert_disjoint(pieces: list[Sandwich]):
    for s1, s2 in combinations(pieces, 2):
        if not intersect(s1, s2).is_empty:
            raise AssertionError(f"pieces {s1} and {s2} overlap")


@dataclass(frozen=True)
class GammaBounds:
    lower: int
    upper: int
    witness: SandwichDecomposition = field(compare=False)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _extend_below(s: Sandwich) -> Sandwich | None:
    """The sandwich with one extra member below index 0, if the pattern allows it.

    In canonical form the prefix cannot end with ``w``, so member -1 exists
    exactly when ``b`` starts with ``w``.
    """
    c = s.canonical()
    k = len(c.w.codes)
    if c.b.codes[:k] == c.w.codes:
        return Sandwich(c.a, c.w, c.b[k:])
    return None


def _merge_pass(dec: SandwichDecomposition) -> SandwichDecomposition:
    """Fold residue families back into one sandwich and absorb finite words below a sandwich."""
    finite = list(dec.finite)
    sandwiches = [s.canonical() for s in dec.sandwiches]
    changed = True
    while changed:
        changed = False
        keys = {s.key(): s for s in sandwiches}
        for s in sandwiches:
            root, e = primitive_root_codes(s.w.codes)
            for p in range(2, e + 1):
                if e % p:
                    continue
                base = Word(s.alphabet, root * (e // p))
                for k in range(p):
                    if not s.a.endswith(base * k):
                        break
                    a0 = Word(s.alphabet, s.a.codes[:len(s.a.codes) - k * len(base.codes)])
                    group = [Sandwich(a0 + base * r, s.w, s.b).key() for r in range(p)]
                    if all(g in keys for g in group):
                        for g in group:
                            sandwiches.remove(keys[g])
                        sandwiches.append(Sandwich(a0, base, s.b).canonical())
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
        if changed:
            continue
        for i, s in enumerate(sandwiches):
            ext = _extend_below(s)
            if ext is not None and member_word(ext, 0) in finite:
                finite.remove(member_word(ext, 0))
                sandwiches[i] = ext.canonical()
                changed = True
                break
    pieces = [Sandwich(u, Word(u.alphabet), Word(u.alphabet)) for u in finite] + sandwiches
    return SandwichDecomposition.from_pieces(pieces, has_unit=dec.has_unit, has_zero=dec.has_zero)


def progression_cover_size(pattern: list[int]) -> int:
    """Fewest residue classes mod divisors of len(pattern) whose indicators sum to ``pattern``.

    ``pattern`` is one period of an eventually periodic count sequence.
    Exhaustive branch and bound: the smallest position still carrying a
    positive residual must be covered by some class through it.
    """
    period = len(pattern)
    steps = [d for d in range(1, period + 1) if period % d == 0]
    best = [sum(pattern)]

    def search(residual, used):
        top = max(residual)
        if top == 0:
            best[0] = min(best[0], used)
            return
        # each class adds at most one at any position
        if used + top >= best[0]:
            return
        first = next(i for i, v in enumerate(residual) if v)
        for d in steps:
            cls = range(first % d, period, d)
            if all(residual[i] > 0 for i in cls):
                nxt = list(residual)
                for i in cls:
                    nxt[i] -= 1
                search(nxt, used + 1)

    if max(pattern, default=0) == 0:
        return 0
    search(list(pattern), 0)
    return best[0]


def gamma_bounds(dec: SandwichDecomposition, dfa: NormalWordAutomaton) -> GammaBounds:
    """Bounds on the least number of free sandwiches in a decomposition.

    The upper bound is the sandwich count after merging; the lower bound is
    the fewest arithmetic progressions reproducing the eventual per-weight
    counts.
    """
    merged = _merge_pass(dec)
    upper = len(merged.sandwiches)
    if not dec.sandwiches:
        return GammaBounds(0, upper, merged)
    period = lcm_of(s.w.weight for s in dec.sandwiches)
    start = max([u.weight + 1 for u in dec.finite]
                + [s.a.weight + s.b.weight for s in dec.sandwiches])
    counts = count_words(dfa, start + 2 * period)
    window = counts[start:start + period]
    if counts[start + period:start + 2 * period] != window:
        raise AssertionError("counts are not periodic past the decomposition's threshold")
    # align the pattern so index i means weight congruent to i mod period
    pattern = [window[(i - start) % period] for i in range(period)]
    lower = progression_cover_size(pattern)
    return GammaBounds(lower, upper, merged)


@dataclass(frozen=True)
class MonogenicWitness:
    generator: Word
    residual: tuple[Word, ...]
    shift: int


@dataclass(frozen=True)
class MonogenicRefutation:
    reason: str

    def __bool__(self):
        return False


def check_monogenic_plus_finite(dec: SandwichDecomposition) -> MonogenicWitness | MonogenicRefutation:
    """Rewrite a one-sandwich decomposition as <g> plus a finite set.

    With a<w>b the only infinite piece, weight(a) + weight(b) must be a
    multiple s of weight(w), and a w^n b must equal g^(n+s) for a conjugate
    g of w; the powers g^0..g^(s-1) are then taken out of the finite part.
    """
    if len(dec.sandwiches) != 1:
        raise ValueError(f"expected exactly one infinite sandwich, got {len(dec.sandwiches)}")
    (s,) = dec.sandwiches
    a, w, b = s.a, s.w, s.b
    shift, r = divmod(a.weight + b.weight, w.weight)
    if r:
        return MonogenicRefutation(
            f"weight(a) + weight(b) = {a.weight + b.weight} is not a multiple of weight(w) = {w.weight}")
    if len(a) + len(b) != shift * len(w):
        return MonogenicRefutation("lengths of a, b are not a multiple of the length of w")
    n_check = shift + 2 * len(w) + 2
    for k in range(len(w)):
        g = Word(w.alphabet, w.codes[k:] + w.codes[:k])
        if all(member_word(s, n) == g * (n + shift) for n in range(n_check)):
            break
    else:
        return MonogenicRefutation(f"no rotation g of {w} gives a w^n b = g^(n+{shift})")
    low_powers = [g * t for t in range(shift)]
    finite = list(dec.finite)
    for u in low_powers:
        if u.codes and u not in finite:
            return MonogenicRefutation(f"power {u} of the generator is missing from the finite part")
        if u in finite:
            finite.remove(u)
    return MonogenicWitness(g, tuple(finite), shift)
