"""Weight-graded Knuth-Bendix completion for homogeneous presentations.

Rules are oriented by the graded-lex order (weight, then length, then letter
order).  Because every relation is weight-balanced, a critical pair whose
overlap word has weight n only ever produces rules of weight n.  Processing
pending equations in ascending weight therefore yields a system that is
correct for all words up to the last weight processed, even when the
completion would be infinite.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .presentation import ZERO, Presentation, Zero, validate_homogeneous
from .words import Alphabet, Word

__all__ = [
    "Rule",
    "Complete",
    "TruncatedAt",
    "RewritingSystem",
    "complete",
    "normal_form",
    "obstruction_set",
    "critical_pairs",
    "unresolved_pairs",
    "default_completion_degree",
]


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word | Zero

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class Complete:
    def __str__(self):
        return "complete"


@dataclass(frozen=True)
class TruncatedAt:
    degree: int

    def __str__(self):
        return f"truncated at degree {self.degree}"


def _reduce(table: dict, lengths: list[int], codes: tuple[int, ...]):
    stack: list[int] = []
    todo = list(reversed(codes))
    while todo:
        stack.append(todo.pop())
        size = len(stack)
        for m in lengths:
            if m > size:
                break
            rhs = table.get(tuple(stack[size - m:]))
            if rhs is not None:
                if rhs is ZERO:
                    return ZERO
                del stack[size - m:]
                todo.extend(reversed(rhs))
                break
    return tuple(stack)


def _overlaps(l1: tuple, l2: tuple):
    """Proper overlaps: a nonempty suffix of l1 equal to a prefix of l2."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield k


def _pair(l1, r1, l2, r2, k):
    word = l1 + l2[k:]
    left = ZERO if r1 is ZERO else r1 + l2[k:]
    right = ZERO if r2 is ZERO else l1[:-k] + r2
    return word, left, right


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: Alphabet
    rules: tuple[Rule, ...]
    status: Complete | TruncatedAt
    _table: dict = field(init=False, repr=False, compare=False, hash=False)
    _lengths: list = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table = {r.lhs.codes: (ZERO if r.rhs is ZERO else r.rhs.codes) for r in self.rules}
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_lengths", sorted({len(k) for k in table}))

    @property
    def is_complete(self) -> bool:
        return isinstance(self.status, Complete)

    def certified_for(self, word: Word) -> bool:
        """Whether normal forms of ``word`` are guaranteed unique."""
        return self.is_complete or word.weight <= self.status.degree

    def reduce_codes(self, codes: tuple[int, ...]):
        return _reduce(self._table, self._lengths, codes)


def default_completion_degree(p: Presentation) -> int:
    return 4 * p.max_relation_weight()


def _graded_key(alphabet: Alphabet, codes):
    return (alphabet.code_weight(codes), len(codes), codes)


def complete(p: Presentation, weights: dict[str, int] | None = None,
             max_degree: int | None = None) -> RewritingSystem:
    """Complete ``p`` up to weight ``max_degree``.

    The result is ``Complete`` when every critical pair of the final rule set
    is joinable, otherwise ``TruncatedAt(max_degree)``.
    """
    if weights is not None:
        p = p.with_weights(weights)
    bad = validate_homogeneous(p)
    if bad:
        raise ValueError(f"presentation is not homogeneous: {', '.join(map(str, bad))}")
    alphabet = p.alphabet
    weight = alphabet.code_weight
    bound = default_completion_degree(p) if max_degree is None else max_degree

    table: dict[tuple, tuple | Zero] = {}
    lengths: list[int] = []
    pending: dict[int, list] = defaultdict(list)
    seen: set = set()
    for rel in p.relations:
        rhs = ZERO if rel.is_zero else rel.rhs.codes
        pending[weight(rel.lhs.codes)].append((rel.lhs.codes, rhs))

    def reduce(codes):
        return codes if codes is ZERO else _reduce(table, lengths, codes)

    def add_pairs(lhs):
        for other in list(table):
            for l1, l2 in ((lhs, other), (other, lhs)):
                for k in _overlaps(l1, l2):
                    key = (l1, l2, k)
                    if key in seen:
                        continue
                    seen.add(key)
                    word, left, right = _pair(l1, table[l1], l2, table[l2], k)
                    pending[weight(word)].append((left, right))

    while pending and min(pending) <= bound:
        degree = min(pending)
        equations = pending.pop(degree)
        added = []
        for u, v in equations:
            u, v = reduce(u), reduce(v)
            if u == v:
                continue
            if u is ZERO:
                lhs, rhs = v, ZERO
            elif v is ZERO:
                lhs, rhs = u, ZERO
            elif _graded_key(alphabet, u) > _graded_key(alphabet, v):
                lhs, rhs = u, v
            else:
                lhs, rhs = v, u
            table[lhs] = rhs
            if len(lhs) not in lengths:
                lengths.append(len(lhs))
                lengths.sort()
            # only rules of this same weight can have the new head inside their rhs
            for old in added:
                if table[old] is not ZERO:
                    table[old] = reduce(table[old])
            added.append(lhs)
        for lhs in added:
            add_pairs(lhs)

    leftover = [eq for eqs in pending.values() for eq in eqs]
    joinable = all(reduce(u) == reduce(v) for u, v in leftover)
    status = Complete() if joinable else TruncatedAt(bound)

    def as_word(codes):
        return ZERO if codes is ZERO else Word(alphabet, codes)

    ordered = sorted(table, key=lambda c: _graded_key(alphabet, c))
    rules = tuple(Rule(Word(alphabet, lhs), as_word(table[lhs])) for lhs in ordered)
    return RewritingSystem(alphabet, rules, status)


def normal_form(rs: RewritingSystem, word: Word) -> Word | Zero:
    """Exhaustive leftmost-innermost rewriting; ZERO once a zero rule fires.

    For truncated systems the answer is only certified when
    ``rs.certified_for(word)`` holds.
    """
    if word.alphabet != rs.alphabet:
        raise ValueError("word and rewriting system use different alphabets")
    out = rs.reduce_codes(word.codes)
    return ZERO if out is ZERO else Word(rs.alphabet, out)


def obstruction_set(rs: RewritingSystem) -> frozenset[Word]:
    """Rule heads; a word is normal iff it avoids all of them as factors."""
    if not rs.is_complete:
        raise ValueError(f"obstruction set requested from a system {rs.status}")
    return frozenset(r.lhs for r in rs.rules)


def critical_pairs(rs: RewritingSystem):
    """All overlap critical pairs as (overlap word, one-step left, one-step right)."""
    table = rs._table
    for l1 in table:
        for l2 in table:
            for k in _overlaps(l1, l2):
                yield _pair(l1, table[l1], l2, table[l2], k)


def unresolved_pairs(rs: RewritingSystem) -> list:
    """Critical pairs whose two sides have different normal forms."""
    bad = []
    for word, left, right in critical_pairs(rs):
        nl = left if left is ZERO else rs.reduce_codes(left)
        nr = right if right is ZERO else rs.reduce_codes(right)
        if nl != nr:
            bad.append((word, nl, nr))
    return bad
