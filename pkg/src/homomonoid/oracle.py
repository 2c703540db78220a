"""Brute-force congruence classes, degree by degree.

Relations preserve weight, so the words of a fixed weight form a closed
world: two words are congruent iff they are joined by a chain of single
relation replacements (in either direction) inside that weight.  A class is
the zero class iff one of its members contains the left side of a zero
relation as a factor.  Nothing here uses rewriting systems.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .presentation import Presentation

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, degree: int, words: int, partial: DegreeCensus):
        self.degree = degree
        self.words = words
        self.partial = partial
        super().__init__(f"word budget exceeded at degree {degree} ({words} words enumerated)")


@dataclass(frozen=True)
class DegreeLevel:
    degree: int
    classes: tuple[frozenset, ...]
    zero_class: frozenset

    @property
    def count(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class DegreeCensus:
    presentation: Presentation
    levels: tuple[DegreeLevel, ...]

    @property
    def max_degree(self) -> int:
        return len(self.levels) - 1

    def counts(self) -> list[int]:
        return [lvl.count for lvl in self.levels]

    def class_of(self, codes: tuple[int, ...]) -> frozenset | None:
        """The non-zero class containing ``codes``; None if it is zero."""
        lvl = self.levels[self.presentation.alphabet.code_weight(codes)]
        for cls in lvl.classes:
            if codes in cls:
                return cls
        return None


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if ri > rj:
                ri, rj = rj, ri
            self.parent[rj] = ri


def _has_factor(word, factors_by_len):
    n = len(word)
    for m, factors in factors_by_len.items():
        for i in range(n - m + 1):
            if word[i:i + m] in factors:
                return True
    return False


def enumerate_census(p: Presentation, max_degree: int, budget: int = DEFAULT_BUDGET,
                     order_seed: int | None = None) -> DegreeCensus:
    """Congruence classes of all words of weight 0..max_degree.

    ``order_seed`` shuffles the enumeration order; the partition must not
    depend on it.
    """
    alphabet = p.alphabet
    ws = alphabet.weights
    moves = []
    zero_heads: dict[int, set] = {}
    for rel in p.relations:
        if rel.is_zero:
            zero_heads.setdefault(len(rel.lhs.codes), set()).add(rel.lhs.codes)
        elif rel.lhs.codes != rel.rhs.codes:
            # edges are undirected; one orientation enumerates each once
            moves.append((rel.lhs.codes, rel.rhs.codes))
    rng = random.Random(order_seed) if order_seed is not None else None

    by_degree: list[list[tuple[int, ...]]] = [[()]]
    levels = []
    total = 0
    for n in range(max_degree + 1):
        if n > 0:
            words = []
            for c, wt in enumerate(ws):
                if wt <= n:
                    words.extend(w + (c,) for w in by_degree[n - wt])
            by_degree.append(words)
        words = list(by_degree[n])
        total += len(words)
        if total > budget:
            raise BudgetExceeded(n, total, DegreeCensus(p, tuple(levels)))
        if rng is not None:
            rng.shuffle(words)
        index = {w: i for i, w in enumerate(words)}
        dsu = _DisjointSet(len(words))
        for i, word in enumerate(words):
            for src, dst in moves:
                m = len(src)
                for pos in range(len(word) - m + 1):
                    if word[pos:pos + m] == src:
                        dsu.union(i, index[word[:pos] + dst + word[pos + m:]])
        groups: dict[int, list] = {}
        for i, word in enumerate(words):
            groups.setdefault(dsu.find(i), []).append(word)
        classes, zero = [], []
        for members in groups.values():
            if any(_has_factor(w, zero_heads) for w in members):
                zero.extend(members)
            else:
                classes.append(frozenset(members))
        classes.sort(key=lambda cls: min(cls))
        levels.append(DegreeLevel(n, tuple(classes), frozenset(zero)))
    return DegreeCensus(p, tuple(levels))


def census_counts(census: DegreeCensus) -> list[int]:
    """c_0..c_N: non-zero classes per weight; the unit counts at weight 0."""
    return census.counts()
