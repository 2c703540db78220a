"""Words over a weighted alphabet.

A word is stored as a tuple of letter codes (indices into the alphabet), so
that the lexicographic order on codes is the lexicographic order induced by
the declared letter order.  Most algorithms in the package work on these raw
code tuples; :class:`Word` is the value object used at API boundaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "Word",
    "weight",
    "primitive_root",
    "conjugacy_offset",
    "compare_graded_lex",
    "graded_lex_key",
    "rotate",
    "smallest_period",
]

_LETTER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class AlphabetMismatch(ValueError):
    """Raised when two words over different alphabets are combined."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of letters with a positive weight per letter."""

    letters: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) != len(self.weights):
            raise ValueError("letters and weights differ in length")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in {self.letters}")
        for name in self.letters:
            if not _LETTER_RE.match(name):
                raise ValueError(f"invalid letter name {name!r}")
        for name, wt in zip(self.letters, self.weights):
            if not isinstance(wt, int) or wt <= 0:
                raise ValueError(f"weight of {name!r} must be a positive integer, got {wt!r}")

    @classmethod
    def unit(cls, letters: Iterable[str]) -> Alphabet:
        letters = tuple(letters)
        return cls(letters, (1,) * len(letters))

    @classmethod
    def from_mapping(cls, weights: dict[str, int]) -> Alphabet:
        return cls(tuple(weights), tuple(weights.values()))

    def __len__(self):
        return len(self.letters)

    @property
    def weight_map(self) -> dict[str, int]:
        return dict(zip(self.letters, self.weights))

    @property
    def compact(self) -> bool:
        """True when every letter is a single character, so words need no separators."""
        return all(len(name) == 1 for name in self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise KeyError(f"letter {letter!r} not in alphabet {self.letters}") from None

    def with_weights(self, weights: dict[str, int]) -> Alphabet:
        return Alphabet(self.letters, tuple(weights[name] for name in self.letters))

    def code_weight(self, codes: Sequence[int]) -> int:
        ws = self.weights
        return sum(ws[c] for c in codes)

    def word(self, text: str | Sequence[str] = "") -> Word:
        """Build a word from text ("xy", "a1.b2", "1" for the empty word) or a letter list."""
        if isinstance(text, str):
            return Word(self, parse_codes(self, text))
        return Word(self, tuple(self.index(name) for name in text))

    def format(self, codes: Sequence[int], empty: str = "") -> str:
        if not codes:
            return empty
        sep = "" if self.compact else "."
        return sep.join(self.letters[c] for c in codes)


def parse_codes(alphabet: Alphabet, text: str) -> tuple[int, ...]:
    """Split a concatenation of generator names into letter codes.

    Pieces separated by "." are looked up whole first; otherwise each
    character must be a single-character generator.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    codes: list[int] = []
    lookup = {name: i for i, name in enumerate(alphabet.letters)}
    for piece in text.split("."):
        if piece in lookup:
            codes.append(lookup[piece])
            continue
        if not piece:
            raise KeyError(f"empty generator name in {text!r}")
        for ch in piece:
            if ch not in lookup:
                raise KeyError(f"undeclared generator {ch!r} in {text!r}")
            codes.append(lookup[ch])
    return tuple(codes)


@dataclass(frozen=True)
class Word:
    """An element of the free monoid over ``alphabet``."""

    alphabet: Alphabet
    codes: tuple[int, ...] = ()

    def _check(self, other: Word):
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if self.alphabet is not other.alphabet and self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.letters} vs {other.alphabet.letters}")

    def __len__(self):
        return len(self.codes)

    def __bool__(self):
        return bool(self.codes)

    def __add__(self, other: Word) -> Word:
        self._check(other)
        return Word(self.alphabet, self.codes + other.codes)

    def __mul__(self, n: int) -> Word:
        if n < 0:
            raise ValueError("negative power")
        return Word(self.alphabet, self.codes * n)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.codes[item])
        return self.alphabet.letters[self.codes[item]]

    def __str__(self):
        return self.alphabet.format(self.codes, empty="1")

    def __repr__(self):
        return f"Word({str(self)!r})"

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[c] for c in self.codes)

    @property
    def weight(self) -> int:
        return self.alphabet.code_weight(self.codes)

    def text(self) -> str:
        """Serialized form: "" for the empty word, "." separators when needed."""
        return self.alphabet.format(self.codes)

    def startswith(self, other: Word) -> bool:
        self._check(other)
        return self.codes[: len(other.codes)] == other.codes

    def endswith(self, other: Word) -> bool:
        self._check(other)
        return not other.codes or self.codes[-len(other.codes):] == other.codes

    def find(self, other: Word, start: int = 0) -> int:
        self._check(other)
        return find_factor(self.codes, other.codes, start)

    def __contains__(self, other: Word) -> bool:
        return self.find(other) >= 0


def find_factor(hay: Sequence[int], needle: Sequence[int], start: int = 0) -> int:
    n, m = len(hay), len(needle)
    for i in range(start, n - m + 1):
        if tuple(hay[i:i + m]) == tuple(needle):
            return i
    return -1


def weight(word: Word) -> int:
    return word.weight


def _failure(seq: Sequence) -> list[int]:
    fail = [0] * len(seq)
    k = 0
    for i in range(1, len(seq)):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    return fail


def smallest_period(seq: Sequence) -> int:
    """Smallest p > 0 with seq[i] == seq[i + p] for all valid i."""
    if not seq:
        return 0
    return len(seq) - _failure(seq)[-1]


def primitive_root_codes(codes: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    n = len(codes)
    p = smallest_period(codes)
    if n % p:
        return codes, 1
    return codes[:p], n // p


def primitive_root(word: Word) -> tuple[Word, int]:
    """Return ``(root, k)`` with ``word == root * k`` and ``root`` primitive."""
    if not word.codes:
        raise ValueError("the empty word has no primitive root")
    root, k = primitive_root_codes(word.codes)
    return Word(word.alphabet, root), k


def rotate(word: Word, k: int) -> Word:
    """Cyclic shift moving the first ``k`` letters to the end."""
    if not word.codes:
        return word
    k %= len(word.codes)
    return Word(word.alphabet, word.codes[k:] + word.codes[:k])


def conjugacy_offset(u: Word, v: Word) -> int | None:
    """Smallest ``k`` with ``rotate(u, k) == v``, or None when not conjugate."""
    u._check(v)
    if len(u) != len(v):
        return None
    n = len(u.codes)
    if n == 0:
        return 0
    doubled = u.codes + u.codes
    k = find_factor(doubled, v.codes)
    return k if 0 <= k < n else None


def graded_lex_key(word: Word) -> tuple:
    return (word.weight, len(word.codes), word.codes)


def compare_graded_lex(u: Word, v: Word) -> int:
    """Three-way comparison: weight first, then length, then letter order."""
    u._check(v)
    ku, kv = graded_lex_key(u), graded_lex_key(v)
    return (ku > kv) - (ku < kv)
