"""Finite monoid presentations and their weight functions.

File format::

    # comment
    gens: x:2 y
    rels: xy = yx, yy = 0
    zero: yes          # optional, adjoins a zero without a zero relation

Relations may continue over several lines; a line belongs to the most recent
``gens:``/``rels:`` header.  ``1`` denotes the empty word and ``0`` the zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .words import Alphabet, Word, parse_codes

__all__ = [
    "ZERO",
    "Zero",
    "Relation",
    "Presentation",
    "PresentationError",
    "NonHomogeneous",
    "parse_presentation",
    "infer_weights",
    "validate_homogeneous",
    "homogeneous",
]


class Zero:
    """The distinguished zero element (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __str__(self):
        return "0"

    def __reduce__(self):
        return (Zero, ())


ZERO = Zero()


class PresentationError(ValueError):
    """Syntax or validation error, annotated with a 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word | Zero

    @property
    def is_zero(self) -> bool:
        return self.rhs is ZERO

    def balanced(self) -> bool:
        return self.is_zero or self.lhs.weight == self.rhs.weight

    def swapped(self) -> Relation:
        if self.is_zero or not self.rhs.codes:
            return self
        return Relation(self.rhs, self.lhs)

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[Relation, ...] = ()
    has_zero: bool = False
    weights_declared: bool = False

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.letters

    @property
    def weights(self) -> dict[str, int]:
        return self.alphabet.weight_map

    def with_weights(self, weights: dict[str, int]) -> Presentation:
        return self._rebind(self.alphabet.with_weights(weights), weights_declared=True)

    def reordered(self, order: list[str]) -> Presentation:
        """The same monoid with generators listed in ``order``."""
        if sorted(order) != sorted(self.generators):
            raise ValueError("order must be a permutation of the generators")
        wmap = self.weights
        return self._rebind(Alphabet(tuple(order), tuple(wmap[g] for g in order)))

    def _rebind(self, alphabet: Alphabet, **changes) -> Presentation:
        def move(word):
            if word is ZERO:
                return ZERO
            return alphabet.word(word.letters)

        rels = tuple(Relation(move(r.lhs), move(r.rhs)) for r in self.relations)
        kwargs = dict(alphabet=alphabet, relations=rels, has_zero=self.has_zero,
                      weights_declared=self.weights_declared)
        kwargs.update(changes)
        return Presentation(**kwargs)

    def max_relation_weight(self) -> int:
        return max((r.lhs.weight for r in self.relations), default=0)

    def text(self) -> str:
        """Render back into the file format."""
        gens = []
        for name, wt in zip(self.alphabet.letters, self.alphabet.weights):
            gens.append(f"{name}:{wt}" if self.weights_declared else name)
        lines = ["gens: " + " ".join(gens)]
        lines.append("rels: " + ", ".join(
            f"{r.lhs.text() or '1'} = {'0' if r.is_zero else (r.rhs.text() or '1')}"
            for r in self.relations))
        if self.has_zero and not any(r.is_zero for r in self.relations):
            lines.append("zero: yes")
        return "\n".join(lines) + "\n"


def _parse_gens(body: str, lineno: int, col0: int):
    names, declared = [], {}
    offset = 0
    for token in body.split():
        offset = body.index(token, offset)
        col = col0 + offset + 1
        offset += len(token)
        name, sep, wtext = token.partition(":")
        if sep:
            try:
                wt = int(wtext)
            except ValueError:
                raise PresentationError(f"bad weight {wtext!r} for generator {name!r}", lineno, col) from None
            if wt <= 0:
                raise PresentationError(f"weight of {name!r} must be positive, got {wt}", lineno, col)
            declared[name] = wt
        if name in names:
            raise PresentationError(f"generator {name!r} declared twice", lineno, col)
        if name in ("0", "1"):
            raise PresentationError(f"{name!r} is reserved", lineno, col)
        names.append(name)
    return names, declared


def _split_relations(chunks):
    """Yield (text, line, column) per comma-separated relation."""
    for body, lineno, col0 in chunks:
        pos = 0
        for piece in body.split(","):
            start = pos
            pos += len(piece) + 1
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                yield piece.strip(), lineno, col0 + start + lead + 1


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format; raises :class:`PresentationError`."""
    gens_line = None
    rel_chunks = []
    zero_flag = False
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        head, colon, rest = stripped.partition(":")
        key = head.strip().lower()
        if colon and key in ("gens", "rels", "zero"):
            col0 = indent + len(head) + 1
            if key == "gens":
                if gens_line is not None:
                    raise PresentationError("duplicate 'gens:' line", lineno, indent + 1)
                gens_line = (rest, lineno, col0)
            elif key == "rels":
                rel_chunks.append((rest, lineno, col0))
            else:
                value = rest.strip().lower()
                if value not in ("yes", "no", "true", "false"):
                    raise PresentationError(f"expected yes/no after 'zero:', got {rest.strip()!r}",
                                            lineno, col0 + 1)
                zero_flag = value in ("yes", "true")
            section = key
        elif section == "rels":
            rel_chunks.append((line, lineno, 0))
        elif section == "gens":
            raise PresentationError("generators must be declared on a single 'gens:' line",
                                    lineno, indent + 1)
        else:
            raise PresentationError(f"expected 'gens:' or 'rels:', got {stripped!r}", lineno, indent + 1)
    if gens_line is None:
        raise PresentationError("missing 'gens:' line")

    names, declared = _parse_gens(*gens_line)
    weights = tuple(declared.get(n, 1) for n in names)
    try:
        alphabet = Alphabet(tuple(names), weights)
    except ValueError as exc:
        raise PresentationError(str(exc), gens_line[1]) from None

    relations = []
    for rel_text, lineno, col in _split_relations(rel_chunks):
        if rel_text.count("=") != 1:
            raise PresentationError(f"expected 'u = v', got {rel_text!r}", lineno, col)
        left, right = (s.strip() for s in rel_text.split("="))
        if not left or not right:
            raise PresentationError(f"empty side in {rel_text!r}", lineno, col)
        try:
            lcodes = parse_codes(alphabet, left)
            rcodes = None if right == "0" else parse_codes(alphabet, right)
        except KeyError as exc:
            raise PresentationError(exc.args[0], lineno, col) from None
        if rcodes is None:
            if not lcodes:
                raise PresentationError("relation 1 = 0 collapses the monoid", lineno, col)
            relations.append(Relation(Word(alphabet, lcodes), ZERO))
            continue
        if left == "0":
            raise PresentationError("zero must appear on the right-hand side", lineno, col)
        if not lcodes:
            lcodes, rcodes = rcodes, lcodes
        if not lcodes:
            raise PresentationError("relation 1 = 1 is empty", lineno, col)
        relations.append(Relation(Word(alphabet, lcodes), Word(alphabet, rcodes)))

    has_zero = zero_flag or any(r.is_zero for r in relations)
    return Presentation(alphabet, tuple(relations), has_zero, weights_declared=bool(declared))


@dataclass(frozen=True)
class NonHomogeneous:
    """No strictly positive weight function balances every non-zero relation."""

    reason: str
    violations: tuple[Relation, ...] = field(default=())

    def __bool__(self):
        return False


def _balance_matrix(p: Presentation) -> list[list[int]]:
    k = len(p.alphabet)
    rows = []
    for rel in p.relations:
        if rel.is_zero:
            continue
        row = [0] * k
        for c in rel.lhs.codes:
            row[c] += 1
        for c in rel.rhs.codes:
            row[c] -= 1
        if any(row):
            rows.append(row)
    return rows


def _never_balanced(p: Presentation) -> tuple[Relation, ...]:
    """Relations one side of which has at least as many of every letter, and more of some."""
    out = []
    for rel in p.relations:
        if rel.is_zero:
            continue
        diff = [rel.lhs.codes.count(c) - rel.rhs.codes.count(c) for c in range(len(p.alphabet))]
        if any(diff) and (all(x >= 0 for x in diff) or all(x <= 0 for x in diff)):
            out.append(rel)
    return tuple(out)


def _nullspace(rows: list[list[int]], k: int) -> list[list[Fraction]]:
    """Rational kernel basis by reduced row echelon form."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * k
        vec[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fcol]
        basis.append(vec)
    return basis


def _primitive_integer(vec: list[Fraction]) -> list[int]:
    den = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    return [x // g for x in ints]


def _lex_min_positive(rows: list[list[int]], k: int) -> list[int] | None:
    """Lexicographically smallest integer d >= 1 with rows @ d == 0."""
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    a = np.array(rows, dtype=float)
    cons = [LinearConstraint(a, 0, 0)]
    lower = np.ones(k)
    upper = np.full(k, np.inf)
    for i in range(k):
        cost = np.zeros(k)
        cost[i] = 1.0
        res = milp(cost, constraints=cons, integrality=np.ones(k),
                   bounds=Bounds(lower, upper))
        if res.status != 0:
            return None
        value = round(res.x[i])
        lower[i] = upper[i] = value
    d = [int(v) for v in lower]
    if any(sum(r[j] * d[j] for j in range(k)) for r in rows):
        return None
    return d


def infer_weights(p: Presentation) -> dict[str, int] | NonHomogeneous:
    """Smallest strictly positive integer weights balancing all non-zero relations.

    With a one-dimensional solution ray the primitive integer vector is
    returned; with several independent directions, the lexicographically
    smallest positive solution in generator order.
    """
    k = len(p.alphabet)
    names = p.alphabet.letters
    rows = _balance_matrix(p)
    for rel in p.relations:
        if not rel.is_zero and not rel.rhs.codes:
            return NonHomogeneous(f"relation {rel} equates a word with the unit", (rel,))
    if not rows:
        return dict.fromkeys(names, 1)
    basis = _nullspace(rows, k)
    if not basis:
        return NonHomogeneous("only the zero weight function balances the relations", _never_balanced(p))
    if len(basis) == 1:
        vec = _primitive_integer(basis[0])
        if all(x < 0 for x in vec):
            vec = [-x for x in vec]
        if all(x > 0 for x in vec):
            return dict(zip(names, vec))
        return NonHomogeneous("the balancing weight functions are not strictly positive", _never_balanced(p))
    d = _lex_min_positive(rows, k)
    if d is None:
        return NonHomogeneous("no strictly positive weight function balances the relations", _never_balanced(p))
    return dict(zip(names, d))


def validate_homogeneous(p: Presentation, weights: dict[str, int] | None = None) -> tuple[Relation, ...]:
    """Relations that are not weight-balanced under ``weights`` (empty tuple means ok)."""
    if weights is None:
        weights = p.weights
    if any(weights[g] <= 0 for g in p.generators):
        raise ValueError("weights must be strictly positive")
    q = p.with_weights(weights) if weights != p.weights else p
    return tuple(r for r in q.relations if not r.balanced())


def homogeneous(p: Presentation) -> Presentation | NonHomogeneous:
    """Attach the weight function the analysis should use.

    Declared weights are checked as given (undeclared generators weigh 1);
    otherwise weights are inferred.
    """
    if p.weights_declared:
        bad = validate_homogeneous(p)
        if bad:
            return NonHomogeneous("declared weights do not balance every relation", bad)
        return p
    d = infer_weights(p)
    if isinstance(d, NonHomogeneous):
        return d
    return p.with_weights(d)
