"""Deterministic automaton of words avoiding a finite set of factors.

States are the prefixes of obstructions that contain no obstruction, linked by
Aho-Corasick failure transitions.  The language is factor-closed, so every
live state accepts and trimming amounts to dropping the dead states.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .words import Alphabet, Word

__all__ = [
    "NormalWordAutomaton",
    "GrowthClass",
    "GeneratingSeries",
    "build_automaton",
    "classify_growth",
    "count_words",
    "generating_series",
    "strongly_connected_components",
    "to_dot",
]


@dataclass(frozen=True)
class NormalWordAutomaton:
    alphabet: Alphabet
    # state i is labelled by the prefix it tracks; state 0 is initial
    labels: tuple[tuple[int, ...], ...]
    # transitions[i] maps letter code -> target state
    transitions: tuple[dict, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def edges(self):
        for s, row in enumerate(self.transitions):
            for c, t in sorted(row.items()):
                yield s, c, t

    def run(self, codes: Iterable[int]) -> int | None:
        state = 0
        for c in codes:
            state = self.transitions[state].get(c)
            if state is None:
                return None
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(word.codes) is not None


def build_automaton(obstructions: Iterable[Word], alphabet: Alphabet) -> NormalWordAutomaton:
    obstructions = [w.codes if isinstance(w, Word) else tuple(w) for w in obstructions]
    if any(not o for o in obstructions):
        raise ValueError("the empty word cannot be an obstruction")
    k = len(alphabet)
    # trie of obstruction prefixes
    children: list[dict] = [{}]
    label: list[tuple] = [()]
    terminal = [False]
    for word in obstructions:
        node = 0
        for c in word:
            nxt = children[node].get(c)
            if nxt is None:
                nxt = len(children)
                children[node][c] = nxt
                children.append({})
                label.append(label[node] + (c,))
                terminal.append(False)
            node = nxt
        terminal[node] = True

    # failure links and full transition function, breadth first
    fail = [0] * len(children)
    delta = [dict() for _ in children]
    dead = list(terminal)
    queue = deque()
    for c in range(k):
        t = children[0].get(c)
        if t is None:
            delta[0][c] = 0
        else:
            delta[0][c] = t
            fail[t] = 0
            queue.append(t)
    while queue:
        s = queue.popleft()
        dead[s] = dead[s] or dead[fail[s]]
        for c in range(k):
            t = children[s].get(c)
            if t is None:
                delta[s][c] = delta[fail[s]][c]
            else:
                delta[s][c] = t
                fail[t] = delta[fail[s]][c]
                queue.append(t)

    if dead[0]:
        raise ValueError("obstructions forbid the empty word")
    # live part, renumbered breadth first from the initial state
    order = {0: 0}
    queue = deque([0])
    rows = []
    while queue:
        s = queue.popleft()
        for c in range(k):
            t = delta[s][c]
            if not dead[t] and t not in order:
                order[t] = len(order)
                queue.append(t)
    old_of = sorted(order, key=order.get)
    for s in old_of:
        rows.append({c: order[delta[s][c]] for c in range(k) if not dead[delta[s][c]]})
    labels = tuple(label[s] for s in old_of)
    return NormalWordAutomaton(alphabet, labels, tuple(rows))


def strongly_connected_components(dfa: NormalWordAutomaton) -> list[list[int]]:
    """Tarjan's algorithm (iterative); components come out in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack = set()
    stack: list[int] = []
    result = []
    counter = 0
    succ = [sorted(set(row.values())) for row in dfa.transitions]
    for root in range(dfa.size):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for j in range(i, len(succ[v])):
                w = succ[v][j]
                if w not in index:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return result


@dataclass(frozen=True)
class GrowthClass:
    kind: str  # "finite" | "polynomial" | "exponential"
    degree: int | None = None

    @classmethod
    def parse(cls, text: str) -> GrowthClass:
        if text.startswith("polynomial:"):
            return cls("polynomial", int(text.split(":", 1)[1]))
        return cls(text)

    @property
    def at_most_linear(self) -> bool:
        return self.kind == "finite" or (self.kind == "polynomial" and self.degree == 1)

    def __str__(self):
        return f"polynomial:{self.degree}" if self.kind == "polynomial" else self.kind


FINITE = GrowthClass("finite")
EXPONENTIAL = GrowthClass("exponential")


def cycle_structure(dfa: NormalWordAutomaton):
    """Components with their internal edge counts, plus the component of each state."""
    comps = strongly_connected_components(dfa)
    comp_of = {}
    for i, comp in enumerate(comps):
        for s in comp:
            comp_of[s] = i
    internal = [0] * len(comps)
    for s, _, t in dfa.edges():
        if comp_of[s] == comp_of[t]:
            internal[comp_of[s]] += 1
    return comps, comp_of, internal


def classify_growth(dfa: NormalWordAutomaton) -> GrowthClass:
    comps, comp_of, internal = cycle_structure(dfa)
    for comp, edges in zip(comps, internal):
        if edges > len(comp):
            return EXPONENTIAL
    # Tarjan emits sinks first, so successors are scored before their sources
    best = [0] * len(comps)
    for i, comp in enumerate(comps):
        tail = 0
        for s in comp:
            for t in dfa.transitions[s].values():
                j = comp_of[t]
                if j != i:
                    tail = max(tail, best[j])
        best[i] = tail + (1 if internal[i] else 0)
    k = best[comp_of[0]]
    return FINITE if k == 0 else GrowthClass("polynomial", k)


def count_words(dfa: NormalWordAutomaton, max_degree: int) -> list[int]:
    """Accepted words per weight 0..max_degree, exact integers."""
    ws = dfa.alphabet.weights
    table = [[0] * dfa.size for _ in range(max_degree + 1)]
    table[0][0] = 1
    for n in range(max_degree + 1):
        row = table[n]
        for s, count in enumerate(row):
            if not count:
                continue
            for c, t in dfa.transitions[s].items():
                m = n + ws[c]
                if m <= max_degree:
                    table[m][t] += count
    return [sum(row) for row in table]


def _poly_str(coeffs: tuple[int, ...]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class GeneratingSeries:
    """numerator/denominator with integer coefficients, constant term first."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def expand(self, n: int) -> list[int]:
        """Power-series coefficients c_0..c_n."""
        num, den = self.numerator, self.denominator
        d0 = den[0]
        out = []
        for i in range(n + 1):
            acc = num[i] if i < len(num) else 0
            for j in range(1, min(i, len(den) - 1) + 1):
                acc -= den[j] * out[i - j]
            q, r = divmod(acc, d0)
            if r:
                raise ArithmeticError("denominator constant term does not divide")
            out.append(q)
        return out

    def __str__(self):
        num, den = _poly_str(self.numerator), _poly_str(self.denominator)
        if den == "1":
            return num
        if len([c for c in self.numerator if c]) > 1:
            num = f"({num})"
        return f"{num}/({den})"


def generating_series(dfa: NormalWordAutomaton) -> GeneratingSeries:
    """Rational series of accepted words by weight, via Cramer's rule on (I - M(t)) F = 1."""
    import sympy

    t = sympy.Symbol("t")
    n = dfa.size
    ws = dfa.alphabet.weights
    mat = sympy.eye(n)
    for s, c, u in dfa.edges():
        mat[s, u] -= t ** ws[c]
    den = mat.det(method="bareiss")
    col = mat.copy()
    col[:, 0] = sympy.ones(n, 1)
    num = col.det(method="bareiss")
    frac = sympy.cancel(sympy.expand(num) / sympy.expand(den))
    p, q = sympy.fraction(frac)
    p, q = sympy.Poly(p, t), sympy.Poly(q, t)
    pc = [int(x) for x in reversed(p.all_coeffs())]
    qc = [int(x) for x in reversed(q.all_coeffs())]
    if qc[0] < 0:
        pc, qc = [-x for x in pc], [-x for x in qc]
    return GeneratingSeries(_trim(pc), _trim(qc))


def _trim(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def to_dot(dfa: NormalWordAutomaton, name: str = "normal_words") -> str:
    """Graphviz source; states numbered breadth first from the initial state."""
    alpha = dfa.alphabet
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    for s, lab in enumerate(dfa.labels):
        text = alpha.format(lab, empty="1")
        lines.append(f'  q{s} [shape=doublecircle, label="q{s}\\n{text}"];')
    lines.append("  init -> q0;")
    for s, c, t in dfa.edges():
        lines.append(f'  q{s} -> q{t} [label="{alpha.letters[c]}:{alpha.weights[c]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def lcm_of(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out
