"""Seeded random homogeneous presentations, for cross-validation runs."""

from __future__ import annotations

import itertools
import random

from .presentation import Presentation, parse_presentation
from .rewriting import complete


def random_presentation(rng: random.Random, letters: str = "xy", max_rels: int = 3,
                        lengths=(2, 3), zero_rate: float = 0.4) -> Presentation:
    """Unit-weight presentation with length-preserving or zero relations."""
    rels = []
    for _ in range(rng.randint(1, max_rels)):
        n = rng.choice(lengths)
        u = "".join(rng.choice(letters) for _ in range(n))
        if rng.random() < zero_rate:
            rels.append(f"{u} = 0")
        else:
            v = "".join(rng.choice(letters) for _ in range(n))
            if u != v:
                rels.append(f"{u} = {v}")
    return parse_presentation(f"gens: {' '.join(letters)}\nrels: {', '.join(rels)}\n")


def random_complete_presentations(seed: int, count: int, **kwargs) -> list[Presentation]:
    """The first ``count`` random presentations whose completion terminates."""
    rng = random.Random(seed)
    out = []
    for _ in itertools.count():
        p = random_presentation(rng, **kwargs)
        if not p.relations or p.text() in {q.text() for q in out}:
            continue
        if complete(p).is_complete:
            out.append(p)
            if len(out) == count:
                return out
