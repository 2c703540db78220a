"""Figures for growth reports."""

from __future__ import annotations

from itertools import accumulate

from matplotlib.figure import Figure
from matplotlib.ticker import MaxNLocator

from .sandwich import SandwichDecomposition, count_up_to


def piece_counts(dec: SandwichDecomposition, max_degree: int) -> list[tuple[str, list[int]]]:
    """Per-weight member counts of the finite part and of each sandwich."""
    rows = []
    finite = [0] * (max_degree + 1)
    for u in dec.finite:
        if u.weight <= max_degree:
            finite[u.weight] += 1
    rows.append(("finite", finite))
    for s in dec.sandwiches:
        counts = [count_up_to(s, n) - (count_up_to(s, n - 1) if n else 0) for n in range(max_degree + 1)]
        rows.append((str(s), counts))
    return rows


def growth_figure(counts: list[int], decomposition: SandwichDecomposition | None = None,
                  title: str | None = None) -> Figure:
    """Bars of c_n (stacked by sandwich when a decomposition is given) and the cumulative growth."""
    fig = Figure(figsize=(7, 4))
    ax = fig.add_subplot(111)
    xs = list(range(len(counts)))
    if decomposition is None:
        ax.bar(xs, counts, color="0.55", label="c_n")
    else:
        bottom = [0] * len(counts)
        for label, row in piece_counts(decomposition, len(counts) - 1):
            if not any(row):
                continue
            ax.bar(xs, row, bottom=bottom, label=label)
            bottom = [b + r for b, r in zip(bottom, row)]
    ax.set_xlabel("weight n")
    ax.set_ylabel("elements of weight n")
    ax.set_xticks(xs)
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    twin = ax.twinx()
    twin.plot(xs, list(accumulate(counts)), color="k", marker="o", ms=3, lw=1, label="weight <= n")
    twin.set_ylabel("elements of weight <= n")
    handles, labels = ax.get_legend_handles_labels()
    h2, l2 = twin.get_legend_handles_labels()
    ax.legend(handles + h2, labels + l2, loc="upper left", fontsize=8, frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_growth_figure(path, counts, decomposition=None, title=None):
    fig = growth_figure(counts, decomposition, title)
    fig.savefig(path, dpi=120)
    return path
