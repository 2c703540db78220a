"""End-to-end analysis of one presentation, as a serializable report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .automaton import build_automaton, classify_growth, count_words, generating_series
from .oracle import BudgetExceeded, census_counts, enumerate_census
from .presentation import NonHomogeneous, Presentation, homogeneous
from .rewriting import complete, default_completion_degree, obstruction_set
from .sandwich import extract_decomposition, gamma_bounds

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NON_HOMOGENEOUS = 2
EXIT_TRUNCATED = 3

DEFAULT_COUNT_DEGREE = 12


@dataclass
class AnalysisReport:
    presentation: str
    generators: list
    weights: dict | None = None
    homogeneous: bool = False
    completion: dict | None = None
    growth: str | None = None
    counts: list | None = None
    counts_source: str | None = None
    series: dict | None = None
    decomposition: dict | None = None
    diagnostics: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls(**json.loads(text))


@dataclass
class Pipeline:
    """Intermediate objects kept alongside the report (for figures, DOT, tests)."""

    presentation: Presentation
    rewriting: object = None
    automaton: object = None
    growth: object = None
    decomposition: object = None
    gamma: object = None


def analyze(p: Presentation, *, count_degree: int = DEFAULT_COUNT_DEGREE,
            completion_degree: int | None = None, stop_after: str = "gamma",
            oracle_budget: int | None = None) -> tuple[AnalysisReport, Pipeline]:
    """Run parse-level checks, completion, automaton, growth and decomposition.

    ``stop_after`` is one of "check", "complete", "growth", "gamma".
    """
    report = AnalysisReport(presentation=p.text().strip(), generators=list(p.generators))
    pipe = Pipeline(p)
    hp = homogeneous(p)
    if isinstance(hp, NonHomogeneous):
        report.diagnostics.append(f"not homogeneous: {hp.reason}")
        report.diagnostics.extend(f"unbalanced relation: {r}" for r in hp.violations)
        report.exit_code = EXIT_NON_HOMOGENEOUS
        return report, pipe
    p = pipe.presentation = hp
    report.weights = p.weights
    report.homogeneous = True
    if stop_after == "check":
        return report, pipe

    bound = default_completion_degree(p) if completion_degree is None else completion_degree
    rs = pipe.rewriting = complete(p, max_degree=bound)
    report.completion = {
        "status": "complete" if rs.is_complete else "truncated",
        "degree": None if rs.is_complete else rs.status.degree,
        "rules": [str(r) for r in rs.rules],
    }
    if not rs.is_complete:
        report.diagnostics.append(
            f"completion truncated at degree {rs.status.degree}; normal forms certified only up to that weight")
        report.exit_code = EXIT_TRUNCATED
        if stop_after != "complete":
            kwargs = {} if oracle_budget is None else {"budget": oracle_budget}
            try:
                census = enumerate_census(p, count_degree, **kwargs)
            except BudgetExceeded as exc:
                census = exc.partial
                report.diagnostics.append(str(exc))
            report.counts = census_counts(census)
            report.counts_source = "oracle"
        return report, pipe
    if stop_after == "complete":
        return report, pipe

    dfa = pipe.automaton = build_automaton(obstruction_set(rs), p.alphabet)
    growth = pipe.growth = classify_growth(dfa)
    report.growth = str(growth)
    report.counts = count_words(dfa, count_degree)
    report.counts_source = "automaton"
    series = generating_series(dfa)
    report.series = {"numerator": list(series.numerator), "denominator": list(series.denominator),
                     "text": str(series)}
    if stop_after == "growth":
        return report, pipe

    if not growth.at_most_linear:
        report.diagnostics.append(f"not linear: growth is {growth}; no sandwich decomposition")
        return report, pipe
    dec = pipe.decomposition = extract_decomposition(dfa, has_zero=p.has_zero)
    gb = pipe.gamma = gamma_bounds(dec, dfa)
    report.decomposition = gb.witness.to_json(gb)
    if not gb.exact:
        report.diagnostics.append(f"gamma only bounded: {gb.lower} <= gamma <= {gb.upper}")
    return report, pipe


def text_lines(report: AnalysisReport, keys: list[str] | None = None) -> list[str]:
    """Line-oriented ``key: value`` rendering."""
    out = []
    want = (lambda k: True) if keys is None else (lambda k: k in keys)
    if want("presentation"):
        out.append("presentation: " + report.presentation.replace("\n", "; "))
    if want("weights") and report.weights is not None:
        out.append("weights: " + " ".join(f"{g}={w}" for g, w in report.weights.items()))
    if want("homogeneous"):
        out.append(f"homogeneous: {'yes' if report.homogeneous else 'no'}")
    if want("completion") and report.completion is not None:
        c = report.completion
        status = "complete" if c["status"] == "complete" else f"truncated at degree {c['degree']}"
        out.append(f"completion: {status} ({len(c['rules'])} rules)")
        out.extend(f"rule: {r}" for r in c["rules"])
    if want("growth") and report.growth is not None:
        out.append(f"growth: {report.growth}")
    if want("counts") and report.counts is not None:
        out.append(f"counts ({report.counts_source}): " + ",".join(map(str, report.counts)))
    if want("series") and report.series is not None:
        out.append(f"series: {report.series['text']}")
    if want("decomposition") and report.decomposition is not None:
        d = report.decomposition
        out.append("finite: " + (" ".join(u or "1" for u in d["finite"]) or "(none)"))
        out.append(f"has_unit: {'yes' if d['has_unit'] else 'no'}")
        out.append(f"has_zero: {'yes' if d['has_zero'] else 'no'}")
        for s in d["sandwiches"]:
            out.append(f"sandwich: {s['a']}<{s['w']}>{s['b']}")
    if want("gamma") and report.decomposition is not None:
        g = report.decomposition["gamma"]
        out.append(f"gamma: {g['lower']}..{g['upper']} ({'exact' if g['exact'] else 'interval'})")
    out.extend(f"diagnostic: {d}" for d in report.diagnostics)
    return out
