"""Full analysis of one diagram: badness, marking, states, gradings, oracle checks."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .badness import badness
from .diagram import Diagram
from .errors import EnumerationBudgetExceeded
from .kauffman import bound4_for, state_sum_alexander, thickness_report
from .laurent import LaurentPoly
from .oracles import fox_alexander, spanning_tree_count

CSV_COLUMNS = (
    "name",
    "crossings",
    "writhe",
    "B",
    "alternating",
    "markedEdge",
    "fallbackMarking",
    "stateCount",
    "spread",
    "bound",
    "certified",
    "alexander",
    "checksPassed",
    "error",
)


@dataclass
class AnalysisRecord:
    name: str
    pd: str
    crossings: int
    writhe: int
    B: int
    alternating: bool
    badDomains: list
    markedEdge: int
    fallbackMarking: bool
    stateCount: int | None
    deltaHistogram: dict | None
    spread: str | None
    bound: str
    certified: bool | None
    budgetExceeded: bool
    alexander: dict | None
    checks: dict = field(default_factory=dict)
    checksPassed: bool = True

    def to_json(self):
        return asdict(self)

    def csv_row(self):
        row = self.to_json()
        row["alexander"] = "" if self.alexander is None else repr(LaurentPoly.from_json(self.alexander))
        row["error"] = ""
        return [row.get(c, "") for c in CSV_COLUMNS]


def alexander_in_t(state_sum: LaurentPoly) -> LaurentPoly:
    """Convert a state sum in ``s = t^(1/2)`` to ``t`` (exponents are even for knots)."""
    if any(e % 2 for e in state_sum.terms):
        raise ValueError("state sum has odd powers of t^(1/2)")
    return LaurentPoly({e // 2: c for e, c in state_sum.terms.items()})


def certificate_holds(delta_histogram: dict, B: int, alternating: bool, fallback: bool) -> bool:
    """Recheck ``spread <= bound`` from the raw histogram (keys are delta values as strings)."""
    values = [Fraction(k) for k, v in delta_histogram.items() if v]
    spread = max(values) - min(values) if values else Fraction(0)
    if alternating:
        bound = Fraction(0)
    elif fallback:
        bound = Fraction(B, 2)
    else:
        bound = Fraction(B, 2) - 1
    return spread <= bound


def analyze(
    d: Diagram,
    name: str = "",
    budget: int | None = None,
    marking: int | None = None,
    method: str = "enumerate",
) -> AnalysisRecord:
    report = thickness_report(d, budget=budget, marking=marking, method=method)
    summary = report.summary
    checks = {}
    alexander = None

    bad = badness(d)
    checks["badCountConsistent"] = bad.B == report.B and bad.alternating == (bad.B == 0)
    checks["boundArithmetic"] = report.bound4 == bound4_for(report.B, report.alternating, report.fallback)

    trees = spanning_tree_count(d)
    checks["stateCountMatchesTrees"] = report.state_count == trees
    if summary is not None:
        hist = {str(Fraction(k, 4)): v for k, v in sorted(summary.delta_histogram.items())}
        checks["histogramTotal"] = sum(summary.delta_histogram.values()) == summary.state_count
        checks["certified"] = certificate_holds(hist, report.B, report.alternating, report.fallback)
        checks["certifiedAgrees"] = checks["certified"] == report.certified
    else:
        hist = None
    try:
        from .diagram import mark

        md = mark(d, report.marked_edge)
        delta = alexander_in_t(state_sum_alexander(md, budget=budget, method="dp"))
        fox = fox_alexander(d)
        checks["alexanderMatchesFox"] = delta.equal_up_to_unit(fox)
        checks["alexanderAtOne"] = abs(delta(1)) == 1
        checks["alexanderSymmetric"] = delta.is_symmetric()
        checks["determinantMatches"] = abs(delta(-1)) == abs(fox(-1))
        alexander = delta.to_json()
    except EnumerationBudgetExceeded:
        pass

    return AnalysisRecord(
        name=name,
        pd=d.to_pd(),
        crossings=d.n,
        writhe=d.writhe,
        B=report.B,
        alternating=report.alternating,
        badDomains=list(bad.bad_domains),
        markedEdge=report.marked_edge,
        fallbackMarking=report.fallback,
        stateCount=report.state_count,
        deltaHistogram=hist,
        spread=None if summary is None else str(summary.spread),
        bound=str(report.bound),
        certified=report.certified,
        budgetExceeded=report.budget_exceeded,
        alexander=alexander,
        checks=checks,
        checksPassed=all(checks.values()),
    )
