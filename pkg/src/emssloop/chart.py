"""ASCII dot charts of spectral sequence pages."""
from __future__ import annotations


class ChartBudgetError(ValueError):
    pass


def render_chart(page, pmax: int | None = None, qwindow: tuple[int, int] | None = None,
                 labels: bool = False, budget: int = 10_000) -> str:
    """Grid with ``p`` increasing to the right and ``q`` decreasing downward.

    One dot per basis monomial; with ``labels`` each dot carries its monomial.
    """
    P = page.presentation
    pmax = page.pmax if pmax is None else pmax
    qw = qwindow if qwindow is not None else (-float("inf"), float("inf"))
    cells: dict = {}
    if P.generators:
        monos = P.enumerate_monomials(*P._bigradings([(0, pmax), qw]))
    else:
        monos = [()]
    for m in sorted(monos):
        cells.setdefault(P.bidegree_of(m) if m else (0, 0), []).append(m)
    if qwindow is not None:
        qlo, qhi = qwindow
    elif cells:
        qlo, qhi = min(q for _, q in cells), max(q for _, q in cells)
    else:
        qlo, qhi = 0, 0
    ncells = (pmax + 1) * (qhi - qlo + 1)
    if ncells > budget:
        raise ChartBudgetError(f"chart needs {ncells} cells, budget is {budget}")

    def text(p, q):
        ms = cells.get((p, q), [])
        if labels:
            return " ".join("•" + P.format_monomial(m) for m in ms)
        return "•" * len(ms)

    widths = [max([len(text(p, q)) for q in range(qlo, qhi + 1)] + [len(str(p)), 1])
              for p in range(pmax + 1)]
    qw_ = max(len(str(qlo)), len(str(qhi)), 1)
    lines = []
    for q in range(qhi, qlo - 1, -1):
        row = [text(p, q).ljust(widths[p]) for p in range(pmax + 1)]
        lines.append(f"{str(q).rjust(qw_)} | " + " ".join(row).rstrip())
    lines.append(" " * qw_ + " +-" + "-".join("-" * w for w in widths))
    lines.append(" " * qw_ + "   " + " ".join(str(p).ljust(widths[p]) for p in range(pmax + 1)).rstrip())
    lines.append(" " * qw_ + "   p ->   (q decreasing downward)")
    return "\n".join(lines)
