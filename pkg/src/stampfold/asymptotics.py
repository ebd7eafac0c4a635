"""Growth diagnostics over exact sequence tables.

Nothing here estimates the growth rate or exponents; ratios and fits
are reported as observed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .sequences import IdentityReport, SequenceTable, _report, load_reference_tables


def ratio(num: int, den: int) -> float:
    # int / int is correctly rounded for arbitrarily large operands
    return num / den


def growth_ratios(table: SequenceTable) -> list[tuple[int, float]]:
    """(n, x(n+1)/x(n)) for each consecutive pair with x(n) != 0."""
    out = []
    for n in range(table.first, table.last):
        if table[n]:
            out.append((n, ratio(table[n + 1], table[n])))
    return out


def labeled_totals(r: SequenceTable) -> SequenceTable:
    """t(n) = n r(n)."""
    return SequenceTable("t", {n: n * v for n, v in r.items()}, r.provenance)


def fekete_check(table: SequenceTable, n_max: int | None = None) -> IdentityReport:
    """x(p) x(q) <= x(p+q) for all p, q >= 1 with p + q <= n_max."""
    top = table.last if n_max is None else n_max
    lo = max(1, table.first)

    def cases():
        for s in range(2 * lo, top + 1):
            worst = max(table[p] * table[s - p] for p in range(lo, s - lo + 1))
            yield s, worst <= table[s], True

    return _report("fekete:" + table.name, "%s is superadditive in the product sense" % table.name, cases())


@dataclass(frozen=True)
class TrendPoint:
    n: int
    t_o_over_t: float
    t_ii_over_t: float
    exact_t_o: Fraction
    exact_t_ii: Fraction


def in_out_trend(n_max: int = 14, tables: Mapping[str, SequenceTable] | None = None) -> list[TrendPoint]:
    T = load_reference_tables() if tables is None else tables
    r, t_o, t_ii = T["r"], T["t_o"], T["t_ii"]
    rows = []
    for n in range(1, n_max + 1):
        t = n * r[n]
        fo, fii = Fraction(t_o[n], t), Fraction(t_ii[n], t)
        rows.append(TrendPoint(n, float(fo), float(fii), fo, fii))
    return rows


def check_in_out_trend(rows: list[TrendPoint], n_min: int = 4) -> IdentityReport:
    """Leaf-n-out share strictly falls and both-in share strictly rises."""
    pts = [p for p in rows if p.n >= n_min]
    cases = ((b.n, (b.exact_t_o < a.exact_t_o, b.exact_t_ii > a.exact_t_ii), (True, True))
             for a, b in zip(pts, pts[1:]))
    return _report("trend", "t_o/t decreasing, t_ii/t increasing", cases)


@dataclass(frozen=True)
class FitReport:
    K_odd: float
    K_even: float
    residuals: dict[int, float]
    ratio_snapshots: list[tuple[str, int, float]] = field(default_factory=list)

    def residuals_for(self, parity: int) -> list[tuple[int, float]]:
        return [(n, e) for n, e in sorted(self.residuals.items()) if n % 2 == parity]


def fit_nlogn(r_table: SequenceTable, m_table: SequenceTable, n_min: int = 3) -> FitReport:
    """Least-squares fit of r(n)/m(n) = K n ln(n) through the origin, per parity.

    Residuals are relative: r(n) / (K n ln(n) m(n)) - 1.
    """
    overlap = sorted(set(r_table.values) & set(m_table.values))
    ns = [n for n in overlap if n >= n_min]
    K = {}
    for parity in (0, 1):
        pts = [n for n in ns if n % 2 == parity]
        if len(pts) < 2:
            raise ValueError("need at least 2 points of parity %d to fit, got %d" % (parity, len(pts)))
        sxy = math.fsum(n * math.log(n) * ratio(r_table[n], m_table[n]) for n in pts)
        sxx = math.fsum((n * math.log(n)) ** 2 for n in pts)
        K[parity] = sxy / sxx
    residuals = {n: ratio(r_table[n], m_table[n]) / (K[n % 2] * n * math.log(n)) - 1 for n in ns}
    snaps = []
    for tab in (r_table, m_table):
        last = max(ns)
        snaps.append((tab.name, last - 1, ratio(tab[last], tab[last - 1])))
    return FitReport(K[1], K[0], residuals, snaps)
