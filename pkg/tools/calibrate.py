"""Measure the shipped bundle against the published budget-response claims.

Diagnostic tool for tuning the applicability reconstruction; not part of
the package.  Prints the least-squares slope of the sub-million sweep, the
full-selection objective, and selections at the narrated budgets.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from hazmit.bundle import load_shipped_bundle
from hazmit.model import EMPTY_PORTFOLIO, Portfolio, total_expected_loss
from hazmit.solver import SolveRequest, budget_sweep, solve_exact


def main() -> None:
    bundle = load_shipped_bundle()
    model = bundle.model

    t0 = time.perf_counter()
    base = total_expected_loss(model, EMPTY_PORTFOLIO)
    print(f"no-mitigation objective: {base:.4e}  ({(time.perf_counter()-t0)*1e3:.2f} ms)")

    all_sel = Portfolio.of(model.project_ids)
    full = total_expected_loss(model, all_sel)
    print(f"all-selected objective:  {full:.4e}  (target ~4.46e9 +/- 10%)")
    total_cost = sum(p.cost for p in model.projects)
    print(f"total cost of all projects: {total_cost:,.0f}")

    budgets = [100_000 * i for i in range(1, 10)]
    t0 = time.perf_counter()
    points = budget_sweep(model, budgets)
    dt = time.perf_counter() - t0
    xs = [p.budget for p in points]
    ys = [p.result.objective for p in points]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    print(f"\nsub-million sweep ({dt:.1f}s):")
    for p in points:
        sel = ",".join(str(i) for i in sorted(p.result.portfolio.selected))
        print(f"  {p.budget:>9,.0f}  {p.result.objective:.6e}  nodes={p.result.nodes_explored:<8d} [{sel}]")
    print(f"least-squares slope: {slope:.1f}  (target -2918 +/- 15% => [-3355.7, -2480.3])")

    for budget in (600_000, 700_000):
        res = solve_exact(model, SolveRequest(budget=budget))
        sel = sorted(res.portfolio.selected)
        print(f"\nbudget {budget:,}: selection {sel}  objective {res.objective:.4e}")

    big = [2e6, 5e6, 10e6, 20e6, 60e6, 120e6]
    print("\nlarger budgets:")
    for budget in big:
        t0 = time.perf_counter()
        res = solve_exact(model, SolveRequest(budget=budget))
        dt = time.perf_counter() - t0
        has20 = 20 in res.portfolio.selected
        print(f"  {budget:>13,.0f}  {res.objective:.6e}  nodes={res.nodes_explored:<9d} "
              f"{dt:6.1f}s  P20={'Y' if has20 else 'N'}")


if __name__ == "__main__":
    main()
