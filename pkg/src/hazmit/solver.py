"""Exact and heuristic minimization of expected loss under a budget.

The objective decomposes into per-(hazard, consequence) terms

    loss(x) = sum_t  base_t * prod_{k selected} gain_k[t]

with every gain factor in (0, 1].  The solver exploits two consequences of
that form: deselecting a project can never reduce the loss (monotonicity),
and treating all undecided projects as selected yields a valid lower bound
on any completion.

Three entry points: ``solve_enumerate`` (brute-force oracle, small
instances), ``greedy_incumbent`` (cost-effectiveness heuristic, warm
start), and ``solve_exact`` (depth-first branch-and-bound).  All are
deterministic: ties in the objective (1e-9 relative) are broken by lower
portfolio cost, then by lexicographically smallest sorted id list.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, InfeasibleError, UsageError
from .model import (
    CONSEQUENCE_KINDS,
    REL_TOL,
    Portfolio,
    RiskModel,
    effective_factors,
    per_hazard_loss,
    portfolio_cost,
    total_expected_loss,
)

logger = logging.getLogger(__name__)

#: Hard cap on free projects for exhaustive enumeration.
ENUMERATE_MAX_FREE = 25

#: Refresh interval for drift control in the Gray-code walk.
_REFRESH_EVERY = 1 << 18


@dataclass(frozen=True)
class SolveRequest:
    """Budget plus what-if constraints for a single solve."""

    budget: float
    locked: frozenset[int] = frozenset()
    banned: frozenset[int] = frozenset()
    time_limit: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "locked", frozenset(int(i) for i in self.locked))
        object.__setattr__(self, "banned", frozenset(int(i) for i in self.banned))
        if self.budget < 0:
            raise UsageError("budget must be >= 0", field="budget")
        overlap = self.locked & self.banned
        if overlap:
            raise UsageError(
                f"projects {sorted(overlap)} are both locked and banned",
                field="locked",
            )
        if self.time_limit is not None and self.time_limit <= 0:
            raise UsageError("time_limit must be positive", field="time_limit")


@dataclass(frozen=True)
class SolveResult:
    portfolio: Portfolio
    objective: float
    spent: float
    per_hazard_loss: dict[str, float]
    optimal: bool
    nodes_explored: int
    wall_time: float


@dataclass(frozen=True)
class SweepPoint:
    budget: float
    result: SolveResult


# ---------------------------------------------------------------------------
# Vectorized evaluation
# ---------------------------------------------------------------------------

class Evaluator:
    """Flattened term representation of a model for fast re-evaluation.

    Term ``t = i * n_kinds + j`` carries ``p_i * w_j * f_ij``; each project
    contributes one multiplicative gain vector over terms.  Built once per
    model and reused across solves (read-only afterwards).
    """

    def __init__(self, model: RiskModel):
        self.model = model
        n_kinds = len(CONSEQUENCE_KINDS)
        self.n_terms = len(model.hazards) * n_kinds

        base = np.empty(self.n_terms)
        for i, hazard in enumerate(model.hazards):
            for j, kind in enumerate(CONSEQUENCE_KINDS):
                base[i * n_kinds + j] = (
                    hazard.baseline_probability
                    * model.weights[kind]
                    * hazard.baseline_consequences[kind]
                )
        self.base = base

        self.gain = {}
        for project in model.projects:
            row = np.empty(self.n_terms)
            for i, hazard in enumerate(model.hazards):
                fac = effective_factors(model, project.id, hazard.id)
                for j, kind in enumerate(CONSEQUENCE_KINDS):
                    row[i * n_kinds + j] = fac.alpha * fac.beta_per_consequence[kind]
            self.gain[project.id] = row
        self.cost = {p.id: p.cost for p in model.projects}

    def term_vector(self, selected: Iterable[int]) -> np.ndarray:
        """Term-wise loss vector for a selection, id-sorted for determinism."""
        vec = self.base.copy()
        for pid in sorted(selected):
            vec *= self.gain[pid]
        return vec

    def loss(self, selected: Iterable[int]) -> float:
        return float(self.term_vector(selected).sum())

    def cost_of(self, selected: Iterable[int]) -> float:
        return float(sum(self.cost[pid] for pid in sorted(selected)))


class _Incumbent:
    """Best-so-far portfolio under the (objective, cost, ids) tie-break."""

    def __init__(self):
        self.objective = float("inf")
        self.cost = float("inf")
        self.ids: tuple[int, ...] | None = None

    def offer(self, objective: float, cost: float, ids: tuple[int, ...]) -> bool:
        if self.ids is None:
            better = True
        elif objective < self.objective * (1.0 - REL_TOL):
            better = True
        elif objective <= self.objective * (1.0 + REL_TOL):
            better = (cost, ids) < (self.cost, self.ids)
        else:
            better = False
        if better:
            self.objective = objective
            self.cost = cost
            self.ids = ids
        return better


def _split_projects(model: RiskModel, request: SolveRequest):
    """Validate the request and return (locked, banned, free ids)."""
    all_ids = set(model.project_ids)
    for pid in request.locked | request.banned:
        model.project(pid)  # raises IdentifierError on unknown ids
    locked = frozenset(request.locked)
    banned = frozenset(request.banned)
    free = sorted(all_ids - locked - banned)
    locked_cost = sum(model.project(pid).cost for pid in sorted(locked))
    if locked_cost > request.budget:
        raise InfeasibleError(
            f"locked projects cost {locked_cost:.2f}, exceeding budget "
            f"{request.budget:.2f}"
        )
    return locked, banned, free


def _build_result(
    model: RiskModel,
    selected: Iterable[int],
    optimal: bool,
    nodes: int,
    started: float,
) -> SolveResult:
    portfolio = Portfolio.of(selected)
    breakdown = per_hazard_loss(model, portfolio)
    return SolveResult(
        portfolio=portfolio,
        objective=sum(breakdown.values()),
        spent=portfolio_cost(model, portfolio),
        per_hazard_loss=breakdown,
        optimal=optimal,
        nodes_explored=nodes,
        wall_time=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def solve_enumerate(model: RiskModel, request: SolveRequest) -> SolveResult:
    """Exhaustive search over all feasible selections of the free projects.

    Walks subsets in Gray-code order so each step is a single multiply (or
    divide) of the term vector; candidates are re-evaluated exactly before
    they can become the incumbent, so accumulated drift never decides the
    winner.  Intended as the oracle for ``solve_exact``; capacity-limited
    to ``ENUMERATE_MAX_FREE`` free projects.
    """
    started = time.perf_counter()
    locked, _banned, free = _split_projects(model, request)
    if len(free) > ENUMERATE_MAX_FREE:
        raise CapacityError(
            f"{len(free)} free projects exceed the enumeration cap of "
            f"{ENUMERATE_MAX_FREE}"
        )

    ev = Evaluator(model)
    budget = request.budget
    cost_slack = 1e-6 * (1.0 + budget)

    best = _Incumbent()

    def consider_exact(member_ids: frozenset[int]):
        ids = tuple(sorted(member_ids | locked))
        cost = ev.cost_of(ids)
        if cost > budget:
            return
        best.offer(ev.loss(ids), cost, ids)

    # Locked-only subset first (always feasible: checked in _split_projects).
    consider_exact(frozenset())

    n = len(free)
    vec = ev.term_vector(locked)
    cost = ev.cost_of(locked)
    member = [False] * n
    current: set[int] = set()
    screen = best.objective  # locked-only objective

    total = 1 << n
    for i in range(1, total):
        if i % _REFRESH_EVERY == 0:
            vec = ev.term_vector(locked | current)
            cost = ev.cost_of(locked | current)
        j = (i & -i).bit_length() - 1
        pid = free[j]
        if member[j]:
            vec = vec / ev.gain[pid]
            cost -= ev.cost[pid]
            member[j] = False
            current.discard(pid)
        else:
            vec = vec * ev.gain[pid]
            cost += ev.cost[pid]
            member[j] = True
            current.add(pid)
        if cost > budget + cost_slack:
            continue
        obj = float(vec.sum())
        if obj <= screen * (1.0 + REL_TOL):
            consider_exact(frozenset(current))
            screen = best.objective

    assert best.ids is not None
    return _build_result(model, best.ids, True, total, started)


# ---------------------------------------------------------------------------
# Greedy heuristic
# ---------------------------------------------------------------------------

def greedy_incumbent(model: RiskModel, request: SolveRequest) -> SolveResult:
    """Warm-start heuristic: repeatedly add the affordable free project with
    the highest loss-reduction per dollar until no addition improves."""
    started = time.perf_counter()
    locked, _banned, free = _split_projects(model, request)

    ev = Evaluator(model)
    selected = set(locked)
    vec = ev.term_vector(selected)
    obj = float(vec.sum())
    spent = ev.cost_of(selected)
    remaining = sorted(free)
    nodes = 0

    while True:
        best_pid = None
        best_ratio = 0.0
        best_obj = None
        for pid in remaining:
            if spent + ev.cost[pid] > request.budget:
                continue
            nodes += 1
            cand = float((vec * ev.gain[pid]).sum())
            ratio = (obj - cand) / ev.cost[pid]
            if ratio > best_ratio:
                best_pid, best_ratio, best_obj = pid, ratio, cand
        if best_pid is None:
            break
        selected.add(best_pid)
        remaining.remove(best_pid)
        vec = vec * ev.gain[best_pid]
        obj = best_obj
        spent += ev.cost[best_pid]

    return _build_result(model, selected, False, nodes, started)


# ---------------------------------------------------------------------------
# Lower bound
# ---------------------------------------------------------------------------

def lower_bound(
    model: RiskModel,
    fixed_in: Iterable[int] = (),
    fixed_out: Iterable[int] = (),
) -> float:
    """Loss with every undecided project treated as selected.

    Valid for any completion consistent with the fixing: deselecting a
    project can only raise the loss, so no completion can do better.  The
    budget is deliberately ignored.
    """
    fixed_in = frozenset(int(i) for i in fixed_in)
    fixed_out = frozenset(int(i) for i in fixed_out)
    if fixed_in & fixed_out:
        raise UsageError("fixed_in and fixed_out overlap", field="fixed_in")
    for pid in fixed_in | fixed_out:
        model.project(pid)
    selection = set(model.project_ids) - fixed_out
    return total_expected_loss(model, Portfolio.of(selection))


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------

class _TimeUp(Exception):
    pass


def solve_exact(model: RiskModel, request: SolveRequest) -> SolveResult:
    """Depth-first branch-and-bound over the free projects.

    Variables are ordered once by descending standalone loss-reduction per
    dollar (measured against the empty portfolio) and branched select-first.
    A node is pruned when its committed cost exceeds the budget or when a
    valid lower bound reaches the incumbent (1e-9 relative slack).  Two
    bounds are combined: the all-undecided-selected bound, and a budget-aware
    refinement that multiplies in only as many of the smallest per-term
    factors as the remaining budget could possibly pay for.

    Returns the optimum under the tie-break rule; when a time limit is set
    and expires, returns the best incumbent flagged ``optimal=False``.
    """
    started = time.perf_counter()
    locked, _banned, free = _split_projects(model, request)
    ev = Evaluator(model)
    budget = request.budget
    deadline = None
    if request.time_limit is not None:
        deadline = started + request.time_limit

    # Standalone reduction ratios from the empty portfolio, computed once.
    base_obj = float(ev.base.sum())
    def ratio(pid):
        reduced = float((ev.base * ev.gain[pid]).sum())
        return (base_obj - reduced) / ev.cost[pid]
    order = sorted(free, key=lambda pid: (-ratio(pid), pid))
    n = len(order)

    # Suffix products: suffix[p] = elementwise product of gains of
    # order[p:].  suffix[p] dotted with a node's term vector is exactly the
    # all-undecided-selected lower bound at depth p.
    suffix = np.ones((n + 1, ev.n_terms))
    for p in range(n - 1, -1, -1):
        suffix[p] = suffix[p + 1] * ev.gain[order[p]]

    gain_matrix = (
        np.stack([ev.gain[pid] for pid in order])
        if n else np.zeros((0, ev.n_terms))
    )
    # Per-term loss increase ratios for dropping a project: 1/g - 1.
    drop_matrix = 1.0 / gain_matrix - 1.0 if n else gain_matrix
    costs = np.array([ev.cost[pid] for pid in order])
    suffix_cost = np.zeros(n + 1)
    for p in range(n - 1, -1, -1):
        suffix_cost[p] = suffix_cost[p + 1] + costs[p]

    # Budget-aware bound ingredients: per-term cumulative products of the
    # ascending-sorted factors, and the ascending cumulative cost of the
    # free projects.  With remaining budget able to pay for at most q more
    # projects, multiplying in the q smallest factors of each term bounds
    # any affordable completion from below.
    if n:
        cheap_prod = np.ones((n + 1, ev.n_terms))
        np.cumprod(np.sort(gain_matrix, axis=0), axis=0, out=cheap_prod[1:])
        cost_cumsum = np.cumsum(np.sort(costs))
    else:
        cheap_prod = np.ones((1, ev.n_terms))
        cost_cumsum = np.array([])

    warm = greedy_incumbent(model, request)
    best = _Incumbent()
    best.offer(
        ev.loss(warm.portfolio.selected),
        ev.cost_of(warm.portfolio.selected),
        tuple(sorted(warm.portfolio.selected)),
    )

    nodes = 0
    cost_slack = 1e-6 * (1.0 + budget)

    def consider(selection: tuple[int, ...]):
        ids = tuple(sorted(selection))
        cost = ev.cost_of(ids)
        if cost > budget:
            return
        best.offer(ev.loss(ids), cost, ids)

    def knapsack_reduction_cap(vec, node_loss, pos, remaining):
        """Upper bound on the loss reduction any affordable completion can
        still achieve.  Per term, 1 - prod(g_k) <= sum(1 - g_k), so the
        joint reduction is at most the sum of single-project reductions;
        charging costs turns that into a fractional knapsack."""
        reductions = node_loss - gain_matrix[pos:] @ vec
        tail_costs = costs[pos:]
        affordable = tail_costs <= remaining
        if not affordable.any():
            return 0.0
        reductions = reductions[affordable]
        tail_costs = tail_costs[affordable]
        ranking = np.argsort(-reductions / tail_costs, kind="stable")
        cap = 0.0
        left = remaining
        for idx in ranking:
            cost = tail_costs[idx]
            if cost <= left:
                cap += float(reductions[idx])
                left -= cost
            else:
                cap += float(reductions[idx]) * (left / cost)
                break
        return cap

    def exclusion_floor(all_selected_vec, bound_all, pos, must_exclude):
        """Lower bound via the all-selected completion: any feasible
        completion must drop projects worth at least ``must_exclude``
        dollars, and dropping project k raises the loss by at least its
        increase measured at the all-selected point (diminishing returns in
        reverse).  Fractionally covering the cost deficit with the
        cheapest-per-dollar increases keeps the bound valid."""
        increases = drop_matrix[pos:] @ all_selected_vec
        tail_costs = costs[pos:]
        ranking = np.argsort(increases / tail_costs, kind="stable")
        floor = bound_all
        needed = must_exclude
        for idx in ranking:
            cost = tail_costs[idx]
            if cost < needed:
                floor += float(increases[idx])
                needed -= cost
            else:
                floor += float(increases[idx]) * (needed / cost)
                break
        return floor

    def descend(pos: int, vec: np.ndarray, committed: float, chosen: tuple[int, ...]):
        nonlocal nodes
        nodes += 1
        if deadline is not None and time.perf_counter() > deadline:
            raise _TimeUp

        # Projects priced out of the remaining budget are forced skips.
        remaining = budget - committed
        while pos < n and costs[pos] > remaining:
            pos += 1
        if pos == n:
            consider(chosen)
            return

        # Whole affordable suffix fits: selecting all of it is the best
        # completion in this subtree, no branching needed.
        if suffix_cost[pos] <= remaining + cost_slack:
            consider(chosen + tuple(order[pos:]))
            return

        prune_at = best.objective * (1.0 - REL_TOL)
        all_selected_vec = vec * suffix[pos]
        bound_all = float(all_selected_vec.sum())
        if bound_all >= prune_at:
            return
        q = int(np.searchsorted(cost_cumsum, remaining + cost_slack, side="right"))
        if q <= n and float(vec @ cheap_prod[min(q, n)]) >= prune_at:
            return
        must_exclude = suffix_cost[pos] - remaining
        if exclusion_floor(all_selected_vec, bound_all, pos, must_exclude) >= prune_at:
            return
        node_loss = float(vec.sum())
        if node_loss - knapsack_reduction_cap(vec, node_loss, pos, remaining) >= prune_at:
            return

        pid = order[pos]
        descend(pos + 1, vec * ev.gain[pid], committed + costs[pos], chosen + (pid,))
        descend(pos + 1, vec, committed, chosen)

    optimal = True
    try:
        descend(0, ev.term_vector(locked), ev.cost_of(locked), tuple(sorted(locked)))
    except _TimeUp:
        optimal = False
        logger.warning("time limit hit after %d nodes; returning incumbent", nodes)

    assert best.ids is not None
    selection = _minimal_equivalent(ev, best.ids, locked)
    return _build_result(model, selection, optimal, nodes, started)


def _minimal_equivalent(
    ev: Evaluator, ids: tuple[int, ...], locked: frozenset[int]
) -> tuple[int, ...]:
    """Drop free projects whose removal leaves the objective bit-identical.

    Keeps the result aligned with the enumeration tie-break (lower cost
    among equal objectives) when the incumbent picked up zero-effect
    projects along the way.
    """
    current = set(ids)
    obj = ev.loss(current)
    for pid in sorted(ids):
        if pid in locked:
            continue
        trimmed = current - {pid}
        if ev.loss(trimmed) == obj:
            current = trimmed
    return tuple(sorted(current))


# ---------------------------------------------------------------------------
# Budget sweep
# ---------------------------------------------------------------------------

def budget_sweep(
    model: RiskModel,
    budgets: Sequence[float],
    locked: Iterable[int] = (),
    banned: Iterable[int] = (),
    time_limit: float | None = None,
) -> list[SweepPoint]:
    """One exact solve per budget, ascending."""
    budgets = list(budgets)
    if any(b2 < b1 for b1, b2 in zip(budgets, budgets[1:])):
        raise UsageError("budgets must be sorted ascending", field="budgets")
    points = []
    for budget in budgets:
        request = SolveRequest(
            budget=budget,
            locked=frozenset(locked),
            banned=frozenset(banned),
            time_limit=time_limit,
        )
        points.append(SweepPoint(budget=budget, result=solve_exact(model, request)))
    return points
