"""Sensitivity analysis: scheme overrides, consequence overrides, diffs.

A scenario rewrites parts of a base model (the grade-to-factor scheme
and/or individual baseline consequences) without touching the original.
Running a scenario is just a budget sweep on the transformed model, so all
solver guarantees carry over unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import IdentifierError, UsageError, ValidationError
from .model import CONSEQUENCE_KINDS, EffectivenessScheme, Hazard, RiskModel
from .solver import SolveResult, SweepPoint, budget_sweep


@dataclass(frozen=True)
class Scenario:
    """A named what-if transformation of the base model.

    ``consequence_override`` maps ``(hazard_id, consequence_kind)`` to a
    replacement baseline value; ``scheme_override`` replaces the whole
    effectiveness scheme.  Either may be absent.
    """

    name: str
    scheme_override: EffectivenessScheme | None = None
    consequence_override: dict[tuple[str, str], float] = field(default_factory=dict)
    budget_grid: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "budget_grid", tuple(self.budget_grid))
        for (hazard_id, kind), value in self.consequence_override.items():
            if value < 0:
                raise ValidationError(
                    f"scenario {self.name!r}: override for "
                    f"({hazard_id}, {kind}) is negative"
                )
        grid = self.budget_grid
        if any(b2 < b1 for b1, b2 in zip(grid, grid[1:])):
            raise ValidationError(
                f"scenario {self.name!r}: budget grid must be ascending"
            )


@dataclass(frozen=True)
class AllocationDiff:
    budget: float
    added: frozenset[int]
    removed: frozenset[int]
    objective_base: float
    objective_scenario: float


def apply_scenario(model: RiskModel, scenario: Scenario) -> RiskModel:
    """Return a new model with the scenario's overrides applied."""
    for (hazard_id, kind) in scenario.consequence_override:
        model.hazard(hazard_id)
        if kind not in CONSEQUENCE_KINDS:
            raise IdentifierError(f"unknown consequence kind {kind!r}")

    hazards = []
    for hazard in model.hazards:
        overrides = {
            kind: value
            for (hid, kind), value in scenario.consequence_override.items()
            if hid == hazard.id
        }
        if overrides:
            merged = dict(hazard.baseline_consequences)
            merged.update(overrides)
            hazards.append(
                Hazard(
                    id=hazard.id,
                    name=hazard.name,
                    baseline_probability=hazard.baseline_probability,
                    baseline_consequences=merged,
                )
            )
        else:
            hazards.append(hazard)

    scheme = scenario.scheme_override or model.scheme
    return replace(model, hazards=tuple(hazards), scheme=scheme)


def run_sensitivity(
    model: RiskModel,
    scenarios: list[Scenario],
    budget_grid: list[float] | None = None,
) -> dict[str, list[SweepPoint]]:
    """Budget sweep per scenario on its transformed model.

    ``budget_grid`` overrides each scenario's own grid when given.
    """
    results = {}
    for scenario in scenarios:
        grid = list(budget_grid) if budget_grid is not None else list(scenario.budget_grid)
        if not grid:
            raise UsageError(
                f"scenario {scenario.name!r} has no budget grid", field="budget_grid"
            )
        transformed = apply_scenario(model, scenario)
        results[scenario.name] = budget_sweep(transformed, grid)
    return results


def diff_allocations(base: SolveResult, variant: SolveResult, budget: float) -> AllocationDiff:
    """Set difference between two solve results at the same budget."""
    if base.spent > budget or variant.spent > budget:
        raise UsageError("results do not belong to the given budget", field="budget")
    base_ids = base.portfolio.selected
    variant_ids = variant.portfolio.selected
    return AllocationDiff(
        budget=budget,
        added=frozenset(variant_ids - base_ids),
        removed=frozenset(base_ids - variant_ids),
        objective_base=base.objective,
        objective_scenario=variant.objective,
    )
