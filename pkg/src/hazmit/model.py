"""Multi-hazard expected-loss risk model.

A model combines hazards (annual probability plus baseline consequences),
dollar weights per consequence kind, mitigation projects (cost, letter
grade, per-hazard applicability), and an effectiveness scheme translating
letter grades into attenuation factors.

Selecting a project multiplies the probability of each hazard it covers by
an ``alpha`` factor and each covered consequence by a ``beta`` factor, both
in (0, 1].  The objective evaluated here is the dollar-valued expected loss

    sum over hazards i of  p_i(x) * sum over kinds j of  w_j * f_ij(x)

where ``p_i(x)`` and ``f_ij(x)`` are the baseline values attenuated by the
factors of every selected project.  All operations are pure functions of
immutable inputs and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import IdentifierError, ValidationError

#: Canonical consequence kinds, in report order.  Fatalities and injuries
#: are person counts, damage kinds are dollars, the last two are counts of
#: affected customers and businesses.
CONSEQUENCE_KINDS = (
    "fatalities",
    "injuries",
    "property_damage",
    "crop_damage",
    "customers_without_power",
    "businesses_closed",
)

#: Consequence kinds that are already expressed in dollars.
DOLLAR_KINDS = ("property_damage", "crop_damage")

GRADES = ("A", "B", "C", "D")

#: Relative tolerance for objective-value equality (tie detection).
REL_TOL = 1e-9


def _require(cond, message, field_path=None):
    if not cond:
        raise ValidationError(message, field=field_path)


@dataclass(frozen=True)
class Hazard:
    """One hazard with its no-mitigation probability and consequences."""

    id: str
    name: str
    baseline_probability: float
    baseline_consequences: Mapping[str, float]

    def __post_init__(self):
        _require(self.id, "hazard id must be non-empty", "hazards.id")
        _require(
            0.0 <= self.baseline_probability <= 1.0,
            f"hazard {self.id!r}: baseline_probability "
            f"{self.baseline_probability} outside [0, 1]",
            f"hazards.{self.id}.baseline_probability",
        )
        missing = [k for k in CONSEQUENCE_KINDS if k not in self.baseline_consequences]
        _require(
            not missing,
            f"hazard {self.id!r}: missing consequence kinds {missing}",
            f"hazards.{self.id}.baseline_consequences",
        )
        extra = [k for k in self.baseline_consequences if k not in CONSEQUENCE_KINDS]
        _require(
            not extra,
            f"hazard {self.id!r}: unknown consequence kinds {extra}",
            f"hazards.{self.id}.baseline_consequences",
        )
        for kind, value in self.baseline_consequences.items():
            _require(
                value >= 0.0 and math.isfinite(value),
                f"hazard {self.id!r}: consequence {kind} = {value} is negative",
                f"hazards.{self.id}.baseline_consequences.{kind}",
            )


@dataclass(frozen=True)
class ConsequenceWeights:
    """Dollars per unit of each consequence kind."""

    weights: Mapping[str, float]

    def __post_init__(self):
        missing = [k for k in CONSEQUENCE_KINDS if k not in self.weights]
        _require(not missing, f"weights missing kinds {missing}", "weights")
        for kind, value in self.weights.items():
            _require(
                kind in CONSEQUENCE_KINDS,
                f"unknown consequence kind {kind!r} in weights",
                f"weights.{kind}",
            )
            _require(value > 0.0, f"weight for {kind} must be > 0", f"weights.{kind}")
        for kind in DOLLAR_KINDS:
            # Damage kinds are already dollars; any other value would
            # double-count them.
            _require(
                self.weights[kind] == 1.0,
                f"weight for {kind} must be exactly 1",
                f"weights.{kind}",
            )

    def __getitem__(self, kind):
        return self.weights[kind]


@dataclass(frozen=True)
class Applicability:
    """How one project acts on one hazard."""

    hazard_id: str
    reduces_probability: bool
    reduced_consequences: frozenset[str]

    def __post_init__(self):
        object.__setattr__(
            self, "reduced_consequences", frozenset(self.reduced_consequences)
        )
        bad = [k for k in self.reduced_consequences if k not in CONSEQUENCE_KINDS]
        _require(not bad, f"unknown consequence kinds {bad} in applicability")


@dataclass(frozen=True)
class Project:
    """A candidate mitigation project (one binary decision variable)."""

    id: int
    name: str
    cost: float
    grade: str
    all_hazard: bool
    applicability: tuple[Applicability, ...]

    def __post_init__(self):
        object.__setattr__(self, "applicability", tuple(self.applicability))
        _require(self.cost > 0.0, f"project {self.id}: cost must be > 0",
                 f"projects.{self.id}.cost")
        _require(self.grade in GRADES,
                 f"project {self.id}: grade {self.grade!r} not in {GRADES}",
                 f"projects.{self.id}.grade")
        seen = set()
        for app in self.applicability:
            _require(app.hazard_id not in seen,
                     f"project {self.id}: duplicate applicability for "
                     f"hazard {app.hazard_id!r}",
                     f"projects.{self.id}.applicability")
            seen.add(app.hazard_id)

    def applicability_for(self, hazard_id: str) -> Applicability | None:
        for app in self.applicability:
            if app.hazard_id == hazard_id:
                return app
        return None


@dataclass(frozen=True)
class EffectivenessScheme:
    """Letter grade to attenuation-factor translation.

    ``grade_alpha`` maps grades to probability factors, ``grade_beta`` to
    consequence factors.  When ``halve_all_hazard_beta`` is set, projects
    flagged all-hazard apply beta at half strength: beta' = 1 - (1-beta)/2.
    The halving never touches alpha.
    """

    grade_alpha: Mapping[str, float]
    grade_beta: Mapping[str, float]
    halve_all_hazard_beta: bool = True

    def __post_init__(self):
        for label, mapping in (("grade_alpha", self.grade_alpha),
                               ("grade_beta", self.grade_beta)):
            missing = [g for g in GRADES if g not in mapping]
            _require(not missing, f"{label} missing grades {missing}",
                     f"scheme.{label}")
            for grade, value in mapping.items():
                _require(0.0 < value <= 1.0,
                         f"{label}[{grade}] = {value} outside (0, 1]",
                         f"scheme.{label}.{grade}")
            ordered = [mapping[g] for g in GRADES]
            _require(all(a <= b for a, b in zip(ordered, ordered[1:])),
                     f"{label} must be non-decreasing from A to D "
                     f"(better grades at least as effective)",
                     f"scheme.{label}")

    def halved_beta(self, grade: str) -> float:
        beta = self.grade_beta[grade]
        return 1.0 - (1.0 - beta) / 2.0


@dataclass(frozen=True)
class Portfolio:
    """A set of selected project ids."""

    selected: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "selected", frozenset(self.selected))

    @classmethod
    def of(cls, ids: Iterable[int]) -> "Portfolio":
        return cls(frozenset(int(i) for i in ids))


EMPTY_PORTFOLIO = Portfolio()


@dataclass(frozen=True)
class Factors:
    """Attenuation factors of one project on one hazard."""

    alpha: float
    beta_per_consequence: Mapping[str, float]


@dataclass(frozen=True)
class RiskModel:
    """Immutable container for hazards, weights, projects, and scheme."""

    hazards: tuple[Hazard, ...]
    weights: ConsequenceWeights
    projects: tuple[Project, ...]
    scheme: EffectivenessScheme
    budget: float = 0.0

    _hazard_index: dict = field(init=False, repr=False, compare=False)
    _project_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "hazards", tuple(self.hazards))
        object.__setattr__(self, "projects", tuple(self.projects))
        _require(self.budget >= 0.0, "budget must be >= 0", "budget")

        hazard_index = {}
        for hazard in self.hazards:
            _require(hazard.id not in hazard_index,
                     f"duplicate hazard id {hazard.id!r}", "hazards")
            hazard_index[hazard.id] = hazard

        project_index = {}
        for project in self.projects:
            _require(project.id not in project_index,
                     f"duplicate project id {project.id}", "projects")
            project_index[project.id] = project
        expected = set(range(1, len(self.projects) + 1))
        _require(set(project_index) == expected,
                 "project ids must be contiguous from 1", "projects")

        for project in self.projects:
            for app in project.applicability:
                _require(app.hazard_id in hazard_index,
                         f"project {project.id}: applicability references "
                         f"unknown hazard {app.hazard_id!r}",
                         f"projects.{project.id}.applicability")
            if project.all_hazard:
                covered = {a.hazard_id for a in project.applicability}
                _require(covered == set(hazard_index),
                         f"project {project.id} is flagged all-hazard but "
                         f"does not cover every hazard",
                         f"projects.{project.id}.applicability")

        object.__setattr__(self, "_hazard_index", hazard_index)
        object.__setattr__(self, "_project_index", project_index)

    # -- lookups ---------------------------------------------------------

    def hazard(self, hazard_id: str) -> Hazard:
        try:
            return self._hazard_index[hazard_id]
        except KeyError:
            raise IdentifierError(f"unknown hazard id {hazard_id!r}") from None

    def project(self, project_id: int) -> Project:
        try:
            return self._project_index[project_id]
        except KeyError:
            raise IdentifierError(f"unknown project id {project_id!r}") from None

    @property
    def hazard_ids(self) -> tuple[str, ...]:
        return tuple(h.id for h in self.hazards)

    @property
    def project_ids(self) -> tuple[int, ...]:
        return tuple(p.id for p in self.projects)

    def check_portfolio(self, portfolio: Portfolio) -> None:
        unknown = portfolio.selected - set(self._project_index)
        if unknown:
            raise IdentifierError(
                f"portfolio references unknown project ids {sorted(unknown)}"
            )


# ---------------------------------------------------------------------------
# Risk equations
# ---------------------------------------------------------------------------

def effective_factors(
    model: RiskModel,
    project_id: int,
    hazard_id: str,
    scheme: EffectivenessScheme | None = None,
) -> Factors:
    """Attenuation factors a project applies to one hazard when selected.

    Returns identity factors (all 1.0) when the project is not applicable
    to the hazard, so downstream products are exact regardless of how
    applicability is stored.
    """
    project = model.project(project_id)
    model.hazard(hazard_id)
    scheme = scheme or model.scheme

    app = project.applicability_for(hazard_id)
    if app is None:
        return Factors(1.0, {k: 1.0 for k in CONSEQUENCE_KINDS})

    alpha = scheme.grade_alpha[project.grade] if app.reduces_probability else 1.0
    if project.all_hazard and scheme.halve_all_hazard_beta:
        applied_beta = scheme.halved_beta(project.grade)
    else:
        applied_beta = scheme.grade_beta[project.grade]
    betas = {
        kind: (applied_beta if kind in app.reduced_consequences else 1.0)
        for kind in CONSEQUENCE_KINDS
    }
    return Factors(alpha, betas)


def event_probability(
    model: RiskModel, hazard_id: str, portfolio: Portfolio
) -> float:
    """Hazard probability after attenuation by every selected project."""
    hazard = model.hazard(hazard_id)
    model.check_portfolio(portfolio)
    prob = hazard.baseline_probability
    for pid in sorted(portfolio.selected):
        prob *= effective_factors(model, pid, hazard_id).alpha
    return prob


def hazard_consequence(
    model: RiskModel, hazard_id: str, kind: str, portfolio: Portfolio
) -> float:
    """One consequence of one hazard after attenuation."""
    hazard = model.hazard(hazard_id)
    if kind not in CONSEQUENCE_KINDS:
        raise IdentifierError(f"unknown consequence kind {kind!r}")
    model.check_portfolio(portfolio)
    value = hazard.baseline_consequences[kind]
    for pid in sorted(portfolio.selected):
        value *= effective_factors(model, pid, hazard_id).beta_per_consequence[kind]
    return value


def hazard_expected_loss(
    model: RiskModel, hazard_id: str, portfolio: Portfolio
) -> float:
    """Probability-weighted dollar loss of one hazard under a portfolio."""
    prob = event_probability(model, hazard_id, portfolio)
    dollars = 0.0
    for kind in CONSEQUENCE_KINDS:
        dollars += model.weights[kind] * hazard_consequence(
            model, hazard_id, kind, portfolio
        )
    return prob * dollars


def total_expected_loss(model: RiskModel, portfolio: Portfolio) -> float:
    """The objective: expected dollar loss summed over all hazards."""
    model.check_portfolio(portfolio)
    return sum(
        hazard_expected_loss(model, h.id, portfolio) for h in model.hazards
    )


def per_hazard_loss(model: RiskModel, portfolio: Portfolio) -> dict[str, float]:
    """Expected loss broken down by hazard id."""
    model.check_portfolio(portfolio)
    return {h.id: hazard_expected_loss(model, h.id, portfolio) for h in model.hazards}


def portfolio_cost(model: RiskModel, portfolio: Portfolio) -> float:
    """Total cost of the selected projects."""
    model.check_portfolio(portfolio)
    return sum(model.project(pid).cost for pid in sorted(portfolio.selected))


def is_feasible(model: RiskModel, portfolio: Portfolio, budget: float) -> bool:
    """True iff the portfolio cost is within budget (boundary inclusive)."""
    return portfolio_cost(model, portfolio) <= budget
