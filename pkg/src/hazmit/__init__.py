"""Decision support for budget-constrained hazard-mitigation portfolios."""

from .model import (
    CONSEQUENCE_KINDS,
    GRADES,
    Applicability,
    ConsequenceWeights,
    EffectivenessScheme,
    Factors,
    Hazard,
    Portfolio,
    Project,
    RiskModel,
    effective_factors,
    event_probability,
    hazard_consequence,
    hazard_expected_loss,
    is_feasible,
    per_hazard_loss,
    portfolio_cost,
    total_expected_loss,
)
from .solver import (
    SolveRequest,
    SolveResult,
    SweepPoint,
    budget_sweep,
    greedy_incumbent,
    lower_bound,
    solve_enumerate,
    solve_exact,
)
from .estimation import (
    HazardEstimate,
    LogLogScaler,
    RawEvent,
    SeverityCriteria,
    apply_scaler,
    clamped_probability,
    clean_events,
    estimate_hazard,
    estimate_rate,
    filter_severe,
    fit_loglog_scaler,
    mean_consequences,
    scaled_rate,
)
from .scenarios import AllocationDiff, Scenario, apply_scenario, diff_allocations, run_sensitivity
from .bundle import (
    ModelBundle,
    load_bundle,
    load_event_csv,
    load_shipped_bundle,
    save_bundle,
    shipped_bundle_path,
    shipped_fixture_path,
)

__version__ = "0.1.0"
