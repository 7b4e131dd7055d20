"""Hazard-parameter estimation from raw incident records.

Turns an incident history (e.g. a storm-events export) into the inputs the
risk model needs: an annual occurrence probability for severe events and
mean consequences over the qualifying events.  Also provides the
national-to-state rate scaling used for sparse hazards and a log-log
regression for transferring consequence estimates between sources.
"""

from __future__ import annotations

import datetime as dt
import logging
import math
from dataclasses import dataclass, field

from .errors import DomainError, FitError

logger = logging.getLogger(__name__)

#: Consequence fields present in raw incident data.
EVENT_FIELDS = ("fatalities", "injuries", "property_damage", "crop_damage")


@dataclass(frozen=True)
class RawEvent:
    """One incident row.  ``None`` marks a missing value."""

    event_type: str
    date: dt.date
    fatalities: float | None
    injuries: float | None
    property_damage: float | None
    crop_damage: float | None

    def __post_init__(self):
        for name in EVENT_FIELDS:
            value = getattr(self, name)
            if value is not None and value < 0:
                raise DomainError(f"{name} must be >= 0, got {value}")

    @property
    def has_missing(self) -> bool:
        return any(getattr(self, name) is None for name in EVENT_FIELDS)


@dataclass(frozen=True)
class SeverityCriteria:
    """Any-of thresholds qualifying an event as severe.

    Casualty thresholds are strict ("exceeds"), damage thresholds are
    inclusive ("at least").
    """

    min_injuries_exclusive: float = 5.0
    min_deaths_exclusive: float = 5.0
    min_property_damage_inclusive: float = 100_000_000.0
    min_crop_damage_inclusive: float = 50_000_000.0

    def __post_init__(self):
        for name in (
            "min_injuries_exclusive",
            "min_deaths_exclusive",
            "min_property_damage_inclusive",
            "min_crop_damage_inclusive",
        ):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")

    def matches(self, event: RawEvent) -> bool:
        return (
            (event.injuries or 0.0) > self.min_injuries_exclusive
            or (event.fatalities or 0.0) > self.min_deaths_exclusive
            or (event.property_damage or 0.0) >= self.min_property_damage_inclusive
            or (event.crop_damage or 0.0) >= self.min_crop_damage_inclusive
        )


@dataclass(frozen=True)
class HazardEstimate:
    """Pipeline output for one hazard."""

    qualifying_events: int
    span_years: float
    annual_probability: float
    mean_consequences: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class LogLogScaler:
    """Fitted ``log1p``-space linear relation between two sources."""

    slope: float
    intercept: float


def clean_events(raw: list[RawEvent], cutoff_year: int) -> list[RawEvent]:
    """Drop pre-cutoff events, rows with missing fields, and exact duplicates.

    Duplicate detection is exact equality on every field; the first
    occurrence is retained.
    """
    seen = set()
    out = []
    for event in raw:
        if event.date.year < cutoff_year:
            continue
        if event.has_missing:
            continue
        key = (
            event.event_type,
            event.date,
            event.fatalities,
            event.injuries,
            event.property_damage,
            event.crop_damage,
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(event)
    return out


def filter_severe(
    events: list[RawEvent], criteria: SeverityCriteria
) -> list[RawEvent]:
    """Keep events matching at least one severity criterion."""
    return [e for e in events if criteria.matches(e)]


def estimate_rate(qualifying_count: int, span_years: float) -> float:
    """Annual event rate: count over the observation span in years.

    May exceed 1 for frequent hazards; clamp with
    ``clamped_probability`` before use as a model probability.
    """
    if span_years <= 0:
        raise DomainError(f"span_years must be > 0, got {span_years}")
    if qualifying_count < 0:
        raise DomainError("qualifying_count must be >= 0")
    return qualifying_count / span_years


def clamped_probability(rate: float) -> float:
    """Clamp an annual rate into [0, 1] for use as a probability."""
    if rate > 1.0:
        logger.warning("annual rate %.4f exceeds 1; clamping to 1.0", rate)
        return 1.0
    return rate


def mean_consequences(events: list[RawEvent]) -> dict[str, float]:
    """Arithmetic mean of each consequence field over the events."""
    if not events:
        raise DomainError("cannot average an empty event list")
    means = {}
    for name in EVENT_FIELDS:
        values = [getattr(e, name) for e in events]
        if any(v is None for v in values):
            raise DomainError(f"events contain missing {name}; clean first")
        means[name] = sum(values) / len(values)
    return means


def scaled_rate(national_annual_rate: float, state_share: float) -> float:
    """Scale a national annual rate by the state's share of exposure."""
    if national_annual_rate < 0:
        raise DomainError("rate must be >= 0")
    if not 0.0 <= state_share <= 1.0:
        raise DomainError(f"state_share must be in [0, 1], got {state_share}")
    return national_annual_rate * state_share


def fit_loglog_scaler(pairs: list[tuple[float, float]]) -> LogLogScaler:
    """Least-squares fit of ``log1p(observed)`` against ``log1p(reference)``.

    The ``1 + x`` shift keeps zero counts in-domain; consequence data
    routinely contains zeros.
    """
    if len(pairs) < 2:
        raise FitError("need at least 2 pairs to fit")
    xs, ys = [], []
    for reference, observed in pairs:
        if reference < 0 or observed < 0:
            raise DomainError("regression inputs must be >= 0")
        xs.append(math.log1p(reference))
        ys.append(math.log1p(observed))
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    # guard against rounding residue when all references are identical
    if sxx <= 1e-20 * max(1.0, sum(x * x for x in xs)):
        raise FitError("all reference values equal; slope is undefined")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return LogLogScaler(slope=slope, intercept=mean_y - slope * mean_x)


def apply_scaler(scaler: LogLogScaler, reference_value: float) -> float:
    """Predict a consequence from a reference value, clamped at zero."""
    if reference_value < 0:
        raise DomainError("reference_value must be >= 0")
    predicted = math.expm1(scaler.intercept + scaler.slope * math.log1p(reference_value))
    return max(predicted, 0.0)


def estimate_hazard(
    raw: list[RawEvent],
    criteria: SeverityCriteria,
    span_years: float,
    cutoff_year: int = 1980,
) -> HazardEstimate:
    """Full pipeline: clean, filter to severe, rate, then mean consequences."""
    cleaned = clean_events(raw, cutoff_year)
    severe = filter_severe(cleaned, criteria)
    rate = estimate_rate(len(severe), span_years)
    means = mean_consequences(severe) if severe else {k: 0.0 for k in EVENT_FIELDS}
    return HazardEstimate(
        qualifying_events=len(severe),
        span_years=span_years,
        annual_probability=rate,
        mean_consequences=means,
    )
