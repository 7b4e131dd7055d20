"""Model-bundle serialization, validation, and incident-CSV ingestion.

A bundle is one versioned JSON document carrying hazards, weights,
projects, the effectiveness scheme, named scenarios, and a provenance map.
Provenance keys are dotted path patterns (``*`` matches one segment) and
every numeric field in a bundle must be covered by at least one pattern,
so data of unclear origin cannot slip in silently.
"""

from __future__ import annotations

import csv
import datetime as dt
import fnmatch
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO

from .errors import BundleError, RecordError, SchemaError, ValidationError
from .estimation import RawEvent
from .model import (
    Applicability,
    ConsequenceWeights,
    EffectivenessScheme,
    Hazard,
    Project,
    RiskModel,
)
from .scenarios import Scenario

SUPPORTED_VERSIONS = (1,)

#: Canonical field -> CSV column for the shipped storm-events-style fixture.
STORM_EVENTS_COLUMNS = {
    "event_type": "EVENT_TYPE",
    "date": "BEGIN_DATE",
    "fatalities": "DEATHS_DIRECT",
    "injuries": "INJURIES_DIRECT",
    "property_damage": "DAMAGE_PROPERTY",
    "crop_damage": "DAMAGE_CROPS",
}

#: Identity mapping for CSVs that already use canonical column names.
CANONICAL_COLUMNS = {
    name: name
    for name in ("event_type", "date", "fatalities", "injuries",
                 "property_damage", "crop_damage")
}


@dataclass(frozen=True)
class ModelBundle:
    format_version: int
    name: str
    model: RiskModel
    scenarios: dict[str, Scenario] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Bundle <-> dict
# ---------------------------------------------------------------------------

def bundle_to_dict(bundle: ModelBundle) -> dict:
    model = bundle.model
    return {
        "format_version": bundle.format_version,
        "name": bundle.name,
        "default_budget": model.budget,
        "hazards": [
            {
                "id": h.id,
                "name": h.name,
                "baseline_probability": h.baseline_probability,
                "baseline_consequences": dict(h.baseline_consequences),
            }
            for h in model.hazards
        ],
        "weights": dict(model.weights.weights),
        "scheme": _scheme_to_dict(model.scheme),
        "projects": [
            {
                "id": p.id,
                "name": p.name,
                "cost": p.cost,
                "grade": p.grade,
                "all_hazard": p.all_hazard,
                "applicability": [
                    {
                        "hazard_id": a.hazard_id,
                        "reduces_probability": a.reduces_probability,
                        "reduced_consequences": sorted(a.reduced_consequences),
                    }
                    for a in p.applicability
                ],
            }
            for p in model.projects
        ],
        "scenarios": [
            {
                "name": s.name,
                "scheme_override": (
                    _scheme_to_dict(s.scheme_override) if s.scheme_override else None
                ),
                "consequence_override": [
                    {"hazard_id": hid, "kind": kind, "value": value}
                    for (hid, kind), value in sorted(s.consequence_override.items())
                ],
                "budget_grid": list(s.budget_grid),
            }
            for s in bundle.scenarios.values()
        ],
        "provenance": dict(bundle.provenance),
    }


def _scheme_to_dict(scheme: EffectivenessScheme) -> dict:
    return {
        "grade_alpha": dict(scheme.grade_alpha),
        "grade_beta": dict(scheme.grade_beta),
        "halve_all_hazard_beta": scheme.halve_all_hazard_beta,
    }


def _scheme_from_dict(data: dict, path: str) -> EffectivenessScheme:
    try:
        return EffectivenessScheme(
            grade_alpha=dict(data["grade_alpha"]),
            grade_beta=dict(data["grade_beta"]),
            halve_all_hazard_beta=bool(data.get("halve_all_hazard_beta", True)),
        )
    except KeyError as exc:
        raise BundleError(f"{path}: missing key {exc}") from None


def bundle_from_dict(data: dict) -> ModelBundle:
    if not isinstance(data, dict):
        raise BundleError("bundle document must be an object")
    version = data.get("format_version")
    if version not in SUPPORTED_VERSIONS:
        raise BundleError(
            f"unsupported format_version {version!r}; "
            f"supported: {list(SUPPORTED_VERSIONS)}"
        )
    try:
        hazards = tuple(
            Hazard(
                id=h["id"],
                name=h["name"],
                baseline_probability=float(h["baseline_probability"]),
                baseline_consequences={
                    k: float(v) for k, v in h["baseline_consequences"].items()
                },
            )
            for h in data["hazards"]
        )
        weights = ConsequenceWeights(
            weights={k: float(v) for k, v in data["weights"].items()}
        )
        scheme = _scheme_from_dict(data["scheme"], "scheme")
        projects = tuple(
            Project(
                id=int(p["id"]),
                name=p["name"],
                cost=float(p["cost"]),
                grade=p["grade"],
                all_hazard=bool(p["all_hazard"]),
                applicability=tuple(
                    Applicability(
                        hazard_id=a["hazard_id"],
                        reduces_probability=bool(a["reduces_probability"]),
                        reduced_consequences=frozenset(a["reduced_consequences"]),
                    )
                    for a in p["applicability"]
                ),
            )
            for p in data["projects"]
        )
        model = RiskModel(
            hazards=hazards,
            weights=weights,
            projects=projects,
            scheme=scheme,
            budget=float(data.get("default_budget", 0.0)),
        )
        scenarios = {}
        for s in data.get("scenarios", []):
            override = {
                (o["hazard_id"], o["kind"]): float(o["value"])
                for o in s.get("consequence_override", [])
            }
            raw_scheme = s.get("scheme_override")
            scenarios[s["name"]] = Scenario(
                name=s["name"],
                scheme_override=(
                    _scheme_from_dict(raw_scheme, f"scenarios.{s['name']}")
                    if raw_scheme
                    else None
                ),
                consequence_override=override,
                budget_grid=tuple(float(b) for b in s.get("budget_grid", [])),
            )
    except KeyError as exc:
        raise BundleError(f"bundle is missing required key {exc}") from None

    bundle = ModelBundle(
        format_version=int(version),
        name=data.get("name", "unnamed"),
        model=model,
        scenarios=scenarios,
        provenance=dict(data.get("provenance", {})),
    )
    _check_provenance_coverage(bundle)
    return bundle


# ---------------------------------------------------------------------------
# Provenance coverage
# ---------------------------------------------------------------------------

def _numeric_leaf_paths(value, prefix: str, out: list[str]) -> None:
    if isinstance(value, bool):
        return
    if isinstance(value, (int, float)):
        out.append(prefix)
    elif isinstance(value, dict):
        for key, item in value.items():
            _numeric_leaf_paths(item, f"{prefix}.{key}" if prefix else str(key), out)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            key = item.get("id", item.get("name", i)) if isinstance(item, dict) else i
            _numeric_leaf_paths(item, f"{prefix}.{key}" if prefix else str(key), out)


def _matches(path: str, pattern: str) -> bool:
    path_parts = path.split(".")
    pattern_parts = pattern.split(".")
    if len(path_parts) != len(pattern_parts):
        return False
    return all(
        fnmatch.fnmatchcase(p, q) for p, q in zip(path_parts, pattern_parts)
    )


def _check_provenance_coverage(bundle: ModelBundle) -> None:
    doc = bundle_to_dict(bundle)
    leaves: list[str] = []
    for section in ("default_budget", "hazards", "weights", "scheme",
                    "projects", "scenarios"):
        _numeric_leaf_paths(doc[section], section, leaves)
    # Identifiers are structural, not data.
    leaves = [p for p in leaves if not p.endswith(".id")]
    patterns = list(bundle.provenance)
    uncovered = [
        path for path in leaves
        if not any(_matches(path, pat) for pat in patterns)
    ]
    if uncovered:
        sample = ", ".join(uncovered[:5])
        raise ValidationError(
            f"{len(uncovered)} numeric fields lack provenance notes "
            f"(e.g. {sample})",
            field=uncovered[0],
        )


def provenance_note(bundle: ModelBundle, path: str) -> str | None:
    """The provenance note matching a concrete field path, if any."""
    for pattern, note in bundle.provenance.items():
        if _matches(path, pattern):
            return note
    return None


# ---------------------------------------------------------------------------
# Load / save
# ---------------------------------------------------------------------------

def load_bundle(source: str | Path | IO[str]) -> ModelBundle:
    """Parse and validate a bundle from a path or readable stream."""
    try:
        if hasattr(source, "read"):
            data = json.load(source)
        else:
            with open(source, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise BundleError(f"malformed bundle document: {exc}") from None
    return bundle_from_dict(data)


def save_bundle(bundle: ModelBundle, target: str | Path | IO[str]) -> None:
    doc = bundle_to_dict(bundle)
    if hasattr(target, "write"):
        json.dump(doc, target, indent=2)
        target.write("\n")
    else:
        with open(target, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def shipped_bundle_path() -> Path:
    return Path(resources.files("hazmit") / "data" / "iowa_bundle.json")


def shipped_fixture_path() -> Path:
    return Path(resources.files("hazmit") / "data" / "winter_storm_fixture.csv")


def load_shipped_bundle() -> ModelBundle:
    return load_bundle(shipped_bundle_path())


# ---------------------------------------------------------------------------
# Incident CSV ingestion
# ---------------------------------------------------------------------------

_DATE_FORMATS = ("%Y-%m-%d", "%m/%d/%Y")


def _parse_date(text: str) -> dt.date:
    for fmt in _DATE_FORMATS:
        try:
            return dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    raise ValueError(f"unrecognized date {text!r}")


def load_event_csv(
    source: str | Path | IO[str],
    column_map: dict[str, str] | None = None,
) -> list[RawEvent]:
    """Read incident rows into typed records.

    ``column_map`` maps canonical field names to CSV column names; empty
    cells become missing values (``None``) and are left for
    ``clean_events`` to drop.  Damage fields are plain non-negative numbers
    (no magnitude suffixes).
    """
    column_map = dict(column_map or CANONICAL_COLUMNS)
    missing_keys = set(CANONICAL_COLUMNS) - set(column_map)
    if missing_keys:
        raise SchemaError(f"column_map lacks mappings for {sorted(missing_keys)}")

    if hasattr(source, "read"):
        return _read_events(source, column_map)
    with open(source, "r", encoding="utf-8", newline="") as fh:
        return _read_events(fh, column_map)


def _read_events(fh: IO[str], column_map: dict[str, str]) -> list[RawEvent]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None:
        raise SchemaError("CSV input has no header row")
    header = set(reader.fieldnames)
    missing = [col for col in column_map.values() if col not in header]
    if missing:
        raise SchemaError(f"CSV is missing mapped columns {missing}")

    events = []
    for index, row in enumerate(reader, start=2):  # header is line 1
        def cell(canon: str) -> str:
            return (row.get(column_map[canon]) or "").strip()

        def number(canon: str) -> float | None:
            text = cell(canon)
            if not text:
                return None
            try:
                value = float(text.replace(",", ""))
            except ValueError:
                raise RecordError(
                    f"row {index}: cannot parse {column_map[canon]!r} value "
                    f"{text!r} as a number",
                    row=index,
                    column=column_map[canon],
                ) from None
            if value < 0:
                raise RecordError(
                    f"row {index}: {column_map[canon]} is negative",
                    row=index,
                    column=column_map[canon],
                )
            return value

        date_text = cell("date")
        try:
            date = _parse_date(date_text)
        except ValueError as exc:
            raise RecordError(
                f"row {index}: {exc}", row=index, column=column_map["date"]
            ) from None

        events.append(
            RawEvent(
                event_type=cell("event_type"),
                date=date,
                fatalities=number("fatalities"),
                injuries=number("injuries"),
                property_damage=number("property_damage"),
                crop_damage=number("crop_damage"),
            )
        )
    return events
