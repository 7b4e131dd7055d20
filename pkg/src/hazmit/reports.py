"""Canonical machine reports and human-readable tables.

The machine format is deterministic JSON: sorted keys, compact separators,
dollar amounts at 6 significant digits, other floats at shortest stable
precision, and no wall-clock fields.  Identical inputs therefore serialize
to identical bytes, which the CLI and the HTTP service both rely on.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import UsageError
from .estimation import HazardEstimate
from .solver import SolveRequest, SolveResult, SweepPoint


class Dollars(float):
    """Marker for dollar-valued numbers (formatted at 6 significant digits)."""


def _format_number(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Dollars):
        return format(float(value), ".6g")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".12g")
    raise TypeError(f"not a number: {value!r}")


def _canonical(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=True))
    elif isinstance(value, (bool, int, float)):
        out.append(_format_number(value))
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key), ensure_ascii=True))
            out.append(":")
            _canonical(value[key], out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _canonical(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_bytes(document: dict) -> bytes:
    """Serialize a report document to canonical machine bytes."""
    out: list[str] = []
    _canonical(document, out)
    out.append("\n")
    return "".join(out).encode("ascii")


# ---------------------------------------------------------------------------
# Document builders
# ---------------------------------------------------------------------------

def _result_fields(result: SolveResult) -> dict:
    return {
        "selected": sorted(result.portfolio.selected),
        "objective": Dollars(result.objective),
        "spent": Dollars(result.spent),
        "per_hazard_loss": {
            hid: Dollars(v) for hid, v in result.per_hazard_loss.items()
        },
        "optimal": result.optimal,
        "nodes_explored": result.nodes_explored,
    }


def solve_document(
    request: SolveRequest, result: SolveResult, scenario: str | None = None
) -> dict:
    return {
        "kind": "solve",
        "request": {
            "budget": Dollars(request.budget),
            "locked": sorted(request.locked),
            "banned": sorted(request.banned),
            "scenario": scenario,
        },
        "result": _result_fields(result),
    }


def evaluate_document(
    selected: list[int],
    objective: float,
    spent: float,
    per_hazard: dict[str, float],
    scenario: str | None = None,
) -> dict:
    return {
        "kind": "evaluate",
        "request": {"selected": sorted(selected), "scenario": scenario},
        "result": {
            "objective": Dollars(objective),
            "spent": Dollars(spent),
            "per_hazard_loss": {h: Dollars(v) for h, v in per_hazard.items()},
        },
    }


def sweep_document(
    points: list[SweepPoint],
    locked: list[int] | None = None,
    banned: list[int] | None = None,
    scenario: str | None = None,
) -> dict:
    return {
        "kind": "sweep",
        "request": {
            "budgets": [Dollars(p.budget) for p in points],
            "locked": sorted(locked or []),
            "banned": sorted(banned or []),
            "scenario": scenario,
        },
        "points": [
            {"budget": Dollars(p.budget), "result": _result_fields(p.result)}
            for p in points
        ],
    }


def estimate_document(estimate: HazardEstimate) -> dict:
    return {
        "kind": "estimate",
        "result": {
            "qualifying_events": estimate.qualifying_events,
            "span_years": estimate.span_years,
            "annual_probability": estimate.annual_probability,
            "mean_consequences": dict(sorted(estimate.mean_consequences.items())),
        },
    }


# ---------------------------------------------------------------------------
# Human-readable rendering
# ---------------------------------------------------------------------------

def _money(value: float) -> str:
    return f"${value:,.2f}"


def _render_result(result: dict, lines: list[str]) -> None:
    lines.append(f"  objective : {_money(result['objective'])}")
    if "spent" in result:
        lines.append(f"  spent     : {_money(result['spent'])}")
    if "selected" in result:
        ids = ", ".join(str(i) for i in result["selected"]) or "(none)"
        lines.append(f"  selected  : {ids}")
    if "optimal" in result:
        lines.append(f"  optimal   : {'yes' if result['optimal'] else 'no'}")
    per_hazard = result.get("per_hazard_loss")
    if per_hazard:
        lines.append("  per-hazard expected loss:")
        width = max(len(h) for h in per_hazard)
        for hid in sorted(per_hazard, key=lambda h: -per_hazard[h]):
            lines.append(f"    {hid:<{width}}  {_money(per_hazard[hid])}")


def render_table(document: dict) -> str:
    kind = document.get("kind", "report")
    lines = [f"== {kind} =="]
    if kind in ("solve", "evaluate"):
        _render_result(document["result"], lines)
    elif kind == "sweep":
        lines.append(f"  {'budget':>16}  {'objective':>20}  selection")
        for point in document["points"]:
            ids = ",".join(str(i) for i in point["result"]["selected"]) or "-"
            lines.append(
                f"  {_money(point['budget']):>16}  "
                f"{_money(point['result']['objective']):>20}  {ids}"
            )
    elif kind == "estimate":
        result = document["result"]
        lines.append(f"  qualifying events : {result['qualifying_events']}")
        lines.append(f"  span (years)      : {result['span_years']}")
        lines.append(f"  annual probability: {result['annual_probability']:.4f}")
        for name, value in result["mean_consequences"].items():
            lines.append(f"  mean {name:<16}: {value:,.4f}")
    else:
        lines.append(json.dumps(document, indent=2, sort_keys=True, default=float))
    lines.append("")
    return "\n".join(lines)


def write_report(document: dict, format: str = "machine") -> bytes:
    """Serialize a report document; ``machine`` is canonical and stable."""
    if format == "machine":
        return canonical_bytes(document)
    if format == "table":
        return render_table(document).encode("utf-8")
    raise UsageError(f"unknown report format {format!r}", field="format")
