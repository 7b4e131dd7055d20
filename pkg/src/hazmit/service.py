"""HTTP service exposing the model to the explorer UI.

All success payloads use the canonical machine format from ``reports``, so
a ``POST /solve`` body and the CLI's ``solve --format machine`` output are
byte-identical for the same request.  The service is stateless: every
request solves against the same immutable bundle snapshot.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from pydantic import BaseModel

from . import reports
from .bundle import ModelBundle, provenance_note
from .cli import DEFAULT_MAX_FREE_EXACT, run_solve
from .errors import (
    HazmitError,
    IdentifierError,
    InfeasibleError,
    UsageError,
    ValidationError,
)
from .model import CONSEQUENCE_KINDS
from .scenarios import apply_scenario
from .solver import SolveRequest, budget_sweep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    request_timeout: float | None = 30.0
    max_free_exact: int = DEFAULT_MAX_FREE_EXACT


class SolveBody(BaseModel):
    budget: float
    locked: list[int] = []
    banned: list[int] = []
    scenario: str | None = None


class SweepBody(BaseModel):
    budgets: list[float]
    locked: list[int] = []
    banned: list[int] = []
    scenario: str | None = None


def _machine(document: dict, status_code: int = 200) -> Response:
    return Response(
        content=reports.canonical_bytes(document),
        media_type="application/json",
        status_code=status_code,
    )


def _error_response(status: int, code: str, message: str, field=None) -> Response:
    body = {"code": code, "message": message}
    if field:
        body["field"] = field
    return _machine(body, status_code=status)


def _status_for(exc: HazmitError) -> tuple[int, str]:
    if isinstance(exc, InfeasibleError):
        return 422, "infeasible"
    if isinstance(exc, IdentifierError):
        return 404, "unknown_identifier"
    if isinstance(exc, (UsageError, ValidationError)):
        return 400, "bad_request"
    return 500, "internal_error"


def model_summary_document(bundle: ModelBundle) -> dict:
    model = bundle.model
    return {
        "kind": "model",
        "name": bundle.name,
        "format_version": bundle.format_version,
        "default_budget": reports.Dollars(model.budget),
        "consequence_kinds": list(CONSEQUENCE_KINDS),
        "weights": {k: reports.Dollars(v) for k, v in model.weights.weights.items()},
        "scheme": {
            "grade_alpha": dict(model.scheme.grade_alpha),
            "grade_beta": dict(model.scheme.grade_beta),
            "halve_all_hazard_beta": model.scheme.halve_all_hazard_beta,
        },
        "hazards": [
            {
                "id": h.id,
                "name": h.name,
                "baseline_probability": h.baseline_probability,
                "baseline_consequences": {
                    k: reports.Dollars(v) if k in ("property_damage", "crop_damage")
                    else v
                    for k, v in h.baseline_consequences.items()
                },
            }
            for h in model.hazards
        ],
        "projects": [
            {
                "id": p.id,
                "name": p.name,
                "cost": reports.Dollars(p.cost),
                "grade": p.grade,
                "all_hazard": p.all_hazard,
                "hazards": sorted(a.hazard_id for a in p.applicability),
                "reconstructed": _is_reconstructed(bundle, p.id),
            }
            for p in model.projects
        ],
    }


def _is_reconstructed(bundle: ModelBundle, project_id: int) -> bool:
    note = provenance_note(bundle, f"projects.{project_id}.applicability")
    cost_note = provenance_note(bundle, f"projects.{project_id}.cost") or ""
    return bool(note and "reconstruction" in note) or "approximate" in cost_note


def scenarios_document(bundle: ModelBundle) -> dict:
    return {
        "kind": "scenarios",
        "scenarios": [
            {
                "name": s.name,
                "has_scheme_override": s.scheme_override is not None,
                "has_consequence_override": bool(s.consequence_override),
                "budget_grid": [reports.Dollars(b) for b in s.budget_grid],
            }
            for s in bundle.scenarios.values()
        ],
    }


def create_app(bundle: ModelBundle, config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="hazmit", docs_url=None, redoc_url=None)
    # the explorer UI is served as static files from elsewhere
    from fastapi.middleware.cors import CORSMiddleware
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )

    def scenario_model(name: str | None):
        if not name:
            return bundle.model, None
        if name not in bundle.scenarios:
            raise IdentifierError(f"unknown scenario {name!r}")
        return apply_scenario(bundle.model, bundle.scenarios[name]), name

    @app.exception_handler(HazmitError)
    async def _hazmit_error(request: Request, exc: HazmitError):
        status, code = _status_for(exc)
        if status == 500:
            logger.exception("internal error on %s", request.url.path)
        return _error_response(status, code, str(exc), getattr(exc, "field", None))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        field = ".".join(str(p) for p in errors[0]["loc"][1:]) if errors else None
        return _error_response(400, "bad_request", "invalid request body", field)

    @app.exception_handler(Exception)
    async def _unhandled(request: Request, exc: Exception):
        logger.exception("unhandled error on %s", request.url.path)
        return _error_response(500, "internal_error", "internal server error")

    @app.get("/health")
    def health():
        return _machine({"status": "ok"})

    @app.get("/model")
    def model():
        return _machine(model_summary_document(bundle))

    @app.get("/scenarios")
    def scenarios():
        return _machine(scenarios_document(bundle))

    @app.post("/solve")
    def solve(body: SolveBody):
        model, scenario = scenario_model(body.scenario)
        request = SolveRequest(
            budget=body.budget,
            locked=frozenset(body.locked),
            banned=frozenset(body.banned),
            time_limit=config.request_timeout,
        )
        result = run_solve(model, request, config.max_free_exact)
        return _machine(reports.solve_document(request, result, scenario))

    @app.post("/sweep")
    def sweep(body: SweepBody):
        model, scenario = scenario_model(body.scenario)
        points = budget_sweep(
            model,
            body.budgets,
            locked=frozenset(body.locked),
            banned=frozenset(body.banned),
            time_limit=config.request_timeout,
        )
        return _machine(
            reports.sweep_document(points, sorted(body.locked),
                                   sorted(body.banned), scenario)
        )

    return app
