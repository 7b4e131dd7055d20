"""Command-line interface.

Subcommands: evaluate, solve, sweep, scenario, estimate, serve.  Exit
codes: 0 success, 1 usage error, 2 data error, 3 infeasible request.
``--format machine`` emits the canonical byte format also served over
HTTP; the default is a human-readable table.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import reports
from .bundle import (
    CANONICAL_COLUMNS,
    STORM_EVENTS_COLUMNS,
    load_bundle,
    load_event_csv,
    load_shipped_bundle,
)
from .errors import (
    BundleError,
    CapacityError,
    DomainError,
    HazmitError,
    IdentifierError,
    InfeasibleError,
    RecordError,
    SchemaError,
    UsageError,
    ValidationError,
)
from .estimation import SeverityCriteria, clamped_probability, estimate_hazard
from .model import Portfolio, per_hazard_loss, portfolio_cost, total_expected_loss
from .scenarios import apply_scenario
from .solver import SolveRequest, budget_sweep, greedy_incumbent, solve_exact

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INFEASIBLE = 3

#: Above this many free projects, interactive solves fall back to greedy.
DEFAULT_MAX_FREE_EXACT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _id_list(text: str) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _budget_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}")


def _load(args):
    path = args.bundle or os.environ.get("HAZMIT_BUNDLE")
    return load_bundle(path) if path else load_shipped_bundle()


def _scenario_model(bundle, scenario_name):
    if not scenario_name:
        return bundle.model, None
    if scenario_name not in bundle.scenarios:
        raise IdentifierError(f"unknown scenario {scenario_name!r}")
    return apply_scenario(bundle.model, bundle.scenarios[scenario_name]), scenario_name


def run_solve(model, request: SolveRequest, max_free_exact: int = DEFAULT_MAX_FREE_EXACT):
    """Exact solve with automatic greedy fallback on oversized requests."""
    free = len(model.projects) - len(request.locked) - len(request.banned)
    if free > max_free_exact:
        logger.warning(
            "%d free projects exceed the exact-solve limit %d; "
            "falling back to greedy", free, max_free_exact,
        )
        return greedy_incumbent(model, request)
    return solve_exact(model, request)


def _emit(args, document):
    payload = reports.write_report(document, args.format)
    sys.stdout.buffer.write(payload)
    sys.stdout.buffer.flush()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_evaluate(args) -> int:
    bundle = _load(args)
    model, scenario = _scenario_model(bundle, args.scenario)
    portfolio = Portfolio.of(_id_list(args.select))
    breakdown = per_hazard_loss(model, portfolio)
    document = reports.evaluate_document(
        selected=sorted(portfolio.selected),
        objective=total_expected_loss(model, portfolio),
        spent=portfolio_cost(model, portfolio),
        per_hazard=breakdown,
        scenario=scenario,
    )
    _emit(args, document)
    return EXIT_OK


def _cmd_solve(args) -> int:
    bundle = _load(args)
    model, scenario = _scenario_model(bundle, args.scenario)
    request = SolveRequest(
        budget=args.budget,
        locked=_id_list(args.lock),
        banned=_id_list(args.ban),
        time_limit=args.time_limit,
    )
    result = run_solve(model, request)
    _emit(args, reports.solve_document(request, result, scenario))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    bundle = _load(args)
    model, scenario = _scenario_model(bundle, args.scenario)
    if args.budgets:
        budgets = _budget_list(args.budgets)
    elif args.budget_range:
        try:
            start, stop, step = (float(x) for x in args.budget_range.split(":"))
        except ValueError:
            raise UsageError("--budget-range expects START:STOP:STEP")
        if step <= 0:
            raise UsageError("--budget-range step must be positive")
        budgets = []
        value = start
        while value <= stop * (1 + 1e-12):
            budgets.append(round(value, 6))
            value += step
    else:
        raise UsageError("one of --budgets or --budget-range is required")
    locked = _id_list(args.lock)
    banned = _id_list(args.ban)
    points = budget_sweep(model, budgets, locked=locked, banned=banned)
    _emit(args, reports.sweep_document(points, sorted(locked), sorted(banned), scenario))
    return EXIT_OK


def _cmd_scenario(args) -> int:
    bundle = _load(args)
    if args.name not in bundle.scenarios:
        raise IdentifierError(f"unknown scenario {args.name!r}")
    model = apply_scenario(bundle.model, bundle.scenarios[args.name])
    request = SolveRequest(budget=args.budget)
    result = run_solve(model, request)
    _emit(args, reports.solve_document(request, result, args.name))
    return EXIT_OK


def _cmd_estimate(args) -> int:
    if args.columns == "storm":
        column_map = STORM_EVENTS_COLUMNS
    elif args.columns == "canonical":
        column_map = CANONICAL_COLUMNS
    else:
        with open(args.columns, "r", encoding="utf-8") as fh:
            column_map = json.load(fh)
    events = load_event_csv(args.events, column_map)
    if args.criteria:
        with open(args.criteria, "r", encoding="utf-8") as fh:
            criteria = SeverityCriteria(**json.load(fh))
    else:
        criteria = SeverityCriteria()
    estimate = estimate_hazard(events, criteria, args.span_years, args.cutoff_year)
    clamped_probability(estimate.annual_probability)  # warn when rate > 1
    _emit(args, reports.estimate_document(estimate))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    bundle = _load(args)
    port = args.port or int(os.environ.get("HAZMIT_PORT", "8000"))
    config = ServiceConfig(host=args.host, port=port)
    app = create_app(bundle, config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hazmit",
                     description="Hazard-mitigation portfolio decision support")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--bundle", help="bundle path (default: shipped Iowa bundle, "
                                        "or HAZMIT_BUNDLE)")
        p.add_argument("--format", choices=("machine", "table"), default="table")

    p = sub.add_parser("evaluate", help="expected loss of a fixed selection")
    common(p)
    p.add_argument("--select", default="", help="comma-separated project ids")
    p.add_argument("--scenario", default=None)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("solve", help="optimal selection for one budget")
    common(p)
    p.add_argument("--budget", type=float, required=True)
    p.add_argument("--lock", default="", help="ids forced into the selection")
    p.add_argument("--ban", default="", help="ids forced out of the selection")
    p.add_argument("--scenario", default=None)
    p.add_argument("--time-limit", type=float, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="solve across a grid of budgets")
    common(p)
    p.add_argument("--budgets", default=None, help="comma-separated dollars")
    p.add_argument("--budget-range", default=None, help="START:STOP:STEP dollars")
    p.add_argument("--lock", default="")
    p.add_argument("--ban", default="")
    p.add_argument("--scenario", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("scenario", help="solve under a named scenario")
    common(p)
    p.add_argument("--name", required=True)
    p.add_argument("--budget", type=float, required=True)
    p.set_defaults(func=_cmd_scenario)

    p = sub.add_parser("estimate", help="hazard parameters from incident CSV")
    p.add_argument("--events", required=True, help="incident CSV path")
    p.add_argument("--criteria", default=None, help="severity criteria JSON")
    p.add_argument("--span-years", type=float, required=True)
    p.add_argument("--cutoff-year", type=int, default=1980)
    p.add_argument("--columns", default="storm",
                   help="'storm', 'canonical', or a JSON column-map file")
    p.add_argument("--format", choices=("machine", "table"), default="table")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bundle", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (BundleError, ValidationError, SchemaError, RecordError,
            IdentifierError, DomainError, CapacityError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except HazmitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
