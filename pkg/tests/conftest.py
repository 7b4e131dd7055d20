import random

import pytest

from hazmit.bundle import load_shipped_bundle
from hazmit.model import (
    CONSEQUENCE_KINDS,
    Applicability,
    ConsequenceWeights,
    EffectivenessScheme,
    Hazard,
    Project,
    RiskModel,
)

BASE_SCHEME = EffectivenessScheme(
    grade_alpha={"A": 0.90, "B": 0.925, "C": 0.95, "D": 0.975},
    grade_beta={"A": 0.80, "B": 0.85, "C": 0.90, "D": 0.95},
    halve_all_hazard_beta=True,
)

_CONSEQUENCE_SCALE = {
    "fatalities": 50.0,
    "injuries": 500.0,
    "property_damage": 1e8,
    "crop_damage": 5e7,
    "customers_without_power": 10_000.0,
    "businesses_closed": 1_000.0,
}


@pytest.fixture(scope="session")
def iowa_bundle():
    return load_shipped_bundle()


@pytest.fixture(scope="session")
def iowa_model(iowa_bundle):
    return iowa_bundle.model


def random_model(rng: random.Random, n_hazards=None, n_projects=8) -> RiskModel:
    """Small random instance where every project affects some positive term."""
    n_hazards = n_hazards or rng.randint(2, 5)
    hazards = []
    for i in range(n_hazards):
        consequences = {}
        for kind in CONSEQUENCE_KINDS:
            if rng.random() < 0.35:
                consequences[kind] = 0.0
            else:
                consequences[kind] = rng.uniform(0.1, 1.0) * _CONSEQUENCE_SCALE[kind]
        if all(v == 0.0 for v in consequences.values()):
            consequences["property_damage"] = rng.uniform(1e5, 1e7)
        hazards.append(
            Hazard(
                id=f"h{i}",
                name=f"Hazard {i}",
                baseline_probability=rng.uniform(0.005, 0.7),
                baseline_consequences=consequences,
            )
        )

    weights = ConsequenceWeights(
        weights={
            "fatalities": rng.uniform(1e6, 2e7),
            "injuries": rng.uniform(1e5, 2e6),
            "property_damage": 1.0,
            "crop_damage": 1.0,
            "customers_without_power": rng.uniform(1e2, 1e4),
            "businesses_closed": rng.uniform(1e3, 1e6),
        }
    )

    def sorted4(lo, hi):
        values = sorted(rng.uniform(lo, hi) for _ in range(4))
        return dict(zip("ABCD", values))

    scheme = EffectivenessScheme(
        grade_alpha=sorted4(0.7, 1.0),
        grade_beta=sorted4(0.5, 1.0),
        halve_all_hazard_beta=rng.random() < 0.5,
    )

    projects = []
    for pid in range(1, n_projects + 1):
        all_hazard = rng.random() < 0.15
        if all_hazard:
            covered = list(range(n_hazards))
        else:
            count = rng.randint(1, max(1, n_hazards // 2 + 1))
            covered = sorted(rng.sample(range(n_hazards), count))
        apps = []
        for idx in covered:
            kinds = frozenset(
                k for k in CONSEQUENCE_KINDS if rng.random() < 0.5
            )
            apps.append(
                Applicability(
                    hazard_id=f"h{idx}",
                    reduces_probability=rng.random() < 0.4,
                    reduced_consequences=kinds,
                )
            )
        if not any(a.reduces_probability or a.reduced_consequences for a in apps):
            apps[0] = Applicability(
                hazard_id=apps[0].hazard_id,
                reduces_probability=True,
                reduced_consequences=apps[0].reduced_consequences,
            )
        projects.append(
            Project(
                id=pid,
                name=f"Project {pid}",
                cost=float(rng.randint(5_000, 2_000_000)),
                grade=rng.choice("ABCD"),
                all_hazard=all_hazard,
                applicability=tuple(apps),
            )
        )

    return RiskModel(
        hazards=tuple(hazards),
        weights=weights,
        projects=tuple(projects),
        scheme=scheme,
        budget=0.0,
    )
