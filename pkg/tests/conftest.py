"""Shared fixtures: benchmark evidence sets and random-BBA generators."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from credfuse import Frame, MassFunction

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture(scope="session")
def frame3() -> Frame:
    return Frame(("A1", "A2", "A3"))


@pytest.fixture(scope="session")
def fault_case(frame3):
    """Five sensor reports over three fault hypotheses; sensor 5 is disturbed.

    A standard multi-sensor benchmark: plain Dempster combination picks the
    wrong hypothesis here, credibility-weighted schemes recover.
    """
    rows = [
        {"A1": 0.70, "A2": 0.10, "A1,A2,A3": 0.20},
        {"A1": 0.70, "A1,A2,A3": 0.30},
        {"A1": 0.65, "A2": 0.15, "A1,A2,A3": 0.20},
        {"A1": 0.75, "A3": 0.05, "A1,A2,A3": 0.20},
        {"A2": 0.20, "A3": 0.80},
    ]
    return [MassFunction(frame3, row) for row in rows]


@pytest.fixture(scope="session")
def conflict_case(frame3):
    """Five reports with a compound focal set; report 2 conflicts, report 3
    gives the strongest support to the first hypothesis."""
    rows = [
        {"A1": 0.40, "A2": 0.28, "A3": 0.30, "A1,A3": 0.02},
        {"A1": 0.01, "A2": 0.90, "A3": 0.08, "A1,A3": 0.01},
        {"A1": 0.63, "A2": 0.06, "A3": 0.01, "A1,A3": 0.30},
        {"A1": 0.60, "A2": 0.09, "A3": 0.01, "A1,A3": 0.30},
        {"A1": 0.60, "A2": 0.09, "A3": 0.01, "A1,A3": 0.30},
    ]
    return [MassFunction(frame3, row) for row in rows]


@pytest.fixture(scope="session")
def close_pair():
    """Two nearby four-hypothesis reports differing only in frame mass."""
    frame = Frame(("A1", "A2", "A3", "A4"))
    m1 = MassFunction(frame, {"A1": 0.75, "A2": 0.10, "A3": 0.10, "A1,A2,A3,A4": 0.05})
    m2 = MassFunction(frame, {"A1": 0.65, "A2": 0.10, "A3": 0.10, "A1,A2,A3,A4": 0.15})
    return m1, m2


@pytest.fixture(scope="session")
def iris_path() -> Path:
    return DATA_DIR / "iris.csv"


def random_mass_function(rng: np.random.Generator, frame: Frame,
                         max_focals: int = 5, omega_floor: float = 0.0) -> MassFunction:
    """A random sparse BBA; ``omega_floor`` reserves mass for the full frame
    (handy to keep combination away from total conflict)."""
    n_subsets = (1 << frame.n) - 1
    k = int(rng.integers(1, min(max_focals, n_subsets) + 1))
    masks = rng.choice(n_subsets, size=k, replace=False) + 1
    weights = rng.random(k) + 1e-3
    weights = weights / weights.sum() * (1.0 - omega_floor)
    masses = {int(mask): float(w) for mask, w in zip(masks, weights)}
    if omega_floor > 0.0:
        masses[frame.full_mask] = masses.get(frame.full_mask, 0.0) + omega_floor
    return MassFunction(frame, masses)
