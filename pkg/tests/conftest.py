from pathlib import Path

import pytest

from conceptspaces import euclidean_space, fixture_path
from conceptspaces.formats import build_model, load_cspace

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def plane():
    return euclidean_space(["x", "y"], -10, 10)


def model(name, seed=42):
    return build_model(load_cspace(fixture_path(name)), seed=seed)
