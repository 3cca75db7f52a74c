import json
from pathlib import Path

import pytest

from signedflow.core import build_graph

FROZEN = json.loads((Path(__file__).parent / "oracles" / "frozen.json").read_text())


@pytest.fixture
def frozen():
    return FROZEN


@pytest.fixture
def d2():
    return build_graph([("a", "b", "+"), ("a", "b", "-")])


@pytest.fixture
def sb():
    return build_graph([("v", "v", "-"), ("v", "v", "-")])


@pytest.fixture
def lb():
    """Long barbell: negative loops at 0 and 1 joined by edge 1."""
    return build_graph([(0, 0, "-"), (0, 1, "+"), (1, 1, "-")])


@pytest.fixture
def k4():
    return build_graph([(0, 1, "+"), (0, 2, "+"), (0, 3, "+"), (1, 2, "+"), (1, 3, "+"), (2, 3, "+")])
