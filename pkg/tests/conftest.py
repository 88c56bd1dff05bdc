import importlib.resources

import pytest

from pstnet.fileio import parse_graph_text


def _example(name: str) -> str:
    ref = importlib.resources.files("pstnet") / "data" / "corona_examples" / name
    return ref.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def signed_square():
    """The net-regular balanced signed quadrilateral (transfer pairs (0,2), (1,3))."""
    return parse_graph_text(_example("example01.graph"))


@pytest.fixture(scope="session")
def unbalanced_k4():
    """Unbalanced net-regular K4 with a negative perfect matching."""
    return parse_graph_text(_example("example04.graph"))
