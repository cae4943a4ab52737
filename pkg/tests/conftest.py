"""
Shared graph fixtures
"""
import pytest

from coxout.config import get_settings
from coxout.models.graph import LabelledGraph
from coxout.services.graph_service import cycle_graph, discrete_graph, path_graph


def make_g_va(labels=None) -> LabelledGraph:
    """x and y share the link {c1, c2}; z hangs off c1"""
    return LabelledGraph.build(
        ["x", "y", "c1", "c2", "z"],
        [("x", "c1"), ("x", "c2"), ("y", "c1"), ("y", "c2"), ("c1", "c2"), ("z", "c1")],
        labels,
    )


def make_one_separating() -> LabelledGraph:
    """STIL (x1,x2,x3 | x4) over c; only st(x1) separates the other two"""
    return LabelledGraph.build(
        ["x1", "x2", "x3", "x4", "c", "u", "w"],
        [("c", "x1"), ("c", "x2"), ("c", "x3"), ("c", "x4"),
         ("u", "x1"), ("u", "x3"), ("w", "x1"), ("w", "x2")],
    )


def make_two_separating() -> LabelledGraph:
    """STIL (x1,x2,x3 | x4) over c; st(x1) and st(x2) separate, st(x3) does not"""
    return LabelledGraph.build(
        ["x1", "x2", "x3", "x4", "c", "u", "w"],
        [("c", "x1"), ("c", "x2"), ("c", "x3"), ("c", "x4"),
         ("w", "x1"), ("w", "x2"), ("u", "x3"), ("u", "w")],
    )


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch, tmp_path):
    """Every test runs in its own directory with freshly read settings"""
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def p3() -> LabelledGraph:
    return path_graph(["a", "b", "c"])


@pytest.fixture
def square() -> LabelledGraph:
    return cycle_graph(["a", "b", "c", "d"])


@pytest.fixture
def path5() -> LabelledGraph:
    return path_graph(["a", "b", "c", "d", "e"])


@pytest.fixture
def k13() -> LabelledGraph:
    return LabelledGraph.build(["m", "x", "y", "z"], [("m", "x"), ("m", "y"), ("m", "z")])


@pytest.fixture
def k14() -> LabelledGraph:
    return LabelledGraph.build(
        ["m", "x1", "x2", "x3", "z"],
        [("m", "x1"), ("m", "x2"), ("m", "x3"), ("m", "z")],
    )


@pytest.fixture
def disc3() -> LabelledGraph:
    return discrete_graph(["a", "b", "c"])


@pytest.fixture
def disc4() -> LabelledGraph:
    return discrete_graph(["x1", "x2", "x3", "x4"])


@pytest.fixture
def gamma31() -> LabelledGraph:
    """Four vertices, one edge"""
    return LabelledGraph.build(["a", "b", "c", "d"], [("a", "b")])


@pytest.fixture
def g_va() -> LabelledGraph:
    return make_g_va()


@pytest.fixture
def g_va_heavy() -> LabelledGraph:
    return make_g_va({"x": 3})


@pytest.fixture
def one_separating() -> LabelledGraph:
    return make_one_separating()


@pytest.fixture
def two_separating() -> LabelledGraph:
    return make_two_separating()
