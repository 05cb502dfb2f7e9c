import pytest

from bireconf.graph_core import BipGraph, build_graph


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def k4_plus3():
    """K4 on 0..3 plus isolated vertices 4, 5, 6."""
    return build_graph(7, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def k22():
    """K_{2,2} with sides {0, 1} and {2, 3}."""
    g = build_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    return BipGraph(g, frozenset({0, 1}), frozenset({2, 3}))


@pytest.fixture
def k33():
    g = build_graph(6, [(a, b) for a in range(3) for b in range(3, 6)])
    return BipGraph(g, frozenset({0, 1, 2}), frozenset({3, 4, 5}))


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance_line():
    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
