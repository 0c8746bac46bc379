import pytest

from sumfree import SchurParams, make_grid_set


@pytest.fixture
def classical():
    return SchurParams(1, 1)


def grid(n, *pts, dim=2):
    return make_grid_set(n, dim, list(pts))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
