import pytest

from magicplanes.geometry import build_plane, fano_plane


@pytest.fixture(scope="session")
def planes():
    return {q: build_plane(q) for q in (2, 3, 4, 5, 7, 8, 9)}


@pytest.fixture(scope="session")
def fano():
    """Fano plane in the textbook enumeration x1..x7, L1..L7 (0-based here)."""
    return fano_plane()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(results, key=lambda r: r.number):
        terminalreporter.write_line(r.line())
