import pytest

from genus2lf.data import load_lantern, load_matsumoto, load_seed


@pytest.fixture(scope="session")
def seed():
    return load_seed()


@pytest.fixture(scope="session")
def matsumoto():
    return load_matsumoto()


@pytest.fixture(scope="session")
def lantern():
    return load_lantern()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
