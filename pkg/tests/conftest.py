import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from modsingular.theta import catalog, harmonic_theta, scalar_theta  # noqa: E402


@pytest.fixture(scope="session")
def theta_e8():
    return scalar_theta(catalog("E8"), 2, 2)


@pytest.fixture(scope="session")
def theta_a2():
    return scalar_theta(catalog("A2"), 3, 4)


@pytest.fixture(scope="session")
def harmonic_a2():
    """Sym^6-valued harmonic theta series of A2 in degree 3 and its coefficient."""
    return harmonic_theta(catalog("A2"), 3, 6, 4)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MODSINGULAR_CACHE_DIR", str(tmp_path / "cache"))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
