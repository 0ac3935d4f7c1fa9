import os

import pytest

from nilsheets import ratlinalg

LONG = os.environ.get("NILSHEETS_LONG", "") not in ("", "0")


def pytest_configure(config):
    # every solve and nullspace in the suite is checked by back-substitution
    ratlinalg.check_mode(True)


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="set NILSHEETS_LONG=1 to run E7/E8")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def _no_user_cache(monkeypatch):
    monkeypatch.delenv("NILSHEETS_CACHE_DIR", raising=False)


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``criterion(n, ok, detail)`` records a result line and asserts ``ok``."""
    def record(n, ok, detail=""):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE[n] = line
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        terminalreporter.write_line(ACCEPTANCE.get(n, f"criterion {n:>2}: NOT RUN (E7/E8 need NILSHEETS_LONG=1)" if n == 10
                                                  else f"criterion {n:>2}: NOT RUN"))
