from __future__ import annotations

import sys

import pytest

from qlie import hall


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    mp = pytest.MonkeyPatch()
    mp.setenv("QLIE_CACHE", str(tmp_path_factory.mktemp("qlie-cache")))
    hall._CACHES.clear()
    yield
    mp.undo()
    hall._CACHES.clear()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULT_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
