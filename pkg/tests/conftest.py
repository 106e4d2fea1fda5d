from __future__ import annotations

import pytest

from twistfill.catalog_io import get_system
from twistfill.twist_engine import construct_family


@pytest.fixture(scope="session")
def g2():
    return get_system("g2_i4")


@pytest.fixture(scope="session")
def g3():
    return get_system("g3_i5")


@pytest.fixture(scope="session")
def bigon():
    return get_system("bigon_fixture")


@pytest.fixture(scope="session")
def families(g2):
    return {d: construct_family(g2, "a", "b", d) for d in (2, 3, 4)}


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    def record(n: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[n] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
