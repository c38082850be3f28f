import functools

import pytest

from g2syl.ffield import FieldSpec
from g2syl.matgroup import G2Syl

_acceptance: dict[str, str] = {}


@functools.lru_cache(maxsize=None)
def group(q: int) -> G2Syl:
    return G2Syl(FieldSpec.from_order(q))


@functools.lru_cache(maxsize=None)
def pattern_space(q: int):
    from g2syl.orbits import PatternSpace
    return PatternSpace(group(q))


@functools.lru_cache(maxsize=None)
def character_table(q: int):
    from g2syl.chartable import CharacterTable
    return CharacterTable(group(q))


@pytest.fixture(scope="session")
def G3():
    return group(3)


@pytest.fixture(scope="session")
def G5():
    return group(5)


@pytest.fixture(scope="session")
def G7():
    return group(7)


@pytest.fixture(scope="session")
def space5():
    return pattern_space(5)


@pytest.fixture(scope="session")
def ctab5():
    return character_table(5)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
