import sys

import pytest

from partlat.closure import enumerate_all_partitions


@pytest.fixture(scope="session")
def part5():
    return enumerate_all_partitions(5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
