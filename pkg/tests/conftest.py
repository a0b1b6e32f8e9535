import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def derived():
    """(report, seconds) of one derive_certificate run shared by the whole session."""
    from flagdom.certificate import derive_certificate

    t0 = time.perf_counter()
    report = derive_certificate()
    return report, time.perf_counter() - t0


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
