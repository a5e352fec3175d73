import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tfg import enumerate_genus_one  # noqa: E402

#: criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def classes_upto_20():
    """Every canonical genus-one class with rm <= rn <= 20."""
    return [c for rn in range(1, 21) for rm in range(1, rn + 1)
            for c in enumerate_genus_one(rm, rn)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
