"""Acceptance criteria A1-A7 at their stated tolerances.

Each test prints one PASS/FAIL line. Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

import pytest

from onlinecolor.suites import CRITERIA

LIMITS = {"A1": 120, "A2": 60, "A3": 60, "A4": 60, "A5": 120, "A6": 60, "A7": 300}


@pytest.mark.parametrize("name", sorted(CRITERIA))
def test_criterion(name, capsys):
    result = CRITERIA[name]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.seconds < LIMITS[name], f"{name} took {result.seconds:.1f}s"


if __name__ == "__main__":
    for name in sorted(CRITERIA):
        print(CRITERIA[name]().line(), flush=True)
