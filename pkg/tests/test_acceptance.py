"""One test per acceptance criterion; a pass/fail line per criterion is printed at the end of the run."""

from __future__ import annotations

import pytest
from acceptance import CRITERIA

RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n}")
def test_criterion(number):
    name, check = CRITERIA[number]
    passed, detail = check()
    RESULTS[number] = (name, passed, detail)
    print(f"criterion {number} ({name}): {'PASS' if passed else 'FAIL'}: {detail}")
    assert passed, detail


if __name__ == "__main__":
    for number in sorted(CRITERIA):
        name, check = CRITERIA[number]
        passed, detail = check()
        print(f"criterion {number} ({name}): {'PASS' if passed else 'FAIL'}: {detail}")
