import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

_verdicts: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, ok: bool | None, detail: str) -> bool | None:
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        line = f"criterion {number:2d}: {status}  {detail}"
        _verdicts.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _verdicts:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_verdicts):
            terminalreporter.write_line(line)
