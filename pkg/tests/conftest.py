import numpy as np
import pytest

from asymtop.params import validate_parameters

ACCEPTANCE_LINES = []


@pytest.fixture
def p123():
    return validate_parameters(1, 2, 3)


@pytest.fixture
def record_criterion():
    """Log one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" :: {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


SQ3 = np.sqrt(3.0)
K2_SPECTRUM = np.sort([12 - 2 * SQ3, 9.0, 12.0, 15.0, 12 + 2 * SQ3])
