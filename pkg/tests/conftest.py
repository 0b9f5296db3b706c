import pytest
from hypothesis import strategies as st

from capchart import canonicalize

_acceptance_lines = []


@st.composite
def feasible_sizings(draw):
    """Sizings in the feasible triangle: a1 in [1/3, 1/2], (1 - a1)/2 <= a2 <= a1."""
    a1 = draw(st.floats(1 / 3, 0.5))
    u = draw(st.floats(0, 1))
    lo = min((1 - a1) / 2, a1)
    a2 = lo + u * (a1 - lo)
    return canonicalize((a1, a2, max(0.0, 1.0 - a1 - a2)))


@pytest.fixture
def criterion():
    """Record one acceptance line; returns the passed flag so tests can assert it."""
    def record(number, text, passed):
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {text}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
