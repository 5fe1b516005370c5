import pytest

from projmono import corpus

ACCEPTANCE_LINES = []


def record(number, ok, detail):
    """Record one acceptance line (printed in the terminal summary) and return ok."""
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def polys():
    return {name: corpus.load_poly(name) for name in corpus.POLYS}
