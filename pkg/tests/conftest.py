import pytest

from telegraph_taylor import catalog, solver


@pytest.fixture(scope="session")
def builtins():
    return {name: catalog.builtin(name) for name in catalog.NAMES}


@pytest.fixture(scope="session")
def symbolic_solutions(builtins):
    return {name: solver.solve(b.problem) for name, b in builtins.items()}


_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record the outcome line of an acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n])
