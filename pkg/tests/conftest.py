import pytest

import hypercat

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session", autouse=True)
def warm_backend():
    # pay any jit compile cost before timed tests run
    hypercat.warmup()


def record_criterion(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in _acceptance_lines:
        terminalreporter.write_line(line)
