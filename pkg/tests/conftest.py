import time

from . import acceptance_log

_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_log.finalize(time.perf_counter() - _START)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
