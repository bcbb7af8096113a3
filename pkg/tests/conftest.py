"""Shared test plumbing: surface the acceptance-criterion verdict lines in
the terminal summary, where pytest's capture cannot swallow them."""

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
