"""Collects acceptance scoreboard lines and prints them after the run."""

scoreboard_lines: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    if not scoreboard_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in scoreboard_lines:
        terminalreporter.write_line(line)
