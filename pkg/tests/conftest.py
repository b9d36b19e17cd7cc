# criterion number -> (passed, title, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


def format_acceptance(results) -> list[str]:
    lines = []
    for num in sorted(results):
        ok, title, detail = results[num]
        lines.append(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'} | {title} | {detail}")
    return lines


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in format_acceptance(ACCEPTANCE):
        terminalreporter.write_line(line)
