import pytest

# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")


@pytest.fixture
def acceptance_report():
    def report(num: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[num] = (bool(ok), detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    return report
