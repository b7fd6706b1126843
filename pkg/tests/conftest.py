import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 11):
        if num in results:
            ok, detail = results[num]
            terminalreporter.write_line(f"ACCEPTANCE criterion {num}: {'PASS' if ok else 'FAIL'} {detail}")
        else:
            terminalreporter.write_line(f"ACCEPTANCE criterion {num}: NOT RUN")
