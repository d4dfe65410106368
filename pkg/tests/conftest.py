import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
    missing = sorted(set(mod.TITLES) - set(results))
    for n in missing:
        terminalreporter.write_line(f"[FAIL] criterion {n:2d}: {mod.TITLES[n]} | did not run")
