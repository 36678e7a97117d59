import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(report, "nodeid", ""))
            if not m or report.when not in ("call", "setup"):
                continue
            key = (int(m.group(1)), m.group(2).replace("_", " "))
            ok = outcome == "passed" and results.get(key, True)
            results[key] = ok
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(results.items()):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
