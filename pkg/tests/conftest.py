def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS

    ran = {r.nodeid for reports in terminalreporter.stats.values() for r in reports if hasattr(r, "nodeid")}
    if not any("test_criterion" in nodeid for nodeid in ran):
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        ok, detail = RESULTS.get(number, (False, "did not complete"))
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title} [{detail}]")
