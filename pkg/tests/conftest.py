def pytest_terminal_summary(terminalreporter):
    """Print the acceptance criteria lines collected by test_acceptance.py."""
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(results):
        terminalreporter.write_line(results[tag])
