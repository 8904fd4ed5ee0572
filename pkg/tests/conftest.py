from hypothesis import settings

# fixed seed for every property suite
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=120)
settings.load_profile("repro")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
