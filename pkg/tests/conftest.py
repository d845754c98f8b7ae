from __future__ import annotations

import sys

from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # one verdict line per acceptance criterion, printed outside capture so
    # the lines appear whether or not the criterion's test passed
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "ACCEPTANCE_RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        verdict = "PASS" if results[n] else "FAIL"
        terminalreporter.write_line(f"CRITERION {n}: {verdict}")
