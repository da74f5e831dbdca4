import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "pontgap",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pontgap")

# criterion number -> (name, passed); filled by tests/test_acceptance.py
_ACCEPTANCE_RESULTS = {}


@pytest.fixture
def acceptance():
    """Record a criterion verdict for the end-of-run summary."""

    def record(number, name, ok):
        _ACCEPTANCE_RESULTS[number] = (name, bool(ok))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_RESULTS):
        name, ok = _ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({name}): {verdict}")
