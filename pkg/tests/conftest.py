import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# -- acceptance verdict lines ---------------------------------------------------------

import pytest

_LINES = {}


@pytest.fixture
def verdict(request):
    """Record one ``PASS``/``FAIL`` line for an acceptance criterion."""

    def record(criterion, ok, detail):
        _LINES[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} -- {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_LINES):
        terminalreporter.write_line(_LINES[key])
