import pytest
from hypothesis import HealthCheck, settings

from partmon import fixture

from .strategies import NAMED

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(params=NAMED, ids=lambda p: f"{p[0]}-{p[1]}")
def named_game(request):
    return fixture(*request.param)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
