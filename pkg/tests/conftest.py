from hypothesis import HealthCheck, settings

settings.register_profile("sjw", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("sjw")

import pytest


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion; lines are echoed in the terminal summary."""
    lines = request.config.__dict__.setdefault("_sjw_acceptance", [])

    def record(label, ok, detail=""):
        line = "%s criterion %s%s" % ("PASS" if ok else "FAIL", label, (": " + detail) if detail else "")
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_sjw_acceptance")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
