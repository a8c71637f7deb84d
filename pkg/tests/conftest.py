from hypothesis import HealthCheck, settings

settings.register_profile(
    "cmlab",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("cmlab")


def pytest_terminal_summary(terminalreporter):
    lines = [
        value
        for rep in terminalreporter.stats.get("passed", []) + terminalreporter.stats.get("failed", [])
        for key, value in getattr(rep, "user_properties", [])
        if key == "acceptance"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
