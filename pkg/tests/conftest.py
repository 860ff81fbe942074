import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion and assert on it."""
    lines = request.config.stash[_LINES]

    def record(number: int, title: str, legs):
        legs = list(legs)
        bad = [name for name, ok, _ in legs if not ok]
        status = "PASS" if not bad else "FAIL"
        detail = "; ".join("%s=%s%s" % (name, "ok" if ok else "FAILED", " (%s)" % note if note else "") for name, ok, note in legs)
        line = "criterion %d [%s] %s: %s" % (number, status, title, detail)
        lines.append(line)
        print(line)
        assert not bad, "failed legs: %s" % ", ".join(bad)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
