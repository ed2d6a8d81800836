import pytest

_CRITERIA: dict[str, tuple[bool, str]] = {}


class CriterionRecorder:
    def __init__(self, key: str, title: str):
        self.key = key
        self.title = title
        _CRITERIA[key] = (False, f"{title} (did not finish)")

    def done(self, detail: str = "") -> None:
        _CRITERIA[self.key] = (True, f"{self.title}" + (f" -- {detail}" if detail else ""))


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion; it is marked PASS only if the test calls done()."""

    def make(key: str, title: str) -> CriterionRecorder:
        return CriterionRecorder(key, title)

    return make


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: [int(x) if x.isdigit() else x for x in k.replace(".", " ").split()]):
        ok, text = _CRITERIA[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {text}")
