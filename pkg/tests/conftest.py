import pytest


@pytest.fixture
def report(capsys):
    """Print one visible verdict line per acceptance criterion, then assert it."""
    def emit(label: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}"
        if detail:
            line += f": {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit
