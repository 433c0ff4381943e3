import pytest


@pytest.fixture
def verdict_line(capsys, request):
    """Print one PASS/FAIL line per acceptance criterion, outside pytest's capture."""

    def emit(number: int, ok: bool, detail: str) -> bool:
        with capsys.disabled():
            print(f"\n[ACCEPTANCE {number:>2}] {'PASS' if ok else 'FAIL'} {request.node.name}: {detail}")
        return ok

    return emit
