import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _mp_precision():
    mpmath.mp.dps = 40
    yield


_ACCEPTANCE: dict[str, list[tuple[str, bool, str]]] = {}


@pytest.fixture
def record():
    """Record ``(criterion, label, ok, detail)`` for the end-of-run acceptance table."""

    def _record(criterion: str, label: str, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.setdefault(criterion, []).append((label, bool(ok), detail))
        print(f"criterion {criterion} [{label}]: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=int):
        parts = _ACCEPTANCE[crit]
        ok = all(p[1] for p in parts)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        for label, sub_ok, detail in parts:
            tr.write_line(f"    {'pass' if sub_ok else 'FAIL'}  {label}: {detail}")
