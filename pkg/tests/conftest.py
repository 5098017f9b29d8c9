from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from bplarge.euclid import growth_experiment

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def acceptance():
    """record(n, ok, detail) keeps one line per acceptance criterion."""

    def record(n: int, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE[n] = (bool(ok), detail)
        return ok

    return record


@pytest.fixture(scope="session")
def growth_rows():
    # rank 2, lengths 10^2..10^4, 200 samples each
    return growth_experiment(2, [100, 1000, 10000], 200, seed=0)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}")
