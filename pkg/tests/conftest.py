import os
from decimal import Decimal, getcontext
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from mathcert.harness import shipped_candidate_dir, shipped_manifest_dir

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def manifest_dir() -> Path:
    return shipped_manifest_dir()


@pytest.fixture(scope="session")
def candidate_dir() -> Path:
    return shipped_candidate_dir()


def gauss_legendre_pi(digits: int) -> Decimal:
    """pi by the Gauss-Legendre AGM iteration, independent of the library's series."""
    ctx = getcontext().copy()
    ctx.prec = digits + 15
    a, b, t, p = Decimal(1), ctx.divide(1, ctx.sqrt(Decimal(2))), Decimal("0.25"), Decimal(1)
    for _ in range(digits.bit_length() + 3):
        an = ctx.divide(ctx.add(a, b), 2)
        b = ctx.sqrt(ctx.multiply(a, b))
        t = ctx.subtract(t, ctx.multiply(p, ctx.power(ctx.subtract(a, an), 2)))
        a, p = an, ctx.multiply(2, p)
    return ctx.divide(ctx.power(ctx.add(a, b), 2), ctx.multiply(4, t))


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(acceptance_log.LINES):
            terminalreporter.write_line(acceptance_log.LINES[n])
