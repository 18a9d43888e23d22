import numpy as np
import pytest
from hypothesis import settings

from qwalk.walk import DEFAULT_SPINOR, make_initial

settings.register_profile("qwalk", max_examples=40, deadline=None)
settings.load_profile("qwalk")

SPINORS = [
    DEFAULT_SPINOR,
    (1.0, 0.0),
    (0.6, 0.8j),
]

RHOS = [0.0, 0.25, 0.5, 0.75, 1.0]


@pytest.fixture
def default_initial():
    return make_initial(*DEFAULT_SPINOR)


def random_spinor(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return complex(v[0]), complex(v[1])


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE = {}


def record(number, title, ok, detail):
    ACCEPTANCE[number] = (title, bool(ok), detail)
    line = f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
