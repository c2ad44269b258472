import numpy as np
import pytest

from qrotor import bitalgebra


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=bitalgebra.available_backends())
def backend(request):
    return request.param


def random_complex(rng, size):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    results = test_acceptance.RESULTS
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    passed = sum(ok for ok, _ in results.values())
    terminalreporter.write_line(f"{passed}/{len(results)} criteria pass")
