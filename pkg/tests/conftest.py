import pytest

from jacobiuniv import _kernels
from jacobiuniv.measure import make_model_bulk, make_model_edge
from jacobiuniv.orthopoly import jacobi_recurrence, symmetric_singular_recurrence

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.write_line(line)


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    impl = _kernels.BACKENDS[request.param]
    for name in ("rkpw", "recur_eval", "kernel_sum"):
        monkeypatch.setattr(_kernels, name, getattr(impl, name))
    return request.param


@pytest.fixture(scope="session")
def legendre():
    return jacobi_recurrence(0.0, 0.0, 1025)


@pytest.fixture(scope="session")
def bulk1():
    return make_model_bulk(1.0), symmetric_singular_recurrence(1.0, 1025)


@pytest.fixture(scope="session")
def edge1():
    return make_model_edge(1.0), jacobi_recurrence(1.0, 0.0, 1025)
