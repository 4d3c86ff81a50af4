import numpy as np
import pytest

from qthermo import backend


@pytest.fixture(params=["numba", "numpy"])
def kernel_backend(request):
    """Run a test under each kernel backend, restoring the default after."""
    previous = backend.active_name()
    try:
        backend.use(request.param)
    except ImportError:
        pytest.skip(f"backend {request.param} unavailable")
    yield request.param
    backend.use(previous)


def random_hermitian(dim, rng):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
