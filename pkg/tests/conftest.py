import numpy as np
import pytest

from symtt import MPSState


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit_vector(rng, n):
    v = random_complex(rng, n)
    return v / np.linalg.norm(v)


def random_hermitian(rng, n):
    a = random_complex(rng, n, n)
    return 0.5 * (a + a.conj().T)


def random_sym_persym(rng, n, complex_ok=False):
    """Random (real by default) symmetric persymmetric matrix."""
    a = random_complex(rng, n, n) if complex_ok else rng.standard_normal((n, n))
    a = 0.5 * (a + a.T)
    return 0.5 * (a + a[::-1, ::-1])


def random_sym_skew_persym(rng, n):
    a = rng.standard_normal((n, n))
    a = 0.5 * (a + a.T)
    return 0.5 * (a - a[::-1, ::-1])


def random_mps(rng, p, d, boundary="open"):
    """Random chain with uniform interior bond dimension d."""
    dims = [1] + [d] * (p - 1) + [1] if boundary == "open" else [d] * (p + 1)
    sites = [
        (random_complex(rng, dims[j], dims[j + 1]), random_complex(rng, dims[j], dims[j + 1]))
        for j in range(p)
    ]
    return MPSState(sites, boundary=boundary)
