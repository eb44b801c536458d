import numpy as np
import pytest

from symtt import EPS_LIN, eigh, exchange_matrix, fourier_matrix, kron, schur, svd
from symtt.errors import NotHermitianError
from symtt.hamiltonian import pauli
from symtt.linalg import dagger, frob, rank_from_sigma

from conftest import random_complex, random_hermitian


def test_kron_pauli_x_gives_anti_identity():
    j4 = kron(pauli("x"), pauli("x"))
    assert np.array_equal(j4, exchange_matrix(4))


def test_kron_identity_block_diagonal(rng):
    a = random_complex(rng, 3, 3)
    out = kron(np.eye(2), a)
    expect = np.zeros((6, 6), complex)
    expect[:3, :3] = a
    expect[3:, 3:] = a
    assert np.array_equal(out, expect)


def test_kron_pauli_y_squared_real_antidiagonal():
    out = kron(pauli("y"), pauli("y"))
    expect = np.zeros((4, 4), complex)
    expect[0, 3], expect[1, 2], expect[2, 1], expect[3, 0] = -1, 1, 1, -1
    assert np.allclose(out, expect, atol=0)
    assert np.max(np.abs(out.imag)) == 0


def test_kron_associative_bilinear(rng):
    a, b, c = (random_complex(rng, 2, 3), random_complex(rng, 3, 2), random_complex(rng, 2, 2))
    left = kron(kron(a, b), c)
    right = kron(a, kron(b, c))
    assert frob(left - right) <= EPS_LIN * frob(left)
    z = 0.7 - 0.3j
    assert np.allclose(kron(z * a, b), z * kron(a, b))
    a2 = random_complex(rng, 2, 3)
    assert np.allclose(kron(a + a2, b), kron(a, b) + kron(a2, b))


def test_exchange_kron_identity():
    for m in range(1, 17):
        for n in range(1, 17):
            assert np.array_equal(kron(exchange_matrix(m), exchange_matrix(n)), exchange_matrix(m * n))


def test_exchange_basics():
    assert np.array_equal(exchange_matrix(2), pauli("x"))
    assert np.array_equal(exchange_matrix(1), np.eye(1))
    j8 = exchange_matrix(8)
    assert np.array_equal(j8 @ j8, np.eye(8))


def test_svd_identity_and_diagonal():
    assert np.allclose(svd(np.eye(3)).sigma, [1, 1, 1])
    assert np.allclose(svd(np.diag([3.0, 0.0])).sigma, [3, 0])


def test_svd_gram_oracle(rng):
    a = random_complex(rng, 4, 3)
    sigma = svd(a).sigma
    gram_eigs = np.sort(np.linalg.eigvalsh(dagger(a) @ a))[::-1]
    assert np.allclose(sigma**2, gram_eigs, atol=1e-12)


def test_svd_phase_convention(rng):
    a = random_complex(rng, 5, 4)
    u, s, vh = svd(a)
    assert frob(u @ np.diag(s) @ vh - a) <= EPS_LIN * frob(a)
    for k in range(u.shape[1]):
        z = u[np.argmax(np.abs(u[:, k])), k]
        assert abs(z.imag) < 1e-13 and z.real >= 0


def test_rank_cutoff():
    assert rank_from_sigma(np.array([1.0, 0.5, 1e-14])) == 2
    assert rank_from_sigma(np.array([1.0, 0.5, 1e-14]), tol=0.6) == 1
    assert rank_from_sigma(np.array([0.0])) == 1


def test_eigh_pauli():
    res = eigh(pauli("x"))
    assert np.allclose(res.values, [-1, 1])
    res = eigh(pauli("z"))
    assert np.allclose(res.values, [-1, 1])
    # already diagonal: eigenvectors are the flipped standard basis
    assert np.allclose(np.abs(res.vectors), [[0, 1], [1, 0]])


def test_eigh_rejects_non_hermitian(rng):
    with pytest.raises(NotHermitianError):
        eigh(random_complex(rng, 3, 3))


def test_eigh_residual_oracle(rng):
    a = random_hermitian(rng, 8)
    w, v = eigh(a)
    assert frob(a @ v - v * w[None, :]) <= EPS_LIN * frob(a) * 10
    assert frob(dagger(v) @ v - np.eye(8)) <= 1e-13
    assert np.all(np.diff(w) >= 0)


def test_eigh_real_symmetric_real_vectors(rng):
    a = rng.standard_normal((6, 6))
    a = 0.5 * (a + a.T)
    _, v = eigh(a)
    assert np.max(np.abs(v.imag)) < EPS_LIN


def test_schur_cases(rng):
    q, t = schur(np.diag([2.0, 5.0]))
    assert set(np.round(np.diag(t).real, 12)) == {2.0, 5.0}
    q, t = schur(pauli("x"))
    assert {round(z.real, 12) for z in np.diag(t)} == {1.0, -1.0}
    assert frob(np.tril(t, -1)) < EPS_LIN
    a = random_complex(rng, 6, 6)
    q, t = schur(a)
    assert frob(dagger(q) @ t @ q - a) <= EPS_LIN * frob(a) * 10
    assert frob(np.tril(t, -1)) <= EPS_LIN * frob(a)


def test_fourier_matrix():
    assert np.allclose(fourier_matrix(1), [[1]])
    f2 = fourier_matrix(2)
    assert np.allclose(f2, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    f4 = fourier_matrix(4)
    assert frob(dagger(f4) @ f4 - np.eye(4)) <= EPS_LIN


def test_reconstruction_sweep(rng):
    for _ in range(100):
        n = int(rng.integers(2, 33))
        m = int(rng.integers(2, 33))
        a = random_complex(rng, n, m)
        u, s, vh = svd(a)
        assert frob(u @ np.diag(s) @ vh - a) <= EPS_LIN * frob(a)
        h = random_hermitian(rng, n)
        w, v = eigh(h)
        assert frob(v @ np.diag(w) @ dagger(v) - h) <= EPS_LIN * frob(h) * 10
        sq = random_complex(rng, n, n)
        q, t = schur(sq)
        assert frob(dagger(q) @ t @ q - sq) <= EPS_LIN * frob(sq) * 10
