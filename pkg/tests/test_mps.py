import numpy as np
import pytest

from symtt import (
    MPSState,
    check_gauge,
    check_vidal,
    eval_component,
    from_vector,
    strong_normalize,
    to_vector,
    truncate,
    two_site_sweep,
    vidal_from_vector,
    vidal_to_a,
)
from symtt.errors import GaugeViolationError, NotNormalizedError, ShapeMismatchError, ZeroVectorError
from symtt.linalg import dagger
from symtt.mps import _tt_cores

from conftest import random_complex, random_mps, random_unit_vector


def ghz(p):
    x = np.zeros(2**p)
    x[0] = x[-1] = 1 / np.sqrt(2)
    return x


def scalar_ti(a0, a1, p):
    pair = (np.array([[a0]], dtype=complex), np.array([[a1]], dtype=complex))
    return MPSState([pair] * p, boundary="periodic")


def matricization_svals(x, j):
    """Oracle: singular values of the bit-split (i_1..i_j) x (i_{j+1}..i_p)."""
    p = int(np.log2(len(x)))
    return np.linalg.svd(x.reshape(2**j, 2 ** (p - j)), compute_uv=False)


# ------------------------------------------------------------- evaluation

def test_eval_component_scalar_ti():
    m = scalar_ti(1.0, 0.0, 4)
    assert eval_component(m, [0, 0, 0, 0]) == 1
    assert eval_component(m, [0, 1, 0, 0]) == 0


def test_eval_component_identity_pair():
    pair = (np.eye(2, dtype=complex), np.zeros((2, 2), dtype=complex))
    m = MPSState([pair] * 3, boundary="periodic")
    assert eval_component(m, [0, 0, 0]) == 2
    assert eval_component(m, [1, 0, 0]) == 0


def test_eval_component_matches_vector(rng):
    x = random_complex(rng, 16)
    m = from_vector(x)
    for idx in range(16):
        bits = [(idx >> (3 - k)) & 1 for k in range(4)]
        assert abs(eval_component(m, bits) - x[idx]) < 1e-12


def test_to_vector_all_ones():
    assert np.allclose(to_vector(scalar_ti(1.0, 1.0, 3)), np.ones(8))


def test_to_vector_product_state():
    sites = [(np.array([[1.0]]), np.array([[0.0]]))] * 4
    x = to_vector(MPSState(sites, boundary="open"))
    want = np.zeros(16)
    want[0] = 1
    assert np.allclose(x, want)


def test_to_vector_matches_eval(rng):
    m = random_mps(rng, 4, 3, boundary="periodic")
    x = to_vector(m)
    for idx in range(16):
        bits = [(idx >> (3 - k)) & 1 for k in range(4)]
        assert abs(x[idx] - eval_component(m, bits)) < 1e-12


# ------------------------------------------------------------ decomposition

def test_from_vector_basis_state():
    m = from_vector(np.eye(16)[0])
    assert m.dims == (1, 1, 1, 1, 1)
    assert abs(abs(eval_component(m, [0, 0, 0, 0])) - 1) < 1e-14


def test_from_vector_ghz_dims():
    assert from_vector(ghz(4)).dims == (1, 2, 2, 2, 1)


def test_from_vector_roundtrip_sweep(rng):
    for _ in range(20):
        x = random_complex(rng, 2**8)
        m = from_vector(x)
        assert np.linalg.norm(to_vector(m) - x) < 1e-12 * np.linalg.norm(x)


def test_from_vector_dims_bounded(rng):
    x = random_complex(rng, 2**7)
    dims = from_vector(x).dims
    for j, d in enumerate(dims):
        assert d <= min(2**j, 2 ** (7 - j))


def test_from_vector_rejects_zero():
    with pytest.raises(ZeroVectorError):
        from_vector(np.zeros(8))
    with pytest.raises(ShapeMismatchError):
        from_vector(np.ones(6))


def test_from_vector_truncation_oracle(rng):
    x = random_unit_vector(rng, 2**6)
    m = from_vector(x, tol=0.2)
    for j in range(1, 6):
        svals = matricization_svals(x, j)
        want = max(1, int(np.sum(svals > 0.2 * svals[0])))
        assert m.dims[j] == want


# ------------------------------------------------------------------ gauges

def test_check_gauge_from_vector(rng):
    x = random_unit_vector(rng, 2**5)
    rep = check_gauge(from_vector(x))
    assert max(rep.left) < 1e-12


def test_check_gauge_scalar_values():
    rep = check_gauge(scalar_ti(1.0, 1.0, 3))
    assert np.isclose(rep.left[0], 1.0)
    rep = check_gauge(scalar_ti(1 / np.sqrt(2), 1 / np.sqrt(2), 3))
    assert rep.left[0] < 1e-15


def test_gauge_freedom_invariance(rng):
    m = random_mps(rng, 5, 3)
    x = to_vector(m)
    sites = [list(pair) for pair in m.sites]
    for j in range(4):
        while True:
            g = random_complex(rng, 3, 3)
            if np.linalg.cond(g) < 1e3:
                break
        ginv = np.linalg.inv(g)
        sites[j] = [a @ g for a in sites[j]]
        sites[j + 1] = [ginv @ a for a in sites[j + 1]]
    m2 = MPSState([tuple(s) for s in sites], boundary="open")
    assert np.linalg.norm(to_vector(m2) - x) < 1e-12 * np.linalg.norm(x)


# ------------------------------------------------------------------- vidal

def test_vidal_product_state(rng):
    amps = random_unit_vector(rng, 2)
    x = amps[0] * np.array([1, 0]) + amps[1] * np.array([0, 1])
    full = np.kron(np.kron(x, x), x)
    full /= np.linalg.norm(full)
    v = vidal_from_vector(full)
    for lam in v.lambdas:
        assert np.allclose(lam, [1.0])


def test_vidal_ghz_lambdas():
    v = vidal_from_vector(ghz(4))
    for lam in v.lambdas:
        assert np.allclose(lam, [1 / np.sqrt(2)] * 2)


def test_vidal_requires_unit_norm(rng):
    with pytest.raises(NotNormalizedError):
        vidal_from_vector(2.0 * random_unit_vector(rng, 8))


def test_vidal_both_conditions(rng):
    x = random_unit_vector(rng, 2**6)
    v = vidal_from_vector(x)
    rep = check_vidal(v)
    assert max(rep.vidal_left) < 1e-10
    assert max(rep.vidal_right) < 1e-10
    for j, lam in enumerate(v.lambdas, start=1):
        oracle = matricization_svals(x, j)[: len(lam)]
        assert np.max(np.abs(lam - oracle)) < 1e-10


def test_vidal_schmidt_normalization(rng):
    v = vidal_from_vector(random_unit_vector(rng, 2**5))
    for lam in v.lambdas:
        assert abs(np.sum(lam**2) - 1.0) < 1e-12


def test_vidal_to_a_roundtrips(rng):
    x = random_unit_vector(rng, 2**5)
    v = vidal_from_vector(x)
    left = vidal_to_a(v, "left")
    right = vidal_to_a(v, "right")
    assert np.linalg.norm(to_vector(left) - x) < 1e-12
    assert np.linalg.norm(to_vector(right) - x) < 1e-12
    assert max(check_gauge(left).left) < 1e-12
    assert max(check_gauge(right).right) < 1e-12


def test_vidal_gamma_uniqueness_up_to_phases(rng):
    # phase-randomized copies of the same vector give the same |Lambda| and
    # the same |entries| of the Lambda Gamma products at nondegenerate bonds
    x = random_unit_vector(rng, 2**4)
    v1 = vidal_from_vector(x)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
    v2 = vidal_from_vector(phase * x)
    for l1, l2 in zip(v1.lambdas, v2.lambdas):
        assert np.allclose(l1, l2, atol=1e-10)
    a1 = vidal_to_a(v1, "left")
    a2 = vidal_to_a(v2, "left")
    for (p1, q1), (p2, q2) in zip(a1.sites, a2.sites):
        assert np.allclose(np.abs(p1), np.abs(p2), atol=1e-8)
        assert np.allclose(np.abs(q1), np.abs(q2), atol=1e-8)


# ------------------------------------------------------------------- sweeps

def test_sweep_idempotent_on_left_normalized(rng):
    x = random_unit_vector(rng, 2**5)
    m = from_vector(x)
    m2 = two_site_sweep(m, "left")
    assert np.linalg.norm(to_vector(m2) - x) < 1e-12
    assert max(check_gauge(m2).left[:-1]) < 1e-12


def test_sweep_random_pbc(rng):
    m = random_mps(rng, 4, 3, boundary="periodic")
    x = to_vector(m)
    for direction in ("left", "right"):
        m2 = two_site_sweep(m, direction)
        assert np.linalg.norm(to_vector(m2) - x) < 1e-12 * np.linalg.norm(x)
        rep = check_gauge(m2)
        residuals = rep.left if direction == "left" else rep.right
        assert max(residuals[:-1]) < 1e-12  # all but the carrier at site p


def test_sweep_rank_one_product(rng):
    sites = [(np.array([[0.6]]), np.array([[0.8]]))] * 3
    m2 = two_site_sweep(MPSState(sites, boundary="open"), "left")
    for a0, a1 in m2.sites[:-1]:
        assert abs(abs(a0[0, 0]) ** 2 + abs(a1[0, 0]) ** 2 - 1.0) < 1e-12


# ------------------------------------------------------------ strong form

def test_strong_normalize_site1_exact(rng):
    x = random_unit_vector(rng, 2**6)
    sn = strong_normalize(from_vector(x))
    a0, a1 = sn.sites[0]
    assert np.array_equal(a0, np.array([[1.0, 0.0]], dtype=complex))
    assert np.array_equal(a1, np.array([[0.0, 1.0]], dtype=complex))


def test_strong_normalize_preserves_and_diagonalizes(rng):
    for _ in range(5):
        x = random_unit_vector(rng, 2**6)
        m = from_vector(x)
        sn = strong_normalize(m)
        assert np.linalg.norm(to_vector(sn) - x) < 1e-12
        rep = check_gauge(sn)
        assert max(rep.strong) < 1e-10


def test_strong_normalize_product_state(rng):
    amps = random_unit_vector(rng, 2)
    x = np.kron(np.kron(amps, amps), amps)
    sn = strong_normalize(from_vector(x))
    for a0, a1 in sn.sites:
        g = dagger(a0) @ a0
        assert abs(g[0, 0].imag) < 1e-14
    assert np.linalg.norm(to_vector(sn) - x) < 1e-12


def test_strong_normalize_rejects_unnormalized(rng):
    m = random_mps(rng, 4, 2)
    with pytest.raises(GaugeViolationError):
        strong_normalize(m)


# -------------------------------------------------------------- truncation

def test_truncate_identity(rng):
    x = random_complex(rng, 2**5)
    m = from_vector(x)
    m2 = truncate(m, tol=0.0)
    assert np.linalg.norm(to_vector(m2) - x) < 1e-12 * np.linalg.norm(x)


def test_truncate_ghz_to_rank_one():
    x = ghz(4)
    m2 = truncate(from_vector(x), d_max=1)
    err = np.linalg.norm(to_vector(m2) - x)
    assert abs(err - 1 / np.sqrt(2)) < 1e-12


def test_truncate_monotone_and_bounded(rng):
    x = random_unit_vector(rng, 2**6)
    m = from_vector(x)
    errors = []
    for d_max in (1, 2, 3, 4, 8):
        m2 = truncate(m, d_max=d_max)
        err = np.linalg.norm(to_vector(m2) - x)
        # oracle bound: discarded Schmidt weight across all bit splits
        disc = 0.0
        for j in range(1, 6):
            svals = matricization_svals(x, j)
            disc += float(np.sum(svals[d_max:] ** 2))
        assert err <= np.sqrt(disc) + 1e-12
        errors.append(err)
    assert all(e1 >= e2 - 1e-12 for e1, e2 in zip(errors, errors[1:]))


# ------------------------------------------------------------ trace identities

def test_trace_identities(rng):
    a = random_complex(rng, 4, 4)
    b = random_complex(rng, 4, 4)
    assert abs(np.trace(a @ b) - np.trace(b @ a)) < 1e-12
    ar, br = np.real(a), np.real(b)
    assert abs(np.trace(ar @ br) - np.trace(br.T @ ar.T)) < 1e-12
    assert abs(np.trace(a @ b) - np.conj(np.trace(dagger(b) @ dagger(a)))) < 1e-12


def test_tt_core_singular_values_are_matricization_svals(rng):
    x = random_unit_vector(rng, 2**5)
    _, lambdas = _tt_cores(x, 0.0)
    for j, lam in enumerate(lambdas, start=1):
        oracle = matricization_svals(x, j)[: len(lam)]
        assert np.allclose(lam, oracle, atol=1e-12)
