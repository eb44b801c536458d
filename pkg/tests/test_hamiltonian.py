import numpy as np
import pytest

from symtt import (
    anisotropic_xy_transform,
    assemble,
    certify_structure,
    classify,
    closed_form_hx_spectrum,
    eigh,
    fourier_conjugate,
    ground_state,
    kron,
    model,
    pauli,
    spin1,
)
from symtt.errors import BadParamsError, TooLargeError, UnknownModelError, UnknownNameError, ZeroSiteError
from symtt.hamiltonian import TABLE_MODELS, HamiltonianSpec, LocalTermSpec
from symtt.linalg import dagger, frob


def test_pauli_entries():
    assert np.array_equal(pauli("x"), [[0, 1], [1, 0]])
    assert np.array_equal(pauli("y"), [[0, -1j], [1j, 0]])
    assert np.array_equal(pauli("z"), [[1, 0], [0, -1]])
    assert np.array_equal(pauli("i"), np.eye(2))
    with pytest.raises(UnknownNameError):
        pauli("q")


def test_spin1_entries():
    s = 1 / np.sqrt(2)
    assert np.array_equal(spin1("z"), np.diag([1.0, 0.0, -1.0]))
    assert np.allclose(spin1("x"), s * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]))
    casimir = spin1("x") @ spin1("x") + spin1("y") @ spin1("y") + spin1("z") @ spin1("z")
    assert np.allclose(casimir, 2 * np.eye(3))
    with pytest.raises(UnknownNameError):
        spin1("w")


def test_assemble_ising_p2():
    h = assemble(model("ising_zz", 2, {"lam": 0.0}, "open"))
    assert np.allclose(h, np.diag([1.0, -1.0, -1.0, 1.0]))


def test_assemble_single_site():
    assert np.array_equal(assemble(model("hx", 1)), pauli("x"))


def test_assemble_heisenberg_xxx_p2():
    h = assemble(model("heis_xxx", 2, {"jx": 1.0, "lam": 0.0}, "open"))
    want = np.array([[1, 0, 0, 0], [0, -1, 2, 0], [0, 2, -1, 0], [0, 0, 0, 1]], dtype=complex)
    assert np.allclose(h, want)
    # independent Kronecker-sum oracle
    direct = sum(kron(pauli(c), pauli(c)) for c in "xyz")
    assert np.allclose(h, direct)


def test_model_term_counts():
    assert len(model("ising_zz", 4, {"lam": 1.0}, "open").terms) == 3 + 4
    assert len(model("hxx", 4, boundary="periodic").terms) == 4
    assert len(model("hxx", 4, boundary="open").terms) == 3
    assert len(model("aklt", 3, boundary="open").terms) == 2 * (3 + 9)
    assert len(model("heis_xyz", 5, boundary="periodic").terms) == 3 * 5 + 5


def test_model_rejects_bad_input():
    with pytest.raises(UnknownModelError):
        model("nope", 3)
    with pytest.raises(BadParamsError):
        model("ising_zz", 3, {"bogus": 1.0})
    with pytest.raises(BadParamsError):
        model("ising_zz", 3, {"lam": float("nan")})


def test_assemble_guard():
    with pytest.raises(TooLargeError):
        assemble(model("hx", 21))


def test_closed_form_spectrum_examples():
    assert np.array_equal(closed_form_hx_spectrum(3), [-3, -1, -1, -1, 1, 1, 1, 3])
    assert np.array_equal(closed_form_hx_spectrum(1, [5.0]), [-5, 5])


def test_closed_form_matches_dense_eigh():
    r = [0.3, 1.1, 2.0]
    terms = []
    for k, rk in enumerate(r):
        fac = [None] * 3
        fac[k] = pauli("x")
        terms.append(LocalTermSpec(rk, tuple(fac)))
    h = assemble(HamiltonianSpec(p=3, d=2, boundary="open", terms=tuple(terms)))
    got = eigh(h).values
    want = closed_form_hx_spectrum(3, r)
    assert np.max(np.abs(got - want)) < 1e-10


def test_hx_spectrum_small_p():
    for p in (2, 3, 4, 5, 6):
        got = eigh(assemble(model("hx", p))).values
        assert np.max(np.abs(got - closed_form_hx_spectrum(p))) < 1e-10


def test_anisotropic_xy_transform_basics():
    d_list, r = anisotropic_xy_transform([1.0], [0.0])
    assert np.allclose(r, [1.0])
    assert np.allclose(d_list[0], np.eye(2))
    _, r = anisotropic_xy_transform([3.0], [4.0])
    assert np.allclose(r, [5.0])
    assert np.array_equal(closed_form_hx_spectrum(1, r), [-5, 5])
    with pytest.raises(ZeroSiteError):
        anisotropic_xy_transform([0.0, 1.0], [0.0, 1.0])


def _xy_field_hamiltonian(a, b):
    p = len(a)
    terms = []
    for k, (ak, bk) in enumerate(zip(a, b)):
        fac = [None] * p
        fac[k] = ak * pauli("x") + bk * pauli("y")
        terms.append(LocalTermSpec(1.0, tuple(fac)))
    return assemble(HamiltonianSpec(p=p, d=2, boundary="open", terms=tuple(terms)))


def test_anisotropic_xy_conjugation_oracle():
    a = [1.0, 0.5]
    b = [0.2, 2.0]
    han = _xy_field_hamiltonian(a, b)
    d_list, r = anisotropic_xy_transform(a, b)
    d = kron(d_list[0], d_list[1])
    target = _xy_field_hamiltonian(list(r), [0.0, 0.0])
    assert frob(dagger(d) @ han @ d - target) < 1e-12


def test_fourier_conjugate():
    assert frob(fourier_conjugate(assemble(model("hx", 2)), 2) - assemble(model("hz", 2))) < 1e-12
    assert frob(fourier_conjugate(assemble(model("hxx", 3)), 3) - assemble(model("hzz", 3))) < 1e-12
    assert frob(fourier_conjugate(np.eye(8), 3) - np.eye(8)) < 1e-12


def test_certify_structure_examples(rng):
    params = {"jx": float(rng.uniform(-1, 1)), "jy": float(rng.uniform(-1, 1)), "jz": float(rng.uniform(-1, 1)), "lam": float(rng.uniform(-1, 1))}
    flags = certify_structure(model("heis_xyz", 4, params, "open"))
    assert flags.symmetric and flags.persymmetric
    flags = certify_structure(model("hz", 3))
    assert flags.diagonal and flags.skew_persymmetric
    flags = certify_structure(model("hyy", 3))
    assert flags.symmetric and flags.persymmetric
    h = assemble(model("hyy", 3))
    assert np.max(np.abs(h.imag)) < 1e-12


def test_hy_structure():
    h = assemble(model("hy", 3))
    assert frob(h - dagger(h)) < 1e-12 * frob(h)
    assert np.max(np.abs(np.diag(h))) < 1e-14
    assert np.max(np.abs(h.real)) < 1e-14  # purely imaginary off-diagonal entries
    hi = h / 1j
    flags = classify(hi)
    assert flags.skew_symmetric and flags.persymmetric


def test_aklt_bond_expansion_oracle():
    # direct dense evaluation of S.S + (S.S)^2/3 on two sites
    h = assemble(model("aklt", 2))
    ss = sum(kron(spin1(c), spin1(c)) for c in "xyz")
    assert frob(h - (ss + (ss @ ss) / 3.0)) < 1e-14
    # total-spin coupling fixes the spectrum: -2/3 on the 4-dimensional
    # S_tot <= 1 space, +4/3 on the 5-dimensional S_tot = 2 space
    values = eigh(h).values
    assert np.allclose(values[:4], -2.0 / 3.0, atol=1e-12)
    assert np.allclose(values[4:], 4.0 / 3.0, atol=1e-12)


def test_bilinear_biquadratic_expansion_oracle():
    theta = 0.4
    h = assemble(model("bilinear_biquadratic", 2, {"theta": theta}))
    ss = sum(kron(spin1(c), spin1(c)) for c in "xyz")
    assert frob(h - (np.cos(theta) * ss + np.sin(theta) * (ss @ ss))) < 1e-14


def test_spin1_models_structure():
    for name in ("aklt", "bilinear_biquadratic"):
        for p in (2, 3):
            flags = certify_structure(model(name, p, {"theta": 0.4} if name != "aklt" else None))
            assert flags.symmetric and flags.persymmetric
            h = assemble(model(name, p, {"theta": 0.4} if name != "aklt" else None))
            assert np.max(np.abs(h.imag)) < 1e-12


def test_table_models_structure(rng):
    for name in TABLE_MODELS:
        for boundary in ("open", "periodic"):
            params = {"jx": 1.0, "jy": 0.5, "jz": 0.3, "lam": 0.7}
            h = assemble(model(name, 4, params, boundary))
            assert frob(h - dagger(h)) < 1e-12 * frob(h)
            assert np.max(np.abs(h.imag)) < 1e-12
            flags = classify(h)
            assert flags.symmetric and flags.persymmetric


def test_ground_state_hx_p2():
    rep = ground_state(model("hx", 2))
    assert np.isclose(rep.ground_energy, -2.0)
    want = np.array([1, -1, -1, 1]) / 2.0
    assert np.allclose(rep.ground_vector, want)


def test_ground_state_scaled_field():
    lam = 0.37
    rep = ground_state(model("hx", 1, {"lam": lam}))
    assert np.isclose(rep.ground_energy, -lam)


def test_ground_state_ising_oracle():
    spec = model("ising_zz", 4, {"lam": 1.0}, "open")
    rep = ground_state(spec)
    h = assemble(spec)
    want = np.linalg.eigvalsh(h)
    assert abs(rep.ground_energy - want[0]) < 1e-10
    assert np.isclose(rep.gap, want[1] - want[0])
    v = rep.ground_vector
    j = np.fliplr(np.eye(16))
    assert min(np.linalg.norm(j @ v - v), np.linalg.norm(j @ v + v)) < 1e-8


def test_ground_state_guard():
    with pytest.raises(TooLargeError):
        ground_state(model("hx", 11))


def test_ground_vectors_j_symmetry(rng):
    for name in ("heis_xy", "heis_xxz"):
        spec = model(name, 4, {"jx": 0.9, "jy": 0.4, "jz": 1.3, "lam": 0.6}, "open")
        rep = ground_state(spec)
        if rep.gap > 1e-8:
            v = rep.ground_vector
            j = np.fliplr(np.eye(len(v)))
            assert min(np.linalg.norm(j @ v - v), np.linalg.norm(j @ v + v)) < 1e-8
