"""Builders for 1D spin-chain Hamiltonians as sums of local operator strings.

A Hamiltonian is a list of terms, each a real coefficient times a Kronecker
product of per-site d x d matrices (d = 2 for spin-1/2, d = 3 for spin-1);
identity factors are stored as ``None`` to keep term lists compact.  Dense
assembly, closed-form spectra of transverse-field strings, the diagonal
transform removing the y-component of anisotropic XY fields, structure
certification, and ground-state extraction all operate on this one term form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParamsError, ShapeMismatchError, TooLargeError, UnknownModelError, UnknownNameError, ZeroSiteError
from .linalg import EPS_LIN, as_cmatrix, eigh, fourier_matrix, frob, kron_chain
from .structured import EPS_STRUCT, StructureFlags, classify

#: dense assembly guard
MAX_DENSE_DIM = 2**20
#: full-eigendecomposition guard for ground states
MAX_EIG_DIM = 1024

_PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
    "i": np.eye(2, dtype=np.complex128),
}

_SQ2 = 1.0 / np.sqrt(2.0)
_SPIN1 = {
    "x": _SQ2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128),
    "y": _SQ2 * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=np.complex128),
    "i": np.eye(3, dtype=np.complex128),
}

MODEL_NAMES = (
    "ising_zz",
    "heis_xx",
    "heis_xy",
    "heis_xz",
    "heis_xxx",
    "heis_xxz",
    "heis_xyz",
    "hx",
    "hy",
    "hz",
    "hxx",
    "hyy",
    "hzz",
    "aklt",
    "bilinear_biquadratic",
)

TABLE_MODELS = MODEL_NAMES[:7]


def pauli(name: str) -> np.ndarray:
    """Pauli matrix (or 2x2 identity for name 'i')."""
    try:
        return _PAULI[name].copy()
    except KeyError:
        raise UnknownNameError(f"unknown Pauli name {name!r}; expected x, y, z or i") from None


def spin1(name: str) -> np.ndarray:
    """Spin-1 operator (or 3x3 identity for name 'i')."""
    try:
        return _SPIN1[name].copy()
    except KeyError:
        raise UnknownNameError(f"unknown spin-1 name {name!r}; expected x, y, z or i") from None


@dataclass(frozen=True)
class LocalTermSpec:
    """One Hamiltonian summand: coeff times a product of per-site factors.

    ``factors`` has one entry per site; ``None`` marks an identity factor.
    """

    coeff: float
    factors: tuple[np.ndarray | None, ...]

    def __post_init__(self):
        if not math.isfinite(self.coeff):
            raise BadParamsError("term coefficient must be finite")
        if len(self.factors) < 1:
            raise BadParamsError("a term needs at least one site")
        dims = {f.shape[0] for f in self.factors if f is not None}
        if len(dims) > 1:
            raise ShapeMismatchError(f"mixed local dimensions in one term: {sorted(dims)}")
        for f in self.factors:
            if f is not None and f.shape[0] != f.shape[1]:
                raise ShapeMismatchError("local factors must be square")


@dataclass(frozen=True)
class HamiltonianSpec:
    p: int
    d: int
    boundary: str
    terms: tuple[LocalTermSpec, ...]
    name: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.boundary not in ("open", "periodic"):
            raise BadParamsError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        for t in self.terms:
            if len(t.factors) != self.p:
                raise ShapeMismatchError("every term must have one factor per site")


def _one_site(p: int, k: int, op: np.ndarray, coeff: float) -> LocalTermSpec:
    factors: list[np.ndarray | None] = [None] * p
    factors[k] = op
    return LocalTermSpec(coeff, tuple(factors))


def _two_site(p: int, k: int, l: int, op_k: np.ndarray, op_l: np.ndarray, coeff: float) -> LocalTermSpec:
    factors: list[np.ndarray | None] = [None] * p
    factors[k] = op_k
    factors[l] = op_l
    return LocalTermSpec(coeff, tuple(factors))


def _bonds(p: int, boundary: str) -> list[tuple[int, int]]:
    bonds = [(k, k + 1) for k in range(p - 1)]
    if boundary == "periodic":
        bonds.append((0, p - 1))
    return bonds


def _pair_sum(p: int, boundary: str, op: np.ndarray, coeff: float) -> list[LocalTermSpec]:
    return [_two_site(p, k, l, op, op, coeff) for k, l in _bonds(p, boundary)]


def _field_sum(p: int, op: np.ndarray, coeff: float) -> list[LocalTermSpec]:
    return [_one_site(p, k, op, coeff) for k in range(p)]


def _spin1_bond_terms(p: int, boundary: str, lin: float, quad: float) -> list[LocalTermSpec]:
    """Bilinear and biquadratic spin-1 bond terms.

    The biquadratic square expands over operator products:
    (sum_mu A_mu x B_mu)^2 = sum_{mu,nu} (A_mu A_nu) x (B_mu B_nu),
    which keeps every summand in single-factor-per-site form.
    """
    ops = [spin1("x"), spin1("y"), spin1("z")]
    terms: list[LocalTermSpec] = []
    for k, l in _bonds(p, boundary):
        if lin != 0.0:
            for s in ops:
                terms.append(_two_site(p, k, l, s, s, lin))
        if quad != 0.0:
            for s1 in ops:
                for s2 in ops:
                    prod = s1 @ s2
                    terms.append(_two_site(p, k, l, prod, prod, quad))
    return terms


_PARAM_KEYS = {"jx", "jy", "jz", "lam", "theta"}


def model(name: str, p: int, params: dict | None = None, boundary: str = "open") -> HamiltonianSpec:
    """Build the term list of a named model.

    Couplings default to jx = jy = jz = 1, the transverse field to lam = 0 for
    the named chain models and lam = 1 for the bare field strings hx/hy/hz;
    theta defaults to 0.  Spin-1 models (aklt, bilinear_biquadratic) take no
    field term.
    """
    if name not in MODEL_NAMES:
        raise UnknownModelError(f"unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")
    if p < 1:
        raise BadParamsError(f"site count must be >= 1, got {p}")
    if boundary not in ("open", "periodic"):
        raise BadParamsError(f"boundary must be 'open' or 'periodic', got {boundary!r}")
    params = dict(params or {})
    unknown = set(params) - _PARAM_KEYS
    if unknown:
        raise BadParamsError(f"unknown parameters: {sorted(unknown)}")
    for key, val in params.items():
        if not math.isfinite(float(val)):
            raise BadParamsError(f"parameter {key} must be finite")
    jx = float(params.get("jx", 1.0))
    jy = float(params.get("jy", 1.0))
    jz = float(params.get("jz", 1.0))
    theta = float(params.get("theta", 0.0))

    px, py, pz = pauli("x"), pauli("y"), pauli("z")
    terms: list[LocalTermSpec] = []
    d = 2
    if name == "ising_zz":
        lam = float(params.get("lam", 0.0))
        terms += _pair_sum(p, boundary, pz, jz)
        terms += _field_sum(p, px, lam)
    elif name == "heis_xx":
        lam = float(params.get("lam", 0.0))
        terms += _pair_sum(p, boundary, px, jx)
        terms += _pair_sum(p, boundary, py, jx)
        terms += _field_sum(p, px, lam)
    elif name == "heis_xy":
        lam = float(params.get("lam", 0.0))
        terms += _pair_sum(p, boundary, px, jx)
        terms += _pair_sum(p, boundary, py, jy)
        terms += _field_sum(p, px, lam)
    elif name == "heis_xz":
        lam = float(params.get("lam", 0.0))
        terms += _pair_sum(p, boundary, px, jx)
        terms += _pair_sum(p, boundary, pz, jz)
        terms += _field_sum(p, px, lam)
    elif name == "heis_xxx":
        lam = float(params.get("lam", 0.0))
        for op in (px, py, pz):
            terms += _pair_sum(p, boundary, op, jx)
        terms += _field_sum(p, px, lam)
    elif name == "heis_xxz":
        lam = float(params.get("lam", 0.0))
        terms += _pair_sum(p, boundary, px, jx)
        terms += _pair_sum(p, boundary, py, jx)
        terms += _pair_sum(p, boundary, pz, jz)
        terms += _field_sum(p, px, lam)
    elif name == "heis_xyz":
        lam = float(params.get("lam", 0.0))
        terms += _pair_sum(p, boundary, px, jx)
        terms += _pair_sum(p, boundary, py, jy)
        terms += _pair_sum(p, boundary, pz, jz)
        terms += _field_sum(p, px, lam)
    elif name in ("hx", "hy", "hz"):
        lam = float(params.get("lam", 1.0))
        terms += _field_sum(p, pauli(name[1]), lam)
    elif name in ("hxx", "hyy", "hzz"):
        coeff = {"hxx": jx, "hyy": jy, "hzz": jz}[name]
        terms += _pair_sum(p, boundary, pauli(name[1]), coeff)
    elif name == "aklt":
        d = 3
        terms += _spin1_bond_terms(p, boundary, 1.0, 1.0 / 3.0)
    elif name == "bilinear_biquadratic":
        d = 3
        terms += _spin1_bond_terms(p, boundary, math.cos(theta), math.sin(theta))
    if not terms:
        terms = [_one_site(p, 0, np.zeros((d, d), dtype=np.complex128), 0.0)]
    return HamiltonianSpec(p=p, d=d, boundary=boundary, terms=tuple(terms), name=name, params=params)


def assemble(spec: HamiltonianSpec) -> np.ndarray:
    """Dense d^p x d^p matrix of the term sum."""
    dim = spec.d**spec.p
    if dim > MAX_DENSE_DIM:
        raise TooLargeError(f"dense assembly of dimension {dim} exceeds the {MAX_DENSE_DIM} guard")
    ident = np.eye(spec.d, dtype=np.complex128)
    h = np.zeros((dim, dim), dtype=np.complex128)
    for term in spec.terms:
        h += term.coeff * kron_chain(ident if f is None else f for f in term.factors)
    return h


def closed_form_hx_spectrum(p: int, r=None) -> np.ndarray:
    """All 2^p signed sums +-r_1 +-r_2 ... +-r_p, sorted ascending.

    With r omitted (all ones) this is the exact spectrum of the uniform
    transverse string; with site weights it covers the anisotropic case.
    """
    if r is None:
        r = np.ones(p)
    r = np.asarray(r, dtype=float)
    if len(r) != p:
        raise ShapeMismatchError(f"need {p} site weights, got {len(r)}")
    sums = np.zeros(1)
    for rk in r:
        sums = np.concatenate([sums - rk, sums + rk])
    return np.sort(sums)


def anisotropic_xy_transform(a, b) -> tuple[list[np.ndarray], np.ndarray]:
    """Per-site diagonal unitaries turning an anisotropic XY field string into
    a pure X string with weights r_k = sqrt(a_k^2 + b_k^2).

    Conjugating the assembled field sum of a_k X_k + b_k Y_k by the Kronecker
    product of the returned 2x2 diagonals yields the assembled sum of
    r_k X_k.
    """
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape or av.ndim != 1:
        raise ShapeMismatchError("site weight lists a and b must be 1-D of equal length")
    r = np.hypot(av, bv)
    if np.any(r == 0.0):
        raise ZeroSiteError("every site needs (a_k, b_k) != (0, 0)")
    d_list = [np.diag([1.0, np.exp(1j * np.arctan2(bk, ak))]) for ak, bk in zip(av, bv)]
    return d_list, r


def fourier_conjugate(h, p: int) -> np.ndarray:
    """Conjugate a 2^p-dimensional operator by the p-fold Kronecker power of
    the 2x2 Fourier matrix (which is real symmetric involutory)."""
    m = as_cmatrix(h)
    if m.shape != (2**p, 2**p):
        raise ShapeMismatchError(f"expected shape {(2**p, 2**p)}, got {m.shape}")
    f = kron_chain([fourier_matrix(2)] * p)
    return f @ m @ f


def certify_structure(spec: HamiltonianSpec, tol: float = EPS_STRUCT) -> StructureFlags:
    """Classify the assembled matrix of the model."""
    return classify(assemble(spec), tol=tol)


@dataclass(frozen=True)
class SpectrumReport:
    values: np.ndarray
    ground_energy: float
    ground_vector: np.ndarray
    gap: float


def ground_state(spec: HamiltonianSpec) -> SpectrumReport:
    """Full spectrum plus the lowest eigenpair of a (small) model."""
    dim = spec.d**spec.p
    if dim > MAX_EIG_DIM:
        raise TooLargeError(f"full eigendecomposition of dimension {dim} exceeds the {MAX_EIG_DIM} guard")
    h = assemble(spec)
    res = eigh(h)
    values = res.values
    gap = float(values[1] - values[0]) if len(values) > 1 else 0.0
    vec = np.ascontiguousarray(res.vectors[:, 0])
    residual = frob(h @ vec - values[0] * vec)
    assert residual <= max(EPS_LIN * frob(h) * 10, 1e-9), "eigenpair residual out of bounds"
    return SpectrumReport(values=values, ground_energy=float(values[0]), ground_vector=vec, gap=gap)
