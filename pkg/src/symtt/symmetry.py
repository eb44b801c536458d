"""Vector symmetries, their MPS-level witnesses, and symmetry-adapted forms.

A component index is read as a bit string (i_1 ... i_p), i_1 most significant.
Three index actions generate everything here:

* cyclic shift      (i_1 ... i_p) -> (i_2 ... i_p i_1),
* global bit flip   i_k -> 1 - i_k  (the exchange matrix J on the vector),
* reversal          (i_1 ... i_p) -> (i_p ... i_1), combined with conjugation.

Each symmetry of the represented vector corresponds to relations between the
site matrices, certified by explicit witness matrices; the constructions below
build relation-satisfying representations from arbitrary ones and reduce the
witnesses to canonical (diagonal / triangular / Hermitian) form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotDiagonalizableError,
    NotHermitianError,
    ShapeMismatchError,
    SymmetryMismatchError,
    TooLargeError,
    WitnessViolationError,
    ZeroVectorError,
)
from .linalg import as_cmatrix, as_cvector, dagger, eigh, exchange_matrix, frob, schur, svd
from .mps import MPSState, from_vector, to_vector

#: default relative tolerance for symmetry detection and verification
EPS_SYM = 1e-10

DOF_MAX_P = 24

SYMMETRY_KINDS = ("bitshift", "reverse", "bitflip", "fullbit", "firstsite", "lastsite")


# ---------------------------------------------------------------- index maps

def _check_pow2(x: np.ndarray) -> int:
    n = len(x)
    p = n.bit_length() - 1
    if n < 2 or 2**p != n:
        raise ShapeMismatchError(f"vector length {n} is not a power of two >= 2")
    return p


def shift_perm(p: int, r: int = 1) -> np.ndarray:
    """Index permutation of the r-fold cyclic left bit shift."""
    idx = np.arange(2**p, dtype=np.int64)
    mask = 2**p - 1
    r = r % p
    return ((idx << r) & mask) | (idx >> (p - r))


def reverse_perm(p: int) -> np.ndarray:
    """Index permutation reversing the bit order."""
    idx = np.arange(2**p, dtype=np.int64)
    out = np.zeros_like(idx)
    for k in range(p):
        out |= ((idx >> k) & 1) << (p - 1 - k)
    return out


def shifted(x: np.ndarray, r: int = 1) -> np.ndarray:
    """Vector with components re-read at cyclically shifted bit indices."""
    return x[shift_perm(_check_pow2(x), r)]


def bit_reversed(x: np.ndarray) -> np.ndarray:
    return x[reverse_perm(_check_pow2(x))]


def flipped(x: np.ndarray) -> np.ndarray:
    """J x: all bits complemented, i.e. the entries in reverse order."""
    return x[::-1]


def symmetrize_shift(x, r: int = 1) -> np.ndarray:
    """Average over the cyclic group of r-bit shifts."""
    v = as_cvector(x)
    p = _check_pow2(v)
    if r < 1 or p % r:
        raise ShapeMismatchError(f"block length {r} must divide p = {p}")
    out = np.zeros_like(v)
    for k in range(0, p, r):
        out += v[shift_perm(p, k)]
    return out * (r / p)


def symmetrize_flip(x, sign: int = 1) -> np.ndarray:
    """Project onto J x = sign * x."""
    v = as_cvector(x)
    return 0.5 * (v + sign * v[::-1])


def symmetrize_reverse(x) -> np.ndarray:
    """Project onto x = conj(bit-reversed x)."""
    v = as_cvector(x)
    return 0.5 * (v + np.conj(bit_reversed(v)))


def detect_vector_symmetries(x, tol: float = EPS_SYM) -> set[str]:
    """Kinds present in x, by direct index checks within tol (relative).

    Possible entries: bitshift, reverse, bitflip+, bitflip-, firstsite+,
    firstsite-, lastsite+, lastsite-.
    """
    v = as_cvector(x)
    _check_pow2(v)
    thresh = tol * np.linalg.norm(v)
    found = set()
    if np.linalg.norm(v - shifted(v)) <= thresh:
        found.add("bitshift")
    if np.linalg.norm(v - np.conj(bit_reversed(v))) <= thresh:
        found.add("reverse")
    for sign, tag in ((1, "bitflip+"), (-1, "bitflip-")):
        if np.linalg.norm(v - sign * v[::-1]) <= thresh:
            found.add(tag)
    half = len(v) // 2
    for sign, tag in ((1, "firstsite+"), (-1, "firstsite-")):
        if np.linalg.norm(v[half:] - sign * v[:half]) <= thresh:
            found.add(tag)
    for sign, tag in ((1, "lastsite+"), (-1, "lastsite-")):
        if np.linalg.norm(v[1::2] - sign * v[0::2]) <= thresh:
            found.add(tag)
    return found


# -------------------------------------------------------- orbits / dof count

@dataclass(frozen=True)
class OrbitReport:
    base: str
    shift_orbit: frozenset[str]
    flip_orbit: frozenset[str]
    reverse_orbit: frozenset[str]


def orbits(bits: str) -> OrbitReport:
    """Index sets sharing a component value under each symmetry."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"bits must be a nonempty 0/1 string, got {bits!r}")
    p = len(bits)
    shift = frozenset(bits[k:] + bits[:k] for k in range(p))
    flip = frozenset({bits, "".join("1" if c == "0" else "0" for c in bits)})
    rev = frozenset({bits, bits[::-1]})
    return OrbitReport(base=bits, shift_orbit=shift, flip_orbit=flip, reverse_orbit=rev)


@dataclass(frozen=True)
class DofReport:
    p: int
    counts: dict[str, int]
    reduction_factors: dict[str, float]


def _group_perms(p: int, kinds) -> list[np.ndarray]:
    """All index permutations of the group generated by the given kinds."""
    gens = []
    if "bitshift" in kinds:
        gens.append(shift_perm(p, 1))
    if "bitflip" in kinds:
        gens.append(np.arange(2**p - 1, -1, -1, dtype=np.int64))
    if "reverse" in kinds:
        gens.append(reverse_perm(p))
    ident = np.arange(2**p, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for gen in gens:
                h = g[gen]
                key = h.tobytes()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())


def dof_count(p: int, kinds) -> DofReport:
    """Exact orbit counts of bit strings under the chosen symmetries.

    counts maps each single kind to its class count and, when several kinds
    are given, "combined" to the count under the jointly generated group.
    """
    if p > DOF_MAX_P:
        raise TooLargeError(f"orbit enumeration capped at p = {DOF_MAX_P}, got {p}")
    kinds = sorted(set(kinds))
    unknown = set(kinds) - {"bitshift", "bitflip", "reverse"}
    if unknown:
        raise ValueError(f"unknown symmetry kinds for counting: {sorted(unknown)}")
    if not kinds:
        raise ValueError("need at least one symmetry kind")

    def count(group_kinds) -> int:
        perms = np.stack(_group_perms(p, group_kinds))
        canon = perms.min(axis=0)
        return int(len(np.unique(canon)))

    counts = {k: count([k]) for k in kinds}
    if len(kinds) > 1:
        counts["combined"] = count(kinds)
    factors = {k: 2**p / c for k, c in counts.items()}
    return DofReport(p=p, counts=counts, reduction_factors=factors)


# ----------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class SymmetryWitness:
    """A symmetry kind with the matrices certifying its site relations.

    ``matrices`` holds one witness per bond (S_j or U_j or D_j, j = 1..p) for
    the reverse/bitflip families; the other kinds carry none.
    """

    kind: str
    sign: int = 1
    block_len: int = 1
    matrices: tuple[np.ndarray, ...] | None = None
    heuristic: bool = False

    def __post_init__(self):
        if self.kind not in SYMMETRY_KINDS:
            raise ValueError(f"unknown symmetry kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def _swap_block(top: int, bottom: int) -> np.ndarray:
    """[[0, I_top], [I_bottom, 0]] of size (top + bottom)."""
    n = top + bottom
    s = np.zeros((n, n), dtype=np.complex128)
    s[:top, bottom:] = np.eye(top)
    s[top:, :bottom] = np.eye(bottom)
    return s


# -------------------------------------------------- bit-shift / TI constructs

def ti_construct(m: MPSState, block_len: int = 1, tol: float = EPS_SYM) -> MPSState:
    """Site-independent periodic representation of a shift-symmetric vector.

    Embeds the input site matrices (zero-padded to a common size D) on the
    cyclic superdiagonal of a block companion matrix, scaled per site so that
    the q = p / block_len cyclic copies sum back to the vector.  Bond
    dimension of the result is q * D.  With block_len = r > 1 the output
    repeats with period r and covers block-shift symmetric vectors.
    """
    p = m.p
    r = block_len
    if r < 1 or p % r:
        raise ShapeMismatchError(f"block length {r} must divide p = {p}")
    q = p // r
    x = to_vector(m)
    if np.linalg.norm(x - x[shift_perm(p, r)]) > tol * np.linalg.norm(x):
        raise SymmetryMismatchError(
            "vector is not invariant under the cyclic bit shift (within tol)"
        )
    d = max(max(a.shape) for a, _ in m.sites)
    scale = q ** (-1.0 / p)

    def pad(a: np.ndarray) -> np.ndarray:
        out = np.zeros((d, d), dtype=np.complex128)
        out[: a.shape[0], : a.shape[1]] = a
        return out

    blocks = [(pad(a0), pad(a1)) for a0, a1 in m.sites]
    period = []
    for j in range(r):
        pair = []
        for i in range(2):
            big = np.zeros((q * d, q * d), dtype=np.complex128)
            for k in range(q):
                # only the last site of each block advances the companion
                # index; interior sites stay block diagonal
                kk = (k + 1) % q if j == r - 1 else k
                big[k * d : (k + 1) * d, kk * d : (kk + 1) * d] = blocks[k * r + j][i]
            pair.append(scale * big)
        period.append((pair[0], pair[1]))
    return MPSState(period * q, boundary="periodic")


def ti_normal_form(a0, a1) -> tuple[np.ndarray, np.ndarray]:
    """Triangularize the first matrix of a site-independent pair.

    Conjugates both matrices by the Schur basis of a0, which leaves the
    periodic vector of the repeated pair unchanged.  Hermitian a0 comes out
    as a real diagonal (eigendecomposition branch), so a Hermitian partner
    stays Hermitian.
    """
    m0 = as_cmatrix(a0)
    m1 = as_cmatrix(a1)
    if m0.shape != m1.shape or m0.shape[0] != m0.shape[1]:
        raise ShapeMismatchError("need two square matrices of equal size")
    if frob(m0 - dagger(m0)) <= 1e-12 * max(frob(m0), 1e-300):
        w, v = eigh((m0 + dagger(m0)) / 2.0)
        q = dagger(v)
        nf0 = np.diag(w.astype(np.complex128))
    else:
        q, nf0 = schur(m0)
    return nf0, q @ m1 @ dagger(q)


# ------------------------------------------------------------------- reverse

def reverse_construct(m: MPSState, tol: float = EPS_SYM) -> tuple[MPSState, SymmetryWitness]:
    """Block-diagonal doubling that pairs each site with the conjugate
    transpose of its mirror site, certified by swap witnesses.

    The output satisfies A_j^H = S_{p-j}^{-1} A_{p+1-j} S_{p+1-j} with
    S_j = [[0, I], [I, 0]] on bond j+1 (a scalar 1 at the open ends), and the
    witness list fulfills the consistency conditions S_j^H = S_{p-j},
    S_0 = S_p.
    """
    x = to_vector(m)
    if np.linalg.norm(x - np.conj(bit_reversed(x))) > tol * np.linalg.norm(x):
        raise SymmetryMismatchError("vector is not reverse symmetric (within tol)")
    p = m.p
    dims = m.dims
    obc = m.boundary == "open"
    if p == 1:
        # mirror site is the site itself: averaging with its conjugate
        # transpose keeps the (real) components, witnessed by the identity
        a0, a1 = m.sites[0]
        site = (0.5 * (a0 + dagger(a0)), 0.5 * (a1 + dagger(a1)))
        wit = (np.eye(site[0].shape[1], dtype=np.complex128),)
        return MPSState([site], boundary=m.boundary), SymmetryWitness(kind="reverse", matrices=wit)
    scale = 2.0 ** (-1.0 / p)
    sites = []
    for j in range(p):
        b0, b1 = m.sites[j]
        c0, c1 = (dagger(a) for a in m.sites[p - 1 - j])
        if obc and j == 0:
            pair = (np.hstack([b0, c0]), np.hstack([b1, c1]))
        elif obc and j == p - 1:
            pair = (np.vstack([b0, c0]), np.vstack([b1, c1]))
        else:
            z_top = np.zeros((b0.shape[0], c0.shape[1]))
            z_bot = np.zeros((c0.shape[0], b0.shape[1]))
            pair = (
                np.block([[b0, z_top], [z_bot, c0]]),
                np.block([[b1, z_top], [z_bot, c1]]),
            )
        sites.append((scale * pair[0], scale * pair[1]))
    witnesses = []
    for j in range(1, p + 1):
        if obc and j == p:
            witnesses.append(np.eye(1, dtype=np.complex128))
        else:
            # S_j acts on bond j+1, which stacks D_{j+1} over D_{p+1-j}
            witnesses.append(_swap_block(dims[j], dims[p - j]))
    out = MPSState(sites, boundary=m.boundary)
    return out, SymmetryWitness(kind="reverse", matrices=tuple(witnesses))


@dataclass(frozen=True)
class ReverseNormalForm:
    """Mirror-factored representation of a reverse symmetric vector.

    For p = 2m the components are
    trace(U_1^(i_1) .. U_m^(i_m) Sigma U_m^(i_{m+1})^H .. U_1^(i_p)^H Lambda);
    odd p = 2m+1 inserts one extra stacked factor U_{m+1} before Sigma.  Each
    ``us`` entry is the stacked pair [U^(0); U^(1)] with orthonormal columns
    (square for j <= m); ``sigma`` and ``lam`` are real diagonals.
    """

    p: int
    us: tuple[np.ndarray, ...]
    sigma: np.ndarray
    lam: np.ndarray

    def factor(self, j: int, bit: int) -> np.ndarray:
        stacked = self.us[j]
        d = stacked.shape[0] // 2
        return stacked[d:] if bit else stacked[:d]

    def to_vector(self) -> np.ndarray:
        half = self.p // 2
        odd = bool(self.p % 2)
        d1 = self.us[0].shape[0] // 2
        sig = np.diag(self.sigma.astype(np.complex128))
        lam = np.diag(self.lam.astype(np.complex128))
        out = np.empty(2**self.p, dtype=np.complex128)
        for idx in range(2**self.p):
            bits = [(idx >> (self.p - 1 - k)) & 1 for k in range(self.p)]
            mat = np.eye(d1, dtype=np.complex128)
            for j in range(half):
                mat = mat @ self.factor(j, bits[j])
            if odd:
                mat = mat @ self.factor(half, bits[half])
            mat = mat @ sig
            for j in range(half - 1, -1, -1):
                mat = mat @ dagger(self.factor(j, bits[self.p - 1 - j]))
            out[idx] = np.trace(mat @ lam)
        return out


def reverse_normal_form(x, tol: float = EPS_SYM) -> ReverseNormalForm:
    """Mirror-factored normal form of a reverse symmetric vector.

    Starts from the swap-certified doubled representation, absorbs the
    ascending half of the chain into stacked SVD factors (the descending half
    is their conjugate mirror image), diagonalizes the Hermitian interior
    into Sigma, and takes Lambda from the bond-1 witness spectrum.
    """
    v = as_cvector(x)
    p = _check_pow2(v)
    state, witness = reverse_construct(from_vector(v), tol=tol)
    s_list = [np.asarray(s) for s in witness.matrices]
    m = p // 2
    odd = bool(p % 2)

    s_p = s_list[p - 1]
    lam_w, w = eigh(np.linalg.inv(dagger(s_p)))
    lam = lam_w.real

    us: list[np.ndarray] = []
    carry = dagger(w)  # running left factor; starts as W^H
    for j in range(m):
        a0, a1 = state.sites[j]
        stacked = np.vstack([carry @ a0, carry @ a1])
        u, s, vh = svd(stacked, full_matrices=True)
        us.append(u)
        sig = np.zeros(stacked.shape, dtype=np.complex128)
        np.fill_diagonal(sig, s)
        carry = sig @ vh

    s_m = s_list[m - 1] if m >= 1 else s_list[p - 1]
    if not odd:
        core = carry @ dagger(s_m) @ dagger(carry)
        core = 0.5 * (core + dagger(core))
        sig_w, xq = eigh(core)
        sigma = sig_w.real
        us[m - 1] = us[m - 1] @ xq
    else:
        a0, a1 = state.sites[m]
        cores = [carry @ a @ dagger(s_m) @ dagger(carry) for a in (a0, a1)]
        herm = max(frob(c - dagger(c)) for c in cores)
        if herm > 1e-8 * max(max(frob(c) for c in cores), 1e-300):
            raise SymmetryMismatchError(
                f"interior factors fail the Hermitian consistency check ({herm:.2e})"
            )
        cores = [0.5 * (c + dagger(c)) for c in cores]
        stacked = np.vstack(cores)
        u, s, vh = svd(stacked)
        sigma = s.real
        n = cores[0].shape[0]
        # absorb the right unitary: U_m picks up vh^H, the interior becomes
        # [[vh, 0], [0, vh]] @ u, keeping orthonormal columns
        interior = np.vstack([vh @ u[:n], vh @ u[n:]])
        us.append(interior)
        if m >= 1:
            us[m - 1] = us[m - 1] @ dagger(vh)
    return ReverseNormalForm(p=p, us=tuple(us), sigma=sigma, lam=lam)


# ------------------------------------------------------------------- bitflip

def bitflip_construct(m: MPSState, sign: int = 1, tol: float = EPS_SYM) -> tuple[MPSState, SymmetryWitness]:
    """Block-diagonal doubling pairing each site with its flipped partner.

    The output satisfies A_j^(i) = s_j U_j A_j^(1-i) U_{(j mod p)+1} with
    exact 0/1 swap involutions U_j (a scalar 1 at an open bond 1), where
    s_1 = sign and s_j = 1 otherwise.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x = to_vector(m)
    if np.linalg.norm(x - sign * x[::-1]) > tol * np.linalg.norm(x):
        raise SymmetryMismatchError(f"vector does not satisfy J x = {sign:+d} x (within tol)")
    p = m.p
    dims = m.dims
    scale = 2.0 ** (-1.0 / p)
    obc = m.boundary == "open"
    sites = []
    for j in range(p):
        b0, b1 = m.sites[j]
        lead = sign if j == 0 else 1
        if obc and j == 0 and p > 1:
            pair = (np.hstack([b0, lead * b1]), np.hstack([b1, lead * b0]))
        elif obc and j == p - 1 and p > 1:
            pair = (np.vstack([b0, b1]), np.vstack([b1, b0]))
        else:
            z = np.zeros_like(b0)
            pair = (
                np.block([[b0, z], [z, lead * b1]]),
                np.block([[b1, z], [z, lead * b0]]),
            )
        sites.append((scale * pair[0], scale * pair[1]))
    if obc and p == 1:
        # a single open site duplicates to scalars: average directly
        a0, a1 = m.sites[0]
        sites = [(0.5 * (a0 + sign * a1), 0.5 * (a1 + sign * a0))]
    witnesses = []
    for j in range(p):
        if obc and j == 0:
            witnesses.append(np.eye(1, dtype=np.complex128))
        else:
            witnesses.append(_swap_block(dims[j], dims[j]))
    out = MPSState(sites, boundary=m.boundary)
    return out, SymmetryWitness(kind="bitflip", sign=sign, matrices=tuple(witnesses))


def _involution_eigenbasis(u: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize an involution: returns (d, s) with u = s^{-1} d s, d a
    +-1 diagonal with the +1 entries leading."""
    n = u.shape[0]
    if frob(u @ u - np.eye(n)) > tol * max(frob(u) ** 2, 1.0):
        raise NotDiagonalizableError("witness is not an involution (U^2 != I)")
    if frob(u - dagger(u)) <= tol * max(frob(u), 1e-300):
        w, v = eigh(u)
        order = np.argsort(-w)
        w, v = w[order], v[:, order]
        s = dagger(v)
    else:
        w, v = np.linalg.eig(u)
        order = np.argsort(-w.real)
        w, v = w[order], v[:, order]
        s = np.linalg.inv(v)
    d = np.diag(np.where(w.real >= 0, 1.0, -1.0).astype(np.complex128))
    return d, s


def bitflip_normal_form(m: MPSState, w: SymmetryWitness, tol: float = EPS_SYM) -> tuple[MPSState, SymmetryWitness]:
    """Conjugate each bond by the eigenbasis of its involution witness so the
    relations use only +-1 diagonal witnesses; the vector is preserved."""
    if w.kind != "bitflip" or w.matrices is None:
        raise WitnessViolationError("need a bitflip witness with matrices")
    rep = verify_relation(m, w, tol=tol)
    if rep.max_residual > tol * _state_scale(m):
        raise WitnessViolationError(
            f"witness relations fail on the input (residual {rep.max_residual:.2e})"
        )
    p = m.p
    ds = []
    ss = []
    for u in w.matrices:
        d, s = _involution_eigenbasis(np.asarray(u, dtype=np.complex128), max(tol, 1e-9))
        ds.append(d)
        ss.append(s)
    inv_next = [np.linalg.inv(ss[(j + 1) % p]) for j in range(p)]
    sites = [
        (ss[j] @ a0 @ inv_next[j], ss[j] @ a1 @ inv_next[j])
        for j, (a0, a1) in enumerate(m.sites)
    ]
    out = MPSState(sites, boundary=m.boundary)
    return out, SymmetryWitness(kind="bitflip", sign=w.sign, matrices=tuple(ds))


# ------------------------------------------------------------------- fullbit

def fullbit_state(a, p: int) -> MPSState:
    """Site-independent periodic state with the pair (A, J A J), A Hermitian."""
    m = as_cmatrix(a)
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatchError("need a square matrix")
    if frob(m - dagger(m)) > 1e-12 * max(frob(m), 1e-300):
        raise NotHermitianError("fullbit states require a Hermitian matrix")
    j = exchange_matrix(n)
    pair = (m, j @ m @ j)
    return MPSState([pair] * p, boundary="periodic")


def fullbit_normal_form(a) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize the pair (A, J A J): returns (Lambda, B) with Lambda the
    real diagonal eigenvalue matrix of A and B the Hermitian rotated partner.
    The periodic vector of the repeated pair is unchanged for every p."""
    m = as_cmatrix(a)
    w, v = eigh(m)
    j = exchange_matrix(m.shape[0])
    lam = np.diag(w.astype(np.complex128))
    b = dagger(v) @ (j @ m @ j) @ v
    return lam, b


# ------------------------------------------------ first / last site duplication

def firstsite_construct(b, sign: int = 1) -> MPSState:
    """Open MPS for x = (b; sign * b): site 1 carries the pair (1, sign)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    vb = as_cvector(b)
    if not np.any(vb):
        raise ZeroVectorError("b must be nonzero")
    tail = from_vector(vb)
    one = np.array([[1.0]], dtype=np.complex128)
    sites = [(one, sign * one)] + list(tail.sites)
    return MPSState(sites, boundary="open")


def lastsite_construct(b, sign: int = 1) -> MPSState:
    """Open MPS for the interleaved vector x_{..., i_p} = sign^{i_p} b_{...}."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    vb = as_cvector(b)
    if not np.any(vb):
        raise ZeroVectorError("b must be nonzero")
    head = from_vector(vb)
    one = np.array([[1.0]], dtype=np.complex128)
    sites = list(head.sites) + [(one, sign * one)]
    return MPSState(sites, boundary="open")


# --------------------------------------------------------------- verification

@dataclass(frozen=True)
class RelationReport:
    kind: str
    site_residuals: tuple[float, ...]
    consistency_residuals: tuple[float, ...] = ()

    @property
    def max_residual(self) -> float:
        return max(
            max(self.site_residuals, default=0.0),
            max(self.consistency_residuals, default=0.0),
        )


def _state_scale(m: MPSState) -> float:
    return max(max(frob(a0), frob(a1)) for a0, a1 in m.sites) or 1.0


def _witness_list(w: SymmetryWitness, p: int) -> list[np.ndarray]:
    if w.matrices is None or len(w.matrices) != p:
        got = 0 if w.matrices is None else len(w.matrices)
        raise ShapeMismatchError(f"witness needs {p} matrices, got {got}")
    return [np.asarray(u, dtype=np.complex128) for u in w.matrices]


def verify_relation(m: MPSState, w: SymmetryWitness, tol: float = EPS_SYM) -> RelationReport:
    """Frobenius residuals of the defining site relations of a witness.

    Reverse witnesses additionally report the consistency residuals
    S_j^H = S_{p-j} (with S_0 = S_p).  Shape-incompatible witnesses raise
    ShapeMismatchError; mere numeric violation only shows in the report.
    ``tol`` is unused here and kept for interface symmetry with the callers
    that threshold the report.
    """
    del tol
    p = m.p
    kind = w.kind
    res: list[float] = []
    cons: list[float] = []
    if kind == "bitshift":
        r = w.block_len
        if r < 1 or p % r:
            raise ShapeMismatchError(f"block length {r} must divide p = {p}")
        for j in range(p):
            a0, a1 = m.sites[j]
            b0, b1 = m.sites[j % r]
            if a0.shape != b0.shape:
                raise ShapeMismatchError(f"sites {j % r + 1} and {j + 1} differ in shape")
            res.append(max(frob(a0 - b0), frob(a1 - b1)))
    elif kind == "reverse":
        s = _witness_list(w, p)

        def s_at(j: int) -> np.ndarray:  # S_j with S_0 = S_p
            return s[j - 1] if j >= 1 else s[p - 1]

        for j in range(1, p + 1):
            a0, a1 = m.sites[j - 1]
            o0, o1 = m.sites[p - j]
            s_left = s_at(p - j)
            s_right = s_at(p + 1 - j)
            if s_left.shape[0] != o0.shape[0] or s_right.shape[0] != o0.shape[1]:
                raise ShapeMismatchError(f"reverse witness shapes do not match the chain at site {j}")
            try:
                t0 = np.linalg.solve(s_left, o0 @ s_right)
                t1 = np.linalg.solve(s_left, o1 @ s_right)
            except np.linalg.LinAlgError as exc:
                raise ShapeMismatchError(f"singular reverse witness S_{p - j}: {exc}") from exc
            res.append(max(frob(dagger(a0) - t0), frob(dagger(a1) - t1)))
        for j in range(1, p + 1):
            cons.append(frob(dagger(s_at(j)) - s_at(p - j)))
    elif kind == "bitflip":
        u = _witness_list(w, p)
        for j in range(p):
            a0, a1 = m.sites[j]
            lead = w.sign if j == 0 else 1
            u_next = u[(j + 1) % p]
            if u[j].shape[0] != a0.shape[0] or u_next.shape[0] != a0.shape[1]:
                raise ShapeMismatchError(f"bitflip witness shapes do not match the chain at site {j + 1}")
            res.append(frob(a1 - lead * (u[j] @ a0 @ u_next)))
    elif kind == "fullbit":
        a0, a1 = m.sites[0]
        j_ex = exchange_matrix(a0.shape[0])
        for k in range(p):
            b0, b1 = m.sites[k]
            if b0.shape != a0.shape:
                raise ShapeMismatchError("fullbit states must be site-independent")
            res.append(max(frob(b0 - a0), frob(b1 - a1), frob(b1 - j_ex @ b0 @ j_ex)))
        cons.append(frob(a0 - dagger(a0)))
    elif kind == "firstsite":
        a0, a1 = m.sites[0]
        res.append(frob(a1 - w.sign * a0))
    elif kind == "lastsite":
        a0, a1 = m.sites[-1]
        res.append(frob(a1 - w.sign * a0))
    else:  # pragma: no cover - guarded by SymmetryWitness.__post_init__
        raise ValueError(f"unknown witness kind {kind!r}")
    return RelationReport(kind=kind, site_residuals=tuple(res), consistency_residuals=tuple(cons))


def heuristic_bitflip_witness(m: MPSState, sign: int = 1) -> SymmetryWitness:
    """Exchange-matrix ansatz for unknown sign patterns: U_j = J on bond j.

    Purely heuristic; whether it certifies anything must be read off
    verify_relation.
    """
    dims = m.dims
    mats = tuple(exchange_matrix(dims[j]) for j in range(m.p))
    return SymmetryWitness(kind="bitflip", sign=sign, matrices=mats, heuristic=True)
