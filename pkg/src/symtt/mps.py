"""Matrix product state / tensor train representations of 2^p-vectors.

Conventions used throughout:

* component i of the represented vector is the trace of
  A_1^(i_1) A_2^(i_2) ... A_p^(i_p), where (i_1, ..., i_p) are the bits of i
  with i_1 most significant;
* site j holds a pair of D_j x D_{j+1} matrices; open boundary means
  D_1 = D_{p+1} = 1, periodic means D_1 = D_{p+1} (trace then matters);
* "left gauge" at a site: A0^H A0 + A1^H A1 = I; "right gauge":
  A0 A0^H + A1 A1^H = I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    GaugeViolationError,
    NotNormalizedError,
    ShapeMismatchError,
    TooLargeError,
    ZeroVectorError,
)
from .linalg import EPS_RANK, as_cvector, dagger, frob, svd

#: evaluation guard
MAX_VECTOR_DIM = 2**20


class MPSState:
    """Immutable chain of per-site matrix pairs.

    Parameters
    ----------
    sites : sequence of (a0, a1) pairs, one per physical site
    boundary : "open" or "periodic"
    """

    __slots__ = ("sites", "boundary")

    def __init__(self, sites, boundary: str = "open"):
        if boundary not in ("open", "periodic"):
            raise ValueError(f"boundary must be 'open' or 'periodic', got {boundary!r}")
        pairs = []
        for j, (a0, a1) in enumerate(sites):
            m0 = np.array(a0, dtype=np.complex128)
            m1 = np.array(a1, dtype=np.complex128)
            if m0.ndim != 2 or m1.ndim != 2 or m0.shape != m1.shape:
                raise ShapeMismatchError(f"site {j + 1}: the two matrices must share a 2-D shape")
            pairs.append((m0, m1))
        if not pairs:
            raise ShapeMismatchError("an MPS needs at least one site")
        for j in range(len(pairs) - 1):
            if pairs[j][0].shape[1] != pairs[j + 1][0].shape[0]:
                raise ShapeMismatchError(
                    f"bond mismatch between sites {j + 1} and {j + 2}: "
                    f"{pairs[j][0].shape} -> {pairs[j + 1][0].shape}"
                )
        first, last = pairs[0][0].shape[0], pairs[-1][0].shape[1]
        if boundary == "open" and (first != 1 or last != 1):
            raise ShapeMismatchError("open boundary requires D_1 = D_{p+1} = 1")
        if boundary == "periodic" and first != last:
            raise ShapeMismatchError("periodic boundary requires D_1 = D_{p+1}")
        self.sites = tuple(pairs)
        self.boundary = boundary

    @property
    def p(self) -> int:
        return len(self.sites)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s[0].shape[0] for s in self.sites) + (self.sites[-1][0].shape[1],)

    def __repr__(self):
        return f"MPSState(p={self.p}, boundary={self.boundary!r}, dims={self.dims})"


def eval_component(m: MPSState, bits) -> complex:
    """Trace of the site-matrix product selected by ``bits``."""
    bits = list(bits)
    if len(bits) != m.p:
        raise ShapeMismatchError(f"need {m.p} bits, got {len(bits)}")
    prod = np.eye(m.sites[0][0].shape[0], dtype=np.complex128)
    for (a0, a1), b in zip(m.sites, bits):
        prod = prod @ (a1 if int(b) else a0)
    return complex(np.trace(prod))


def to_vector(m: MPSState) -> np.ndarray:
    """Dense vector of all 2^p components, index bit i_1 most significant."""
    n = 2**m.p
    if n > MAX_VECTOR_DIM:
        raise TooLargeError(f"dense evaluation of 2^{m.p} components exceeds the guard")
    # suffix products: after step j the list holds A_j^(i_j) ... A_p^(i_p)
    suffix = [np.eye(m.sites[-1][0].shape[1], dtype=np.complex128)]
    for a0, a1 in reversed(m.sites):
        suffix = [a @ s for a in (a0, a1) for s in suffix]
    # suffix index ordering: the site-1 bit varies slowest, matching the
    # binary index convention
    return np.array([np.trace(s) for s in suffix], dtype=np.complex128)


def _tt_cores(x: np.ndarray, tol: float) -> tuple[list, list]:
    """TT-SVD sweep; returns (site pairs, per-bond singular values)."""
    n = len(x)
    p = n.bit_length() - 1
    if 2**p != n:
        raise ShapeMismatchError(f"vector length {n} is not a power of two")
    sites = []
    lambdas = []
    c = x.reshape(1, n)
    for _ in range(p - 1):
        rows = c.shape[0]
        c = c.reshape(rows * 2, -1)
        u, s, vh = svd(c)
        if s[0] == 0.0:
            raise ZeroVectorError("vector must be nonzero")
        cutoff = max(tol, EPS_RANK) * s[0]
        r = max(1, int(np.sum(s > cutoff)))
        u, s, vh = u[:, :r], s[:r], vh[:r]
        # row index of c is (bond, bit) with the bit fastest, so the two
        # site matrices are the even/odd row slices of u
        sites.append((u[0::2].copy(), u[1::2].copy()))
        lambdas.append(s)
        c = s[:, None] * vh
    sites.append((c[:, :1].copy(), c[:, 1:].copy()))
    return sites, lambdas


def from_vector(x, tol: float = 0.0) -> MPSState:
    """Exact (tol = 0) or rank-truncated open-boundary decomposition of x.

    Bond dimension D_{j+1} is the numerical rank of the matricization that
    splits bits (i_1..i_j) from (i_{j+1}..i_p), at relative cutoff
    max(tol, EPS_RANK).  The result is left-normalized at every site except
    the last.
    """
    v = as_cvector(x)
    if len(v) < 2 or not np.any(v):
        raise ZeroVectorError("vector must be nonzero, of length 2^p with p >= 1")
    sites, _ = _tt_cores(v, tol)
    return MPSState(sites, boundary="open")


@dataclass(frozen=True)
class GaugeReport:
    """Per-site Frobenius residuals of the gauge conditions.

    ``left``/``right`` are the usual one-condition residuals; ``strong`` adds
    the off-diagonal mass of A0^H A0.  ``vidal_left``/``vidal_right`` are only
    filled by :func:`check_vidal` (both conditions per site).  ``max_residual``
    is the maximum over everything that was evaluated.
    """

    left: tuple[float, ...] | None = None
    right: tuple[float, ...] | None = None
    strong: tuple[float, ...] | None = None
    vidal_left: tuple[float, ...] | None = None
    vidal_right: tuple[float, ...] | None = None

    @property
    def max_residual(self) -> float:
        parts = [v for v in (self.left, self.right, self.strong, self.vidal_left, self.vidal_right) if v]
        return max((max(v) for v in parts), default=0.0)


def _left_residual(a0, a1) -> float:
    g = dagger(a0) @ a0 + dagger(a1) @ a1
    return frob(g - np.eye(g.shape[0]))


def _right_residual(a0, a1) -> float:
    g = a0 @ dagger(a0) + a1 @ dagger(a1)
    return frob(g - np.eye(g.shape[0]))


def _strong_residual(a0, a1) -> float:
    g0 = dagger(a0) @ a0
    off = frob(g0 - np.diag(np.diag(g0)))
    return max(_left_residual(a0, a1), off)


def check_gauge(m: MPSState) -> GaugeReport:
    """Left, right, and strong gauge residuals at every site."""
    left = tuple(_left_residual(a0, a1) for a0, a1 in m.sites)
    right = tuple(_right_residual(a0, a1) for a0, a1 in m.sites)
    strong = tuple(_strong_residual(a0, a1) for a0, a1 in m.sites)
    return GaugeReport(left=left, right=right, strong=strong)


@dataclass(frozen=True)
class VidalForm:
    """Gamma/Lambda factorization: p site pairs and p-1 positive descending
    singular-value vectors (the Schmidt coefficients of each bond)."""

    gammas: tuple[tuple[np.ndarray, np.ndarray], ...]
    lambdas: tuple[np.ndarray, ...]

    @property
    def p(self) -> int:
        return len(self.gammas)


def vidal_from_vector(x) -> VidalForm:
    """Gamma/Lambda decomposition of a unit-norm vector.

    The left-normalized cores are rescaled by the inverse bond singular
    values; only values above the rank cutoff are ever retained, so no
    division by (numerically) zero occurs.
    """
    v = as_cvector(x)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise NotNormalizedError("vidal_from_vector requires a unit-norm vector")
    sites, lambdas = _tt_cores(v, 0.0)
    gammas = [sites[0]]
    for j in range(1, len(sites)):
        a0, a1 = sites[j]
        inv = (1.0 / lambdas[j - 1])[:, None]
        gammas.append((inv * a0, inv * a1))
    return VidalForm(gammas=tuple(gammas), lambdas=tuple(lambdas))


def vidal_to_a(v: VidalForm, side: str = "left") -> MPSState:
    """Contract the Lambda factors into the Gamma chain.

    side="left" gives A_j = Lambda_{j-1} Gamma_j (left-normalized);
    side="right" gives A_j = Gamma_j Lambda_j (right-normalized).
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    sites = []
    for j, (g0, g1) in enumerate(v.gammas):
        if side == "left":
            lam = v.lambdas[j - 1][:, None] if j > 0 else 1.0
            sites.append((lam * g0, lam * g1))
        else:
            lam = v.lambdas[j][None, :] if j < len(v.lambdas) else 1.0
            sites.append((g0 * lam, g1 * lam))
    return MPSState(sites, boundary="open")


def check_vidal(v: VidalForm) -> GaugeReport:
    """Residuals of both normalization conditions, in both directions.

    For each site the left pair is A^H A summing to I and A Lambda_j^2 A^H
    summing to Lambda_{j-1}^2 (A the left contraction); the right pair is the
    mirrored statement on the right contraction.
    """
    left_state = vidal_to_a(v, "left")
    right_state = vidal_to_a(v, "right")
    p = v.p
    lam2 = [np.array([1.0])] + [lam**2 for lam in v.lambdas] + [np.array([1.0])]
    vidal_left = []
    vidal_right = []
    for j in range(p):
        a0, a1 = left_state.sites[j]
        cond_a = _left_residual(a0, a1)
        g = a0 @ np.diag(lam2[j + 1]) @ dagger(a0) + a1 @ np.diag(lam2[j + 1]) @ dagger(a1)
        cond_b = frob(g - np.diag(lam2[j]))
        vidal_left.append(max(cond_a, cond_b))

        b0, b1 = right_state.sites[j]
        cond_a = _right_residual(b0, b1)
        g = dagger(b0) @ np.diag(lam2[j]) @ b0 + dagger(b1) @ np.diag(lam2[j]) @ b1
        cond_b = frob(g - np.diag(lam2[j + 1]))
        vidal_right.append(max(cond_a, cond_b))
    return GaugeReport(vidal_left=tuple(vidal_left), vidal_right=tuple(vidal_right))


def _split_rows(u: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    return u[:d].copy(), u[d:].copy()


def _split_cols(v: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    return v[:, :d].copy(), v[:, d:].copy()


def _sweep_pair(left_pair, right_pair, direction: str):
    """SVD re-gauge of one neighboring pair; preserves all four products."""
    a0, a1 = left_pair
    b0, b1 = right_pair
    t = np.block([[a0 @ b0, a0 @ b1], [a1 @ b0, a1 @ b1]])
    u, s, vh = svd(t)
    r = max(1, int(np.sum(s > EPS_RANK * s[0]))) if s[0] > 0 else 1
    u, s, vh = u[:, :r], s[:r], vh[:r]
    dl, dr = a0.shape[0], b0.shape[1]
    if direction == "left":
        carry = s[:, None] * vh
        return _split_rows(u, dl), _split_cols(carry, dr)
    carry = u * s[None, :]
    return _split_rows(carry, dl), _split_cols(vh, dr)


def two_site_sweep(m: MPSState, direction: str) -> MPSState:
    """One full nearest-neighbor SVD sweep.

    direction="left" leaves every site but the carrier left-normalized,
    direction="right" right-normalized.  The carrier ends at the last site,
    except for the open-boundary right sweep where it ends at site 1.  The
    represented vector is preserved.
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    pairs = [(a0.copy(), a1.copy()) for a0, a1 in m.sites]
    p = len(pairs)
    if p == 1:
        return MPSState(pairs, boundary=m.boundary)
    if direction == "left":
        for j in range(p - 1):
            pairs[j], pairs[j + 1] = _sweep_pair(pairs[j], pairs[j + 1], "left")
    else:
        for j in range(p - 2, -1, -1):
            pairs[j], pairs[j + 1] = _sweep_pair(pairs[j], pairs[j + 1], "right")
        if m.boundary == "periodic":
            # push the carrier through the wrap bond so it lands on site p
            pairs[p - 1], pairs[0] = _sweep_pair(pairs[p - 1], pairs[0], "right")
    return MPSState(pairs, boundary=m.boundary)


def strong_normalize(m: MPSState, gauge_tol: float = 1e-8) -> MPSState:
    """Rotate a left-normalized open chain so every A0^H A0 becomes diagonal.

    Site by site, the upper matrix is factored (through the accumulated bond
    rotation) as U Sigma V; the site keeps U Sigma while V travels into the
    next site.  Columns then stay orthogonal for both matrices of every pair,
    and the first site becomes exactly ((1, 0), (0, 1)) whenever its bond
    dimension is 2.
    """
    if m.boundary != "open":
        raise GaugeViolationError("strong normalization is defined for open chains")
    report = check_gauge(m)
    worst = max(report.left[:-1], default=0.0) if m.p > 1 else 0.0
    if worst > gauge_tol:
        raise GaugeViolationError(
            f"input must be left-normalized (worst site residual {worst:.2e})"
        )
    out = []
    prev = np.eye(1, dtype=np.complex128)
    p = m.p
    for j, (a0, a1) in enumerate(m.sites):
        if j == p - 1:
            out.append((prev @ a0, prev @ a1))
            break
        if j == 0 and a0.shape == (1, 2):
            # the stacked site-1 pair is (numerically) a 2x2 unitary; using it
            # as the outgoing bond rotation pins the site to ((1,0),(0,1))
            q = np.vstack([a0, a1])
            out.append((np.array([[1.0, 0.0]], dtype=np.complex128),
                        np.array([[0.0, 1.0]], dtype=np.complex128)))
            prev = q
            continue
        u, s, vh = svd(prev @ a0, full_matrices=True)
        sig = np.zeros(a0.shape, dtype=np.complex128)
        np.fill_diagonal(sig, s)
        out.append((u @ sig, prev @ a1 @ dagger(vh)))
        prev = vh
    return MPSState(out, boundary="open")


def truncate(m: MPSState, d_max: int | None = None, tol: float = 0.0) -> MPSState:
    """SVD truncation of an open chain to bond dimension d_max and/or relative
    singular-value cutoff tol.

    The chain is right-normalized first, so the values discarded at each bond
    are the Schmidt coefficients there and the squared vector error is bounded
    by the sum of discarded squares.
    """
    if m.boundary != "open":
        raise GaugeViolationError("truncate is defined for open chains")
    if d_max is not None and d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    state = two_site_sweep(m, "right")
    pairs = [(a0.copy(), a1.copy()) for a0, a1 in state.sites]
    for j in range(len(pairs) - 1):
        a0, a1 = pairs[j]
        stack = np.vstack([a0, a1])
        u, s, vh = svd(stack)
        r = len(s)
        if s[0] > 0.0 and tol > 0.0:
            r = max(1, int(np.sum(s > tol * s[0])))
        if d_max is not None:
            r = min(r, d_max)
        u, s, vh = u[:, :r], s[:r], vh[:r]
        d = a0.shape[0]
        pairs[j] = _split_rows(u, d)
        carry = s[:, None] * vh
        b0, b1 = pairs[j + 1]
        pairs[j + 1] = (carry @ b0, carry @ b1)
    return MPSState(pairs, boundary="open")
