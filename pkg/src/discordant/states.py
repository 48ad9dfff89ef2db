"""Constructors for two-qudit state families.

A circulant state on C^d ⊗ C^d is block diagonal over the cyclic sectors
Σ_n = span{e_i ⊗ e_{i+n}} and is fully described by d Hermitian PSD
matrices a^(0..d−1) whose traces sum to 1: entry a^(n)_{ij} of sector n
sits at row i·d + (i+n mod d), column j·d + (j+n mod d) of the dense
matrix.  This module builds those specs (and dense matrices) for the
circulant, Bell-diagonal, Werner-type, isotropic, orthogonal-invariant
and commuting-group-invariant families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidSpec
from .linalg import EIG_FLOOR, frobenius, hermitize

#: Entries smaller than this in modulus are treated as exact zeros.
ZERO_TOL = 1e-12
#: Frobenius residual below which a matrix counts as sector-block-diagonal.
CIRCULANT_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class CirculantSpec:
    """The d sector matrices a^(0..d−1) of a circulant two-qudit state."""

    d: int
    a: tuple

    def __post_init__(self):
        mats = tuple(np.asarray(m, dtype=complex) for m in self.a)
        if len(mats) != self.d or any(m.shape != (self.d, self.d) for m in mats):
            raise DimensionError(
                f"expected {self.d} matrices of shape ({self.d}, {self.d})"
            )
        object.__setattr__(self, "a", mats)

    def trace_sum(self) -> float:
        return float(sum(np.trace(m).real for m in self.a))


@dataclass(frozen=True)
class NotCirculant:
    """Returned when a dense matrix has coherence between cyclic sectors."""

    residual: float


@dataclass(frozen=True)
class BellWeights:
    """Probability matrix p[m, n] over the d² maximally entangled projectors."""

    d: int
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (self.d, self.d):
            raise DimensionError(f"expected shape ({self.d}, {self.d}), got {p.shape}")
        object.__setattr__(self, "p", p)


def validate_circulant_spec(spec: CirculantSpec) -> None:
    """Check each a^(n) is Hermitian PSD and the traces sum to 1."""
    for n, m in enumerate(spec.a):
        scale = max(1.0, frobenius(m))
        if frobenius(m - m.conj().T) > 1e-12 * scale:
            raise InvalidSpec(f"a^({n}) is not Hermitian")
        w = np.linalg.eigvalsh(hermitize(m))
        if w.size and w[0] < EIG_FLOOR:
            raise InvalidSpec(f"a^({n}) has negative eigenvalue {w[0]:.3e}")
    total = spec.trace_sum()
    if abs(total - 1.0) > 1e-12:
        raise InvalidSpec(f"sector traces sum to {total}, expected 1")


def validate_bell_weights(w: BellWeights) -> None:
    """Check the weights are nonnegative and sum to 1."""
    if np.any(w.p < -ZERO_TOL):
        raise InvalidSpec(f"negative weight {w.p.min():.3e}")
    total = float(w.p.sum())
    if abs(total - 1.0) > 1e-12:
        raise InvalidSpec(f"weights sum to {total}, expected 1")


def shift_operator(d: int) -> np.ndarray:
    """Cyclic shift S with S[(n+1) mod d, n] = 1, i.e. S e_n = e_{n+1}."""
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    S = np.zeros((d, d), dtype=complex)
    S[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return S


def flip_operator(d: int) -> np.ndarray:
    """Swap F of the two factors: F (x ⊗ y) = y ⊗ x."""
    F = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for k in range(d):
            F[i * d + k, k * d + i] = 1.0
    return F


def max_entangled_projector(d: int) -> np.ndarray:
    """Projector onto (1/√d) Σ_i e_i ⊗ e_i."""
    P = np.zeros((d * d, d * d), dtype=complex)
    idx = np.arange(d) * d + np.arange(d)
    P[np.ix_(idx, idx)] = 1.0 / d
    return P


def circulant_state(spec: CirculantSpec, validate: bool = True) -> np.ndarray:
    """Assemble the dense d²×d² matrix of a circulant spec.

    With ``validate`` (the default) the sector-matrix invariants are enforced first
    and violations raise :class:`InvalidSpec`.
    """
    if validate:
        validate_circulant_spec(spec)
    d = spec.d
    rho = np.zeros((d * d, d * d), dtype=complex)
    i = np.arange(d)
    for n in range(d):
        pos = i * d + (i + n) % d
        rho[np.ix_(pos, pos)] = spec.a[n]
    return rho


def project_circulant(rho: np.ndarray, d: int):
    """Extract the circulant spec of a dense matrix, or report the residual.

    Returns the :class:`CirculantSpec` when the matrix is block diagonal
    over the cyclic sectors within 1e−10 (Frobenius), else a
    :class:`NotCirculant` carrying the off-sector residual.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d * d, d * d):
        raise DimensionError(f"expected shape ({d * d}, {d * d}), got {rho.shape}")
    i = np.arange(d)
    projected = np.zeros_like(rho)
    mats = []
    for n in range(d):
        pos = i * d + (i + n) % d
        block = rho[np.ix_(pos, pos)]
        mats.append(block)
        projected[np.ix_(pos, pos)] = block
    residual = frobenius(rho - projected)
    if residual > CIRCULANT_RESIDUAL_TOL:
        return NotCirculant(residual)
    return CirculantSpec(d, tuple(mats))


def bell_projector(m: int, n: int, d: int) -> np.ndarray:
    """Rank-1 projector onto the maximally entangled state twisted by (m, n).

    The d² projectors are mutually orthogonal and sum to the identity;
    (m, n) = (0, 0) gives the plain maximally entangled projector.
    """
    if not (0 <= m < d and 0 <= n < d):
        raise IndexError(f"indices ({m}, {n}) out of range for d={d}")
    phases = np.exp(2j * np.pi * np.arange(d) / d)
    i = np.arange(d)
    pos = i * d + (i + n) % d
    P = np.zeros((d * d, d * d), dtype=complex)
    diff = (m * (i[:, None] - i[None, :])) % d
    P[np.ix_(pos, pos)] = phases[diff] / d
    return P


def bell_diagonal_state(w) -> CirculantSpec:
    """Circulant spec of Σ p[m,n]·(projector m,n): a^(n)_{ij} = (1/d) Σ_m p[m,n] λ^{m(i−j)}."""
    if not isinstance(w, BellWeights):
        p = np.asarray(w, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise DimensionError(f"expected a square weight matrix, got {p.shape}")
        w = BellWeights(p.shape[0], p)
    validate_bell_weights(w)
    d = w.d
    phases = np.exp(2j * np.pi * np.arange(d) / d)
    i = np.arange(d)
    diff = (i[:, None] - i[None, :]) % d
    mats = []
    for n in range(d):
        amp = phases[(np.arange(d)[:, None, None] * diff[None, :, :]) % d]
        mats.append(np.einsum("m,mij->ij", w.p[:, n], amp) / d)
    return CirculantSpec(d, tuple(mats))


def werner_state(d: int, lam: float, validate: bool = True) -> CirculantSpec:
    """Flip-symmetric circulant family with mixing parameter ``lam``.

    a^(0) = (λ/d + (1−λ)/d²)·I; for k ≥ 1, a^(k) carries (1−λ)/d² on the
    diagonal and λ/d at every position (i, i±k mod d).  For d = 2 this is
    exactly (1−λ)/d²·I⊗I + (λ/d)·F with F the swap; for larger d it is the
    Hermitian sector-diagonal family with the same one-parameter footprint
    (the swap itself mixes sectors and is not circulant).  With
    ``validate`` (default) a non-PSD result raises :class:`InvalidSpec`.
    """
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    base = (1.0 - lam) / d**2
    mats = [np.eye(d, dtype=complex) * (lam / d + base)]
    for k in range(1, d):
        m = np.eye(d, dtype=complex) * base
        i = np.arange(d)
        m[i, (i + k) % d] = lam / d
        m[(i + k) % d, i] = lam / d
        mats.append(m)
    spec = CirculantSpec(d, tuple(mats))
    if validate:
        validate_circulant_spec(spec)
    return spec


def isotropic_state(d: int, lam: float, validate: bool = True) -> CirculantSpec:
    """(1−λ)/d²·I⊗I + λ·(maximally entangled projector), as a circulant spec."""
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    base = (1.0 - lam) / d**2
    a0 = np.full((d, d), lam / d, dtype=complex) + np.eye(d) * base
    mats = [a0] + [np.eye(d, dtype=complex) * base for _ in range(1, d)]
    spec = CirculantSpec(d, tuple(mats))
    if validate:
        validate_circulant_spec(spec)
    return spec


def orthogonal_invariant_state(abc, d: int) -> np.ndarray:
    """Convex mixture a·P̃_0 + b·P̃_1 + c·P̃_2 of the three invariant projectors.

    P_2 is the maximally entangled projector, P_1 the antisymmetric
    projector (I−F)/2, and P_0 = (I+F)/2 − P_2; each is normalized by its
    trace (d(d+1)/2 − 1, d(d−1)/2 and 1 respectively).
    """
    a, b, c = (float(x) for x in abc)
    if min(a, b, c) < -ZERO_TOL or abs(a + b + c - 1.0) > 1e-12:
        raise InvalidSpec(f"weights ({a}, {b}, {c}) must be nonnegative and sum to 1")
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    F = flip_operator(d)
    eye = np.eye(d * d, dtype=complex)
    P2 = max_entangled_projector(d)
    Q_plus = (eye + F) / 2
    Q_minus = (eye - F) / 2
    P0 = Q_plus - P2
    return (
        a * P0 / (d * (d + 1) / 2 - 1)
        + b * Q_minus / (d * (d - 1) / 2)
        + c * P2
    )


def commuting_group_invariant_state(a: np.ndarray, dmat: np.ndarray) -> CirculantSpec:
    """Circulant spec with a^(0) = a and a^(k) = diag(dmat[i, i+k]) for k ≥ 1.

    ``a`` must be Hermitian PSD; ``dmat`` holds the nonnegative diagonal
    weights d_{ij} for i ≠ j (its diagonal must be zero) and the total
    trace tr(a) + Σ_{i≠j} d_{ij} must equal 1.
    """
    a = np.asarray(a, dtype=complex)
    dmat = np.asarray(dmat, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"a must be square, got {a.shape}")
    d = a.shape[0]
    if dmat.shape != (d, d):
        raise DimensionError(f"dmat must have shape ({d}, {d}), got {dmat.shape}")
    if frobenius(a - a.conj().T) > 1e-12 * max(1.0, frobenius(a)):
        raise InvalidSpec("a is not Hermitian")
    if np.linalg.eigvalsh(hermitize(a))[0] < EIG_FLOOR:
        raise InvalidSpec("a is not positive semidefinite")
    if np.any(dmat < -ZERO_TOL):
        raise InvalidSpec(f"negative weight {dmat.min():.3e} in dmat")
    if np.any(np.abs(np.diag(dmat)) > ZERO_TOL):
        raise InvalidSpec("diagonal entries of dmat must be zero")
    total = float(np.trace(a).real + dmat.sum())
    if abs(total - 1.0) > 1e-12:
        raise InvalidSpec(f"total trace {total}, expected 1")
    i = np.arange(d)
    mats = [a] + [
        np.diag(dmat[i, (i + k) % d]).astype(complex) for k in range(1, d)
    ]
    return CirculantSpec(d, tuple(mats))


def ppt_check_commuting(a: np.ndarray, dmat: np.ndarray) -> bool:
    """Positivity of the partial transpose: |a_{ij}|² ≤ d_{ij}·d_{ji} for all i ≠ j."""
    a = np.asarray(a, dtype=complex)
    dmat = np.asarray(dmat, dtype=float)
    d = a.shape[0]
    for i in range(d):
        for j in range(d):
            if i != j and abs(a[i, j]) ** 2 > dmat[i, j] * dmat[j, i] + 1e-12:
                return False
    return True
