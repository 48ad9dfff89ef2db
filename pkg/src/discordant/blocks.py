"""Block decompositions of bipartite states and structural zero-discord criteria.

A bipartite state decomposes as ρ = Σ_ij e_ij ⊗ B_ij (side B blocks) or
ρ = Σ_αβ A_αβ ⊗ e_αβ (side A blocks).  Discord measured on a side vanishes
iff that side's block family is simultaneously diagonalizable, i.e. every
block is normal and all blocks mutually commute — the general criterion
implemented by :func:`structural_discord_zero`.

For circulant states at prime local dimension the same question has a
closed form: the sector matrices must be phase-and-shift images of a^(0)
under a diagonal unitary V = diag(e^{iφ_n}) with φ_0 = 0,

    side A:  a^(k)_{ij} = e^{i(Ψ_k(i) − Ψ_k(j))} · a^(0)_{i+k, j+k}
    side B:  a^(k)_{ij} = e^{i(Ψ_k(i) − Ψ_k(j))} · a^(0)_{ij}

with Ψ_k(i) = Σ_{s<k} φ_{(i+s) mod d} (indices mod d).  The checkers here
fit the φ_n from the entry phases and then verify every relation, so a
valid family is always recognized and any violation yields a concrete
witness.  Bell-diagonal states additionally admit a weight-space test:
discord vanishes iff p[m, n] = π_{(m + nα) mod d} for some α.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    InvalidSpec,
    PreconditionError,
    PrimeRequired,
)
from .linalg import EIG_FLOOR, commutator_norm, frobenius, hermitize, kron
from .states import ZERO_TOL, BellWeights, CirculantSpec, validate_bell_weights

#: Default tolerance for structural checks.
DEFAULT_TOL = 1e-9
#: Eigenvalue gaps below this count as degenerate when building eigenbases.
DEGENERACY_GAP = 1e-8
#: Reassembly residual allowed for classical decompositions.
REASSEMBLY_TOL = 1e-8

CRITERION_COMMUTATION = "general-commutation"
CRITERION_CIRCULANT = "circulant-theorem"
CRITERION_BELL = "bell-theorem"
CRITERION_DIAGONAL = "diagonal-classical"


def is_prime(n: int) -> bool:
    """Primality by trial division (dimensions here are tiny)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_prime(d: int) -> None:
    if not is_prime(d):
        raise PrimeRequired(f"closed-form criteria require a prime dimension, got d={d}")


@dataclass(frozen=True)
class BlockDecomposition:
    """The d×d grid of d×d blocks of a state, for one measurement side."""

    side: str
    d: int
    blocks: np.ndarray  # shape (d, d, d, d); blocks[i, j] is one block


@dataclass(frozen=True)
class PhaseVector:
    """Angles of the diagonal unitary V = diag(e^{iφ_n}); φ_0 is pinned to 0."""

    d: int
    phi: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float)
        if phi.shape != (self.d,):
            raise DimensionError(f"expected {self.d} angles, got shape {phi.shape}")
        if phi[0] != 0.0:
            raise InvalidSpec("phi[0] must be exactly 0")
        object.__setattr__(self, "phi", phi)


@dataclass
class StructuralVerdict:
    """Outcome of a structural zero-discord test."""

    zero_discord: bool
    side: str  # "A", "B", or "both"
    criterion: str
    witness: dict | None = None
    fitted_phases: PhaseVector | None = None
    alpha: int | None = None
    pi: np.ndarray | None = None

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "zero_discord": self.zero_discord,
            "criterion": self.criterion,
            "alpha": self.alpha,
            "phases": None if self.fitted_phases is None else [float(x) for x in self.fitted_phases.phi],
            "pi": None if self.pi is None else [float(x) for x in self.pi],
            "witness": self.witness,
        }


@dataclass(frozen=True)
class ConditionFailure:
    """One violated entry condition: which relation, where, and by how much."""

    condition: str
    n: int
    i: int
    j: int
    got: float
    want: float

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "n": self.n,
            "entry": [self.i, self.j],
            "got": self.got,
            "want": self.want,
        }


@dataclass
class NecessaryConditionsReport:
    """Result of the modulus/diagonal prechecks for one side."""

    side: str
    passed: bool
    diagonal_classical: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "passed": self.passed,
            "diagonal_classical": self.diagonal_classical,
            "failures": [f.to_json() for f in self.failures],
        }


def extract_blocks(rho: np.ndarray, d: int, side: str) -> BlockDecomposition:
    """Slice a d²×d² state into its side-A or side-B block grid.

    Side B: blocks[i, j][k, l] = ρ[i·d+k, j·d+l] (operators on the second
    factor).  Side A: blocks[α, β][i, j] = ρ[i·d+α, j·d+β] (operators on
    the first factor).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d * d, d * d):
        raise DimensionError(f"expected shape ({d * d}, {d * d}), got {rho.shape}")
    four = rho.reshape(d, d, d, d)
    if side == "B":
        blocks = four.transpose(0, 2, 1, 3)
    elif side == "A":
        blocks = four.transpose(1, 3, 0, 2)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return BlockDecomposition(side, d, np.ascontiguousarray(blocks))


def structural_discord_zero(
    rho: np.ndarray, d: int, side: str, tol: float = DEFAULT_TOL
) -> StructuralVerdict:
    """Zero discord on a side iff that side's blocks are normal and mutually commute.

    On failure the witness names the worst offender: the first non-normal
    block, or the pair with the largest relative commutator norm
    (lexicographically first on ties).
    """
    dec = extract_blocks(rho, d, side)
    blocks = dec.blocks
    for i in range(d):
        for j in range(d):
            B = blocks[i, j]
            Bd = B.conj().T
            defect = frobenius(B @ Bd - Bd @ B)
            if defect > tol * max(1.0, frobenius(B) ** 2):
                return StructuralVerdict(
                    False,
                    side,
                    CRITERION_COMMUTATION,
                    witness={
                        "kind": "non-normal-block",
                        "block": [i, j],
                        "defect": float(defect),
                        "tolerance": float(tol * max(1.0, frobenius(B) ** 2)),
                    },
                )
    index = [(i, j) for i in range(d) for j in range(d)]
    worst = None  # (relative norm, pair, absolute norm, threshold)
    for p in range(len(index)):
        for q in range(p + 1, len(index)):
            (i1, j1), (i2, j2) = index[p], index[q]
            B1, B2 = blocks[i1, j1], blocks[i2, j2]
            thr = tol * max(1.0, frobenius(B1) * frobenius(B2))
            norm = commutator_norm(B1, B2)
            if norm > thr:
                rel = norm / max(1.0, frobenius(B1) * frobenius(B2))
                if worst is None or rel > worst[0]:
                    worst = (rel, (index[p], index[q]), norm, thr)
    if worst is not None:
        (i1, j1), (i2, j2) = worst[1]
        return StructuralVerdict(
            False,
            side,
            CRITERION_COMMUTATION,
            witness={
                "kind": "non-commuting-blocks",
                "blocks": [[i1, j1], [i2, j2]],
                "commutator_norm": float(worst[2]),
                "tolerance": float(worst[3]),
            },
        )
    return StructuralVerdict(True, side, CRITERION_COMMUTATION)


def _all_diagonal(spec: CirculantSpec) -> bool:
    return all(
        np.all(np.abs(m - np.diag(np.diag(m))) <= ZERO_TOL) for m in spec.a
    )


def _psi_table(phi: np.ndarray) -> np.ndarray:
    """Window sums Ψ[k, i] = Σ_{s<k} φ_{(i+s) mod d}."""
    d = phi.shape[0]
    psi = np.zeros((d, d))
    for k in range(1, d):
        psi[k] = psi[k - 1] + phi[(np.arange(d) + k - 1) % d]
    return psi


def phase_family(a0: np.ndarray, phi: np.ndarray, side: str) -> list[np.ndarray]:
    """Build the d sector matrices generated by a^(0) and phase angles φ."""
    a0 = np.asarray(a0, dtype=complex)
    d = a0.shape[0]
    psi = _psi_table(np.asarray(phi, dtype=float))
    idx = np.arange(d)
    mats = []
    for k in range(d):
        phase = np.exp(1j * (psi[k][:, None] - psi[k][None, :]))
        if side == "A":
            base = a0[np.ix_((idx + k) % d, (idx + k) % d)]
        elif side == "B":
            base = a0
        else:
            raise ValueError(f"side must be 'A' or 'B', got {side!r}")
        mats.append(phase * base)
    return mats


def _fit_phases(spec: CirculantSpec, side: str) -> np.ndarray:
    """Fit the angles φ_n from entry phases of the sector matrices.

    Every consecutive pair of sector matrices supplies pure difference
    constraints φ_u − φ_v = δ between two indices; these are propagated
    breadth-first over the constraint graph.  Node 0 (and the smallest
    node of any separate component) is anchored at 0 — per-component
    offsets drop out of every window sum the relations use, so the
    subsequent full verification is unaffected by the anchoring choice.
    Entries with modulus below 1e−12 carry no usable phase and produce
    no constraint.
    """
    d = spec.d
    a = spec.a
    edges: list[tuple[int, int, float]] = []
    if side == "B":
        for i in range(d):
            for j in range(i + 1, d):
                if abs(a[0][i, j]) <= ZERO_TOL:
                    continue
                for k in range(d - 1):
                    z0, z1 = a[k][i, j], a[k + 1][i, j]
                    if abs(z0) <= ZERO_TOL or abs(z1) <= ZERO_TOL:
                        continue
                    u, v = (i + k) % d, (j + k) % d
                    edges.append((u, v, float(np.angle(z1) - np.angle(z0))))
    else:
        for m in range(d):
            for c in range(1, d):
                if abs(a[0][m, (m + c) % d]) <= ZERO_TOL:
                    continue
                for k in range(d - 1):
                    r0, c0 = (m - k) % d, (m + c - k) % d
                    r1, c1 = (m - k - 1) % d, (m + c - k - 1) % d
                    z0, z1 = a[k][r0, c0], a[k + 1][r1, c1]
                    if abs(z0) <= ZERO_TOL or abs(z1) <= ZERO_TOL:
                        continue
                    edges.append((r1, c1, float(np.angle(z1) - np.angle(z0))))
    adj: dict[int, list[tuple[int, float]]] = {n: [] for n in range(d)}
    for u, v, delta in edges:
        adj[u].append((v, -delta))  # φ_v = φ_u − δ
        adj[v].append((u, delta))   # φ_u = φ_v + δ
    phi = np.zeros(d)
    visited = [False] * d
    for root in range(d):
        if visited[root]:
            continue
        visited[root] = True
        phi[root] = 0.0
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v, delta in adj[u]:
                if not visited[v]:
                    visited[v] = True
                    phi[v] = phi[u] + delta
                    queue.append(v)
    phi = np.angle(np.exp(1j * phi))
    phi[0] = 0.0
    return phi


def _spec_scale(spec: CirculantSpec) -> float:
    return max(1.0, max(frobenius(m) for m in spec.a))


def _verify_phase_family(
    spec: CirculantSpec, phi: np.ndarray, side: str, tol: float
):
    """Compare every sector matrix against the phase-generated family.

    Returns None when all entries match within tol·max(1, scale), else the
    lexicographically first violation as a witness dict.
    """
    family = phase_family(spec.a[0], phi, side)
    thr = tol * _spec_scale(spec)
    for k in range(spec.d):
        delta = np.abs(family[k] - spec.a[k])
        if np.any(delta > thr):
            i, j = np.argwhere(delta > thr)[0]
            return {
                "kind": "relation-violation",
                "k": int(k),
                "entry": [int(i), int(j)],
                "expected": [float(family[k][i, j].real), float(family[k][i, j].imag)],
                "actual": [float(spec.a[k][i, j].real), float(spec.a[k][i, j].imag)],
                "delta": float(delta[i, j]),
                "tolerance": float(thr),
            }
    return None


def circulant_theorem_check(
    spec: CirculantSpec, side: str, tol: float = DEFAULT_TOL
) -> StructuralVerdict:
    """Closed-form zero-discord test for circulant states at prime d.

    Fits phase angles from the sector-matrix entries and verifies the full
    phase-and-shift relation for every sector; all-diagonal specs are
    classical outright.
    """
    _require_prime(spec.d)
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if _all_diagonal(spec):
        return StructuralVerdict(True, side, CRITERION_DIAGONAL)
    phi = _fit_phases(spec, side)
    phases = PhaseVector(spec.d, phi)
    witness = _verify_phase_family(spec, phi, side, tol)
    if witness is None:
        return StructuralVerdict(
            True, side, CRITERION_CIRCULANT, fitted_phases=phases
        )
    return StructuralVerdict(
        False, side, CRITERION_CIRCULANT, witness=witness, fitted_phases=phases
    )


def circulant_necessary_conditions(
    spec: CirculantSpec, side: str, tol: float = DEFAULT_TOL
) -> NecessaryConditionsReport:
    """Modulus and diagonal prechecks implied by the zero-discord form.

    Side B requires |a^(n)_{ij}| = |a^(0)_{ij}| off the diagonal and
    a^(n)_{kk} = a^(0)_{kk}; side A the same with a^(0) indices shifted
    by n.  These are necessary, not sufficient (phases are not checked).
    """
    _require_prime(spec.d)
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if _all_diagonal(spec):
        return NecessaryConditionsReport(side, True, True)
    d = spec.d
    thr = tol * _spec_scale(spec)
    failures = []
    for n in range(1, d):
        for i in range(d):
            for j in range(d):
                if side == "B":
                    ref = spec.a[0][i, j]
                else:
                    ref = spec.a[0][(i + n) % d, (j + n) % d]
                got = spec.a[n][i, j]
                if i == j:
                    if abs(got - ref) > thr:
                        failures.append(
                            ConditionFailure(
                                "diagonal-invariance" if side == "B" else "diagonal-shift",
                                n, i, j, float(got.real), float(ref.real),
                            )
                        )
                elif abs(abs(got) - abs(ref)) > thr:
                    failures.append(
                        ConditionFailure(
                            "offdiagonal-modulus" if side == "B" else "offdiagonal-modulus-shift",
                            n, i, j, float(abs(got)), float(abs(ref)),
                        )
                    )
    return NecessaryConditionsReport(side, not failures, False, failures)


def generate_zero_discord(a0: np.ndarray, phases, side: str) -> CirculantSpec:
    """Build the zero-discord circulant family seeded by a^(0) and phases.

    The input matrix is symmetrized, checked PSD, and scaled so the
    sector traces sum to 1; the output passes
    :func:`circulant_theorem_check` on the chosen side by construction.
    """
    a0 = np.asarray(a0, dtype=complex)
    if a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
        raise DimensionError(f"a0 must be square, got {a0.shape}")
    d = a0.shape[0]
    _require_prime(d)
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if frobenius(a0 - a0.conj().T) > 1e-10 * max(1.0, frobenius(a0)):
        raise InvalidSpec("a0 is not Hermitian")
    a0 = hermitize(a0)
    if np.linalg.eigvalsh(a0)[0] < EIG_FLOOR:
        raise InvalidSpec("a0 is not positive semidefinite")
    tr = float(np.trace(a0).real)
    if tr <= ZERO_TOL:
        raise InvalidSpec("a0 must have positive trace")
    phi = phases.phi if isinstance(phases, PhaseVector) else np.asarray(phases, dtype=float)
    if phi.shape != (d,):
        raise DimensionError(f"expected {d} phase angles, got shape {phi.shape}")
    mats = phase_family(a0 / (d * tr), phi, side)
    return CirculantSpec(d, tuple(mats))


def completely_classical_check(
    spec: CirculantSpec, tol: float = DEFAULT_TOL
) -> StructuralVerdict:
    """Test whether discord vanishes on both sides simultaneously.

    Requires a uniform diagonal a^(0)_{ii} = 1/d², a constant off-diagonal
    modulus in a^(0), and a fittable side-A phase relation; all-diagonal
    specs are classical unconditionally.
    """
    _require_prime(spec.d)
    if _all_diagonal(spec):
        return StructuralVerdict(True, "both", CRITERION_DIAGONAL)
    d = spec.d
    thr = tol * _spec_scale(spec)
    diag = np.diag(spec.a[0])
    target = 1.0 / d**2
    for i in range(d):
        if abs(diag[i] - target) > thr:
            return StructuralVerdict(
                False,
                "both",
                CRITERION_CIRCULANT,
                witness={
                    "kind": "nonuniform-diagonal",
                    "entry": [int(i), int(i)],
                    "got": float(diag[i].real),
                    "want": target,
                },
            )
    off = np.abs(spec.a[0][~np.eye(d, dtype=bool)])
    if off.size and off.max() - off.min() > thr:
        return StructuralVerdict(
            False,
            "both",
            CRITERION_CIRCULANT,
            witness={
                "kind": "nonconstant-offdiagonal-modulus",
                "min": float(off.min()),
                "max": float(off.max()),
            },
        )
    inner = circulant_theorem_check(spec, "A", tol)
    return StructuralVerdict(
        inner.zero_discord,
        "both",
        inner.criterion,
        witness=inner.witness,
        fitted_phases=inner.fitted_phases,
    )


def bell_zero_discord_check(w, tol: float = DEFAULT_TOL) -> StructuralVerdict:
    """Weight-space zero-discord test for Bell-diagonal states at prime d.

    Discord vanishes (on both sides at once) iff p[m, n] = π_{(m+nα) mod d}
    for some α; the smallest qualifying α is reported together with the
    recovered π values.
    """
    if not isinstance(w, BellWeights):
        p = np.asarray(w, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise DimensionError(f"expected a square weight matrix, got {p.shape}")
        w = BellWeights(p.shape[0], p)
    validate_bell_weights(w)
    d = w.d
    _require_prime(d)
    m_idx, n_idx = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    best = None  # (max spread, alpha)
    for alpha in range(d):
        residue = (m_idx + n_idx * alpha) % d
        spread = 0.0
        pi = np.zeros(d)
        for r in range(d):
            vals = w.p[residue == r]
            spread = max(spread, float(vals.max() - vals.min()))
            pi[r] = float(vals.mean())
        if spread <= tol:
            return StructuralVerdict(
                True, "both", CRITERION_BELL, alpha=alpha, pi=pi
            )
        if best is None or spread < best[0]:
            best = (spread, alpha)
    return StructuralVerdict(
        False,
        "both",
        CRITERION_BELL,
        witness={
            "kind": "residue-class-spread",
            "best_alpha": int(best[1]),
            "spread": float(best[0]),
            "tolerance": float(tol),
        },
    )


def _hermitian_generators(blocks: np.ndarray, d: int) -> list[np.ndarray]:
    """Hermitian spanning set of an adjoint-closed commuting block family."""
    gens = [blocks[i, i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            gens.append(blocks[i, j] + blocks[j, i])
            gens.append(1j * (blocks[i, j] - blocks[j, i]))
    return [hermitize(g) for g in gens]


def _refine_eigenbasis(gens: list[np.ndarray], d: int) -> np.ndarray:
    """Sequentially diagonalize commuting Hermitian generators.

    Starts from the eigenbasis of the first generator and re-diagonalizes
    each later generator inside every remaining degenerate eigenspace.
    """
    U = np.eye(d, dtype=complex)
    groups = [list(range(d))]
    for g in gens:
        new_groups = []
        for grp in groups:
            if len(grp) == 1:
                new_groups.append(grp)
                continue
            sub = U[:, grp].conj().T @ g @ U[:, grp]
            w, v = np.linalg.eigh(hermitize(sub))
            U[:, grp] = U[:, grp] @ v
            start = 0
            for t in range(1, len(grp) + 1):
                if t == len(grp) or w[t] - w[t - 1] > DEGENERACY_GAP:
                    new_groups.append(grp[start:t])
                    start = t
        groups = new_groups
    return U


def classical_decomposition(
    rho: np.ndarray, d: int, side: str, seed: int = 0, tol: float = DEFAULT_TOL
) -> list[tuple[float, np.ndarray, np.ndarray]]:
    """Decompose a zero-discord state as Σ p_k |k⟩⟨k| ⊗ ρ_k on the given side.

    The common eigenbasis comes from a random Hermitian combination of the
    commuting blocks (redrawn up to five times on spectral degeneracy,
    then refined sequentially inside degenerate eigenspaces).  Raises
    :class:`PreconditionError` when the structural test fails or the
    reassembly residual exceeds 1e−8.
    """
    verdict = structural_discord_zero(rho, d, side, tol)
    if not verdict.zero_discord:
        raise PreconditionError(
            f"state has nonzero structural discord on side {side}: {verdict.witness}"
        )
    blocks = extract_blocks(rho, d, side).blocks
    gens = _hermitian_generators(blocks, d)
    rng = np.random.default_rng(seed)
    U = None
    for _ in range(5):
        coeffs = rng.standard_normal(len(gens))
        M = sum(c * g for c, g in zip(coeffs, gens))
        w, v = np.linalg.eigh(hermitize(M))
        if d == 1 or np.diff(w).min() >= DEGENERACY_GAP:
            U = v
            break
    if U is None:
        U = _refine_eigenbasis(gens, d)
    rho4 = np.asarray(rho, dtype=complex).reshape(d, d, d, d)
    result = []
    reassembled = np.zeros_like(np.asarray(rho, dtype=complex))
    for k in range(d):
        vec = U[:, k]
        if side == "A":
            sigma = np.einsum("a,abcd,c->bd", vec.conj(), rho4, vec)
        else:
            sigma = np.einsum("b,abcd,d->ac", vec.conj(), rho4, vec)
        p = float(np.trace(sigma).real)
        if p >= 1e-14:
            cond = hermitize(sigma) / p
        else:
            p = max(p, 0.0)
            cond = np.eye(d, dtype=complex) / d
        proj = np.outer(vec, vec.conj())
        if side == "A":
            reassembled += kron(proj, sigma)
        else:
            reassembled += kron(sigma, proj)
        result.append((p, vec, cond))
    residual = frobenius(np.asarray(rho, dtype=complex) - reassembled)
    if residual > REASSEMBLY_TOL:
        raise PreconditionError(
            f"classical reassembly residual {residual:.3e} exceeds {REASSEMBLY_TOL}"
        )
    return result
