"""Concurrence-style entanglement bounds for bipartite and multipartite states.

The central quantity is, per antisymmetric generator pair (sigma_A, sigma_B),

    X = max(2*max_i x_i - sum_i x_i, 0)

where the x_i are the square roots of the eigenvalues of

    rho * M * rho^* * M†,    M = sigma_A (x) sigma_B

(conjugation in the computational product basis, the same basis the
composite unitaries are built in).  M rho^* M† is PSD, so the spectrum
equals that of the Hermitian PSD matrix  K K†  with  K = sqrt(rho) M
sqrt(rho)^*; eigenvalues are computed on that form and never through a
general non-Hermitian solver.  Tiny negative eigenvalues are clamped to
zero.

Summing X^2 over all generator pairs gives the lower bound B^2; rotating
the generators by local unitaries and maximizing gives the optimized
bound.  The exact 2x2 term X_{1,2,1,2} maximized over two-dimensional
local subspaces yields the distillability witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .composite import build_ucs, build_unitary
from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    IndexOrderError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NormalizationError,
)
from .linalg import herm_eig, partial_trace, partial_transpose, permute_subsystems, psd_sqrt
from .optimize import OptimizerConfig, OptimizerResult, minimize

PPT_TOL = 1e-10
EIG_CLAMP = 1e-12
STATE_NORM_TOL = 1e-12


# ---------------------------------------------------------------------------
# elementary quantities

def linear_entropy(rho: np.ndarray) -> float:
    """d/(d-1) * (1 - Tr(rho^2)), clipped into [0, 1]."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if d < 2:
        raise DimensionMismatchError("linear entropy needs dimension >= 2")
    purity = float(np.trace(rho @ rho).real)
    return float(np.clip(d / (d - 1) * (1.0 - purity), 0.0, 1.0))


def max_concurrence(d: int) -> float:
    """Concurrence of a maximally entangled d x d state, sqrt(2(d-1)/d)."""
    return math.sqrt(2.0 * (d - 1) / d)


def pure_m_concurrence_sq(psi: np.ndarray, d_a: int, d_b: int) -> float:
    """Squared concurrence of a bipartite pure state, 2(d-1)/d * S_L(rho_A)."""
    psi = np.asarray(psi, dtype=complex).ravel()
    if d_a != d_b:
        raise DimensionMismatchError(f"local dimensions must match, got {d_a} and {d_b}")
    if d_a * d_b != psi.size:
        raise DimensionMismatchError(f"{d_a}*{d_b} != state length {psi.size}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > STATE_NORM_TOL:
        raise NormalizationError(f"state norm {nrm!r} differs from 1 beyond 1e-12")
    rho_a = partial_trace(np.outer(psi, psi.conj()), (d_a, d_b), keep=0)
    return 2.0 * (d_a - 1) / d_a * linear_entropy(rho_a)


# ---------------------------------------------------------------------------
# generator stacks and the Hermitian-route X evaluator

def sigma_pairs(d: int) -> list[tuple[int, int]]:
    """All 1-based index pairs (k, l) with k < l in dimension d."""
    return [(k, l) for k in range(1, d) for l in range(k + 1, d + 1)]


def _sigma_stack(d: int) -> np.ndarray:
    stack = np.zeros((d * (d - 1) // 2, d, d), dtype=complex)
    for t, (k, l) in enumerate(sigma_pairs(d)):
        stack[t, k - 1, l - 1] = -1j
        stack[t, l - 1, k - 1] = 1j
    return stack


def _x_from_sqrt(s: np.ndarray, sc: np.ndarray, m: np.ndarray) -> np.ndarray:
    """X values for a stack of generators m (leading axes are batch axes)."""
    k = s @ m @ sc
    g = k @ np.conj(np.swapaxes(k, -1, -2))
    w = np.clip(np.linalg.eigvalsh(g), 0.0, None)
    # Zero round-off eigenvalues of the rank-limited PSD product; their
    # square roots would otherwise pollute the sum at the 1e-8 level.
    w_top = w.max(axis=-1, keepdims=True)
    x = np.sqrt(np.where(w < w_top * EIG_CLAMP, 0.0, w))
    return np.maximum(2.0 * x.max(axis=-1) - x.sum(axis=-1), 0.0)


class _XEvaluator:
    """Precomputed sqrt(rho) plus generator stacks for repeated X sums."""

    def __init__(self, rho: np.ndarray, d_a: int, d_b: int):
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionMismatchError(f"density matrix must be square, got {rho.shape}")
        if d_a * d_b != rho.shape[0]:
            raise DimensionMismatchError(f"{d_a}*{d_b} != matrix size {rho.shape[0]}")
        if d_a < 2 or d_b < 2:
            raise DimensionMismatchError("both local dimensions must be >= 2")
        self.d_a, self.d_b = d_a, d_b
        self.sqrt_rho = psd_sqrt(rho)
        self.sqrt_rho_conj = self.sqrt_rho.conj()
        self.sig_a = _sigma_stack(d_a)
        self.sig_b = _sigma_stack(d_b)

    def x_matrix(self, rot_a: np.ndarray | None = None,
                 rot_b: np.ndarray | None = None) -> np.ndarray:
        """X for every generator pair; rows index A pairs, columns B pairs.

        ``rot_a`` / ``rot_b`` are stacks of conjugated generators replacing
        the plain ones (already of the form u† sigma u^*).
        """
        sa = self.sig_a if rot_a is None else rot_a
        sb = self.sig_b if rot_b is None else rot_b
        pa, pb = sa.shape[0], sb.shape[0]
        da, db = sa.shape[1], sb.shape[1]
        m = np.einsum("iab,jcd->ijacbd", sa, sb).reshape(pa, pb, da * db, da * db)
        return _x_from_sqrt(self.sqrt_rho, self.sqrt_rho_conj, m)


def _conjugated_stack(stack: np.ndarray, u: np.ndarray | None) -> np.ndarray:
    """u† sigma u^* for every generator in the stack (u = None -> identity)."""
    if u is None:
        return stack
    u = np.asarray(u, dtype=complex)
    if u.shape != stack.shape[1:]:
        raise DimensionMismatchError(f"unitary shape {u.shape} does not match dimension {stack.shape[1]}")
    return u.conj().T @ stack @ u.conj()


# ---------------------------------------------------------------------------
# bounds

@dataclass
class BoundReport:
    """Per-generator-pair X values and the resulting bound B = sqrt(sum X^2).

    Keys of ``terms`` are 1-based (k_a, l_a, k_b, l_b).  ``normalization``,
    when set, is the concurrence of the maximally entangled state; divide
    ``b`` by it to report the normalized bound.
    """

    terms: dict[tuple[int, int, int, int], float]
    b: float
    normalization: float | None = None

    @property
    def b_squared(self) -> float:
        return self.b * self.b

    @property
    def normalized_b(self) -> float:
        if self.normalization is None:
            raise ValueError("no normalization constant attached")
        return self.b / self.normalization


def bound_x(rho: np.ndarray, k_a: int, l_a: int, k_b: int, l_b: int,
            u_a: np.ndarray | None = None, u_b: np.ndarray | None = None,
            dims: tuple[int, int] | None = None) -> float:
    """Single term X_{k_a, l_a, k_b, l_b} >= 0 (1-based indices).

    ``u_a`` / ``u_b`` enter the eigenvalue product as u† sigma u^* (and
    its conjugate); None means identity.  ``dims`` gives (d_a, d_b); when
    omitted it is inferred from ``u_a`` or a symmetric split.
    """
    rho = np.asarray(rho, dtype=complex)
    if dims is not None:
        d_a, d_b = dims
    elif u_a is not None:
        d_a = u_a.shape[0]
        d_b = rho.shape[0] // d_a
    else:
        d_a = d_b = math.isqrt(rho.shape[0])
    ev = _XEvaluator(rho, d_a, d_b)
    for (k, l, d) in ((k_a, l_a, d_a), (k_b, l_b, d_b)):
        if not (1 <= k <= d and 1 <= l <= d):
            raise IndexOutOfRangeError(f"indices ({k},{l}) outside 1..{d}")
        if k >= l:
            raise IndexOrderError(f"require k < l, got ({k},{l})")
    sa = _conjugated_stack(ev.sig_a[[sigma_pairs(d_a).index((k_a, l_a))]], u_a)
    sb = _conjugated_stack(ev.sig_b[[sigma_pairs(d_b).index((k_b, l_b))]], u_b)
    return float(ev.x_matrix(sa, sb)[0, 0])


def bound_b(rho: np.ndarray, d_a: int, d_b: int,
            u_a: np.ndarray | None = None, u_b: np.ndarray | None = None,
            normalization: float | None = None) -> BoundReport:
    """Lower bound B(rho): all d_a(d_a-1)/2 * d_b(d_b-1)/2 generator pairs."""
    ev = _XEvaluator(rho, d_a, d_b)
    x = ev.x_matrix(_conjugated_stack(ev.sig_a, u_a), _conjugated_stack(ev.sig_b, u_b))
    terms = {
        (ka, la, kb, lb): float(x[i, j])
        for i, (ka, la) in enumerate(sigma_pairs(d_a))
        for j, (kb, lb) in enumerate(sigma_pairs(d_b))
    }
    return BoundReport(terms, float(np.sqrt(np.sum(x * x))), normalization)


# ---------------------------------------------------------------------------
# parameter packing for the optimization objectives

def offdiag_positions(d: int) -> list[tuple[int, int]]:
    """Row-major 0-based positions of the d^2 - d off-diagonal angles."""
    return [(i, j) for i in range(d) for j in range(d) if i != j]


def offdiag_to_matrix(vec: np.ndarray, d: int) -> np.ndarray:
    """Angle matrix with zero diagonal from a packed off-diagonal vector."""
    vec = np.asarray(vec, dtype=float).ravel()
    pos = offdiag_positions(d)
    if vec.size != len(pos):
        raise LengthMismatchError(f"expected {len(pos)} angles for d={d}, got {vec.size}")
    lam = np.zeros((d, d))
    rows, cols = zip(*pos)
    lam[rows, cols] = vec
    return lam


def ucs_block_positions(d: int, k: int = 2) -> list[tuple[int, int]]:
    """Row-major 0-based positions of the 2k(d-k) subspace-block angles."""
    return [(i, j) for i in range(d) for j in range(d)
            if (i < k <= j) or (j < k <= i)]


def ucs_block_to_matrix(vec: np.ndarray, d: int, k: int = 2) -> np.ndarray:
    """Angle matrix populated only at the subspace block positions."""
    vec = np.asarray(vec, dtype=float).ravel()
    pos = ucs_block_positions(d, k)
    if vec.size != len(pos):
        raise LengthMismatchError(
            f"expected {len(pos)} angles for d={d}, k={k}, got {vec.size}")
    lam = np.zeros((d, d))
    rows, cols = zip(*pos)
    lam[rows, cols] = vec
    return lam


# ---------------------------------------------------------------------------
# optimization objectives (negated for minimization)

def make_bopt_objective(rho: np.ndarray, d_a: int, d_b: int) -> Callable[[np.ndarray], float]:
    """Objective v -> -B^2(rho; v) over 2(d^2 - d) packed angles.

    The vector is the concatenation of the two off-diagonal packings.
    Each packing builds a composite product that enters the eigenvalue
    expression as the *adjoint* of the local rotation; with that
    convention appended diagonal phases reduce to a global phase on the
    conjugated generators and drop out of the objective exactly, which is
    why the diagonal angles are not part of the vector.
    """
    if d_a != d_b:
        raise DimensionMismatchError(f"local dimensions must match, got {d_a} and {d_b}")
    ev = _XEvaluator(rho, d_a, d_b)
    d = d_a
    n_side = d * d - d

    def objective(v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float).ravel()
        if v.size != 2 * n_side:
            raise LengthMismatchError(f"expected {2 * n_side} angles, got {v.size}")
        uc_a = build_unitary(offdiag_to_matrix(v[:n_side], d))
        uc_b = build_unitary(offdiag_to_matrix(v[n_side:], d))
        # u† sigma u^* with u = uc† is uc sigma uc^T.
        sa = uc_a @ ev.sig_a @ uc_a.T
        sb = uc_b @ ev.sig_b @ uc_b.T
        x = ev.x_matrix(sa, sb)
        return -float(np.sum(x * x))

    return objective


def bopt_objective(rho: np.ndarray, d_a: int, d_b: int,
                   params_a: np.ndarray, params_b: np.ndarray) -> float:
    """-B^2 for one pair of packed off-diagonal angle vectors."""
    f = make_bopt_objective(rho, d_a, d_b)
    return f(np.concatenate([np.asarray(params_a, dtype=float).ravel(),
                             np.asarray(params_b, dtype=float).ravel()]))


def make_distill_objective(rho: np.ndarray, d_a: int, d_b: int) -> Callable[[np.ndarray], float]:
    """Objective v -> -X^2_{1,2,1,2} over 2*(4d - 8) subspace-block angles.

    Each side contributes the 4d - 8 angles of a two-dimensional subspace
    product (empty for d = 2, where the term is already exact).
    """
    if d_a != d_b:
        raise DimensionMismatchError(f"local dimensions must match, got {d_a} and {d_b}")
    ev = _XEvaluator(rho, d_a, d_b)
    d = d_a
    n_side = 4 * d - 8
    sig12 = ev.sig_a[[0]]  # (1,2) is the first generator pair

    def objective(v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float).ravel()
        if v.size != 2 * n_side:
            raise LengthMismatchError(f"expected {2 * n_side} angles, got {v.size}")
        if d == 2:
            sa = sb = sig12
        else:
            ucs_a = build_ucs(ucs_block_to_matrix(v[:n_side], d), 2)
            ucs_b = build_ucs(ucs_block_to_matrix(v[n_side:], d), 2)
            sa = ucs_a @ sig12 @ ucs_a.T
            sb = ucs_b @ sig12 @ ucs_b.T
        x = ev.x_matrix(sa, sb)
        return -float(x[0, 0] ** 2)

    return objective


def distill_objective(rho: np.ndarray, d_a: int, d_b: int,
                      params_a: np.ndarray, params_b: np.ndarray) -> float:
    """-X^2_{1,2,1,2} for one pair of packed subspace-block angle vectors."""
    f = make_distill_objective(rho, d_a, d_b)
    return f(np.concatenate([np.asarray(params_a, dtype=float).ravel(),
                             np.asarray(params_b, dtype=float).ravel()]))


def optimized_bound_b(rho: np.ndarray, d_a: int, d_b: int,
                      cfg: OptimizerConfig | None = None) -> tuple[float, OptimizerResult]:
    """Maximized bound B_opt >= B via Nelder-Mead restarts."""
    f = make_bopt_objective(rho, d_a, d_b)
    result = minimize(f, 2 * (d_a * d_a - d_a), cfg)
    return math.sqrt(max(-result.value, 0.0)), result


def max_distill_x_sq(rho: np.ndarray, d_a: int, d_b: int,
                     cfg: OptimizerConfig | None = None) -> tuple[float, OptimizerResult]:
    """Maximized X^2_{1,2,1,2}; positive values witness distillability."""
    f = make_distill_objective(rho, d_a, d_b)
    result = minimize(f, 2 * (4 * d_a - 8), cfg)
    return max(-result.value, 0.0), result


# ---------------------------------------------------------------------------
# partial transposition test, bipartitions, copies

def ppt_min_eigenvalue(rho: np.ndarray, dims: Sequence[int], which: int = 1) -> float:
    """Minimum eigenvalue of the partial transpose; < -1e-10 means NPT."""
    pt = partial_transpose(np.asarray(rho, dtype=complex), dims, which)
    return float(herm_eig(pt).eigenvalues[0])


@dataclass(frozen=True)
class Bipartition:
    """Split of n subsystems into groups alpha and beta (0-based indices)."""

    n: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    d_alpha: int
    d_beta: int


def enumerate_bipartitions(n: int, dims: Sequence[int]) -> list[Bipartition]:
    """All 2^(n-1) - 1 splits, ordered by bitmask, subsystem 0 always in alpha."""
    dims = tuple(int(d) for d in dims)
    if n < 2:
        raise DimensionMismatchError(f"need at least 2 subsystems, got {n}")
    if len(dims) != n:
        raise DimensionMismatchError(f"dims has length {len(dims)}, expected {n}")
    parts = []
    for mask in range(2 ** (n - 1) - 1):
        alpha = (0,) + tuple(i + 1 for i in range(n - 1) if mask >> i & 1)
        beta = tuple(i for i in range(n) if i not in alpha)
        parts.append(Bipartition(
            n, alpha, beta,
            int(np.prod([dims[i] for i in alpha])),
            int(np.prod([dims[i] for i in beta])),
        ))
    return parts


@dataclass
class MultipartiteBound:
    """Bound summed over every bipartition, with the per-bipartition reports."""

    parts: tuple[tuple[Bipartition, BoundReport], ...]
    b: float

    @property
    def b_squared(self) -> float:
        return self.b * self.b


def multipartite_bound_b(rho: np.ndarray, dims: Sequence[int],
                         unitaries: Sequence[tuple[np.ndarray, np.ndarray]] | None = None,
                         ) -> MultipartiteBound:
    """Sum of bipartite B^2 over all bipartitions of an n-partite state.

    For each bipartition the subsystems are permuted into a contiguous
    alpha (x) beta layout (alpha factors first, in index order) before the
    bipartite bound is evaluated.  ``unitaries``, if given, lists one
    (u_alpha, u_beta) pair per bipartition in enumeration order.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(d) for d in dims)
    parts = enumerate_bipartitions(len(dims), dims)
    if unitaries is not None and len(unitaries) != len(parts):
        raise DimensionMismatchError(
            f"expected {len(parts)} unitary pairs, got {len(unitaries)}")
    reports = []
    total_sq = 0.0
    for i, bp in enumerate(parts):
        perm = list(bp.alpha) + list(bp.beta)
        rho_p = permute_subsystems(rho, dims, perm)
        u_a, u_b = unitaries[i] if unitaries is not None else (None, None)
        rep = bound_b(rho_p, bp.d_alpha, bp.d_beta, u_a, u_b)
        reports.append((bp, rep))
        total_sq += rep.b_squared
    return MultipartiteBound(tuple(reports), math.sqrt(total_sq))


def n_copy_state(rho: np.ndarray, dims: Sequence[int], n: int,
                 max_dim: int = 256) -> np.ndarray:
    """n-fold tensor power regrouped to the (A...A | B...B) bipartition.

    ``dims`` is the (d_a, d_b) layout of one copy; the result acts on
    d_a^n x d_b^n with all A factors first.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(d) for d in dims)
    if len(dims) != 2:
        raise DimensionMismatchError(f"expected a bipartite dims pair, got {dims}")
    if dims[0] * dims[1] != rho.shape[0]:
        raise DimensionMismatchError(f"{dims[0]}*{dims[1]} != matrix size {rho.shape[0]}")
    if n < 1:
        raise DimensionMismatchError(f"copy count must be >= 1, got {n}")
    total = (dims[0] * dims[1]) ** n
    if total > max_dim:
        raise DimensionTooLargeError(f"total dimension {total} exceeds cap {max_dim}")
    if n == 1:
        return rho.copy()
    out = rho
    for _ in range(n - 1):
        out = np.kron(out, rho)
    # copies are laid out A1 B1 A2 B2 ...; regroup to A1..An B1..Bn
    perm = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    return permute_subsystems(out, dims * n, perm)
