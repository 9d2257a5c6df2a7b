"""Composite collision-model maps on ``S`` plus ``L - 1`` carried ancillas.

Slot order inside every map is ``S, carried ancillas (oldest first), fresh
ancilla``. The maps are plain callables on density matrices and extend
linearly to arbitrary (non-Hermitian) operators, which the transfer-matrix
and Choi constructions rely on.
"""

from dataclasses import dataclass

import numpy as np

from .tensor_core import (
    check_density_matrix,
    conjugate_local,
    kron,
    partial_trace,
)

KINDS = ("M", "M_alt", "M_prime")


def _composite_dim(params):
    return 2 ** params.L


def _check_theta(params, theta):
    theta = np.asarray(theta, dtype=complex)
    d = _composite_dim(params)
    if theta.shape != (d, d):
        raise ValueError(f"composite state must be {d}x{d} for L={params.L}, got {theta.shape}")
    return theta


def map_M_apply(params, theta):
    """One step of the composite map: correlate, collide with the oldest carried ancilla, discard it.

    ``theta`` lives on ``S, A_1, ..., A_{L-1}``. A fresh ancilla is appended
    as ``A_L``, the correlator acts on ``A_1 ... A_L``, ``U`` couples ``S`` to
    ``A_1`` and ``A_1`` is traced out, leaving ``S, A_2, ..., A_L``.
    """
    theta = _check_theta(params, theta)
    L = params.L
    dims = (2,) * (L + 1)
    rho = np.kron(theta, params.rho_A)
    if L > 1:
        rho = conjugate_local(params.W, rho, dims, range(1, L + 1))
    rho = conjugate_local(params.U, rho, dims, (0, 1))
    return partial_trace(rho, dims, [0] + list(range(2, L + 1)))


def _swap_adjacent(rho, dims, a, b):
    """Exchange the states of sites ``a`` and ``b`` by permuting tensor axes."""
    n = len(dims)
    perm = list(range(n))
    perm[a], perm[b] = perm[b], perm[a]
    t = rho.reshape(dims + dims)
    t = np.transpose(t, perm + [n + p for p in perm])
    return t.reshape(rho.shape)


def map_M_alt_apply(params, theta):
    """The same map written with a fixed memory block.

    Applies ``W`` on ``A_1 ... A_L`` followed by the swaps
    ``S_{2,1}, S_{3,2}, ..., S_{L,L-1}``, then ``U`` between ``S`` and the
    incoming slot ``A_L``, then traces ``A_L``.
    """
    theta = _check_theta(params, theta)
    L = params.L
    dims = (2,) * (L + 1)
    rho = np.kron(theta, params.rho_A)
    if L > 1:
        rho = conjugate_local(params.W, rho, dims, range(1, L + 1))
    for k in range(1, L):
        rho = _swap_adjacent(rho, dims, k, k + 1)
    rho = conjugate_local(params.U, rho, dims, (0, L))
    return partial_trace(rho, dims, list(range(L)))


def map_Mprime_apply(params, theta):
    """Reversed-order map: collide with the carried ancilla first, then correlate.

    ``U`` acts on ``S, A_1``; a fresh ``A_2`` is appended; ``W`` acts on
    ``A_1, A_2``; ``A_1`` is traced out.
    """
    if params.L != 2:
        raise ValueError("the reversed-order map is defined for L = 2 only")
    theta = _check_theta(params, theta)
    dims = (2, 2, 2)
    theta = params.U @ theta @ params.U.conj().T
    rho = np.kron(theta, params.rho_A)
    rho = conjugate_local(params.W, rho, dims, (1, 2))
    return partial_trace(rho, dims, [0, 2])


_APPLY = {"M": map_M_apply, "M_alt": map_M_alt_apply, "M_prime": map_Mprime_apply}


@dataclass(frozen=True)
class CollisionMap:
    """A composite map of a given ``kind`` bound to model parameters."""

    kind: str
    params: object

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind == "M_prime" and self.params.L != 2:
            raise ValueError("the reversed-order map is defined for L = 2 only")

    @property
    def dim(self):
        return _composite_dim(self.params)

    def __call__(self, theta):
        return _APPLY[self.kind](self.params, theta)


def initial_composite(params, rho_S):
    """``rho_S x rho_A^(L-1)``."""
    rho_S = check_density_matrix(rho_S, (2,))
    return kron(rho_S, *([params.rho_A] * (params.L - 1)))


def iterate_states(cmap, rho_S, n):
    """Reduced system states ``rho_S(0), ..., rho_S(n)`` under repeated ``cmap``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    L = cmap.params.L
    dims = (2,) * L
    theta = initial_composite(cmap.params, rho_S)
    out = [partial_trace(theta, dims, [0])]
    for _ in range(n):
        theta = cmap(theta)
        out.append(partial_trace(theta, dims, [0]))
    return out


def iterate_reduced(cmap, rho_S, n):
    """``Tr_ancillas cmap^n[rho_S x rho_A^(L-1)]``."""
    return iterate_states(cmap, rho_S, n)[-1]


def choi_matrix(channel, dim=None):
    """Normalized Choi matrix ``(channel x id)(|Omega><Omega|)``.

    ``|Omega> = sum_i |i>|i> / sqrt(dim)``, so a trace-preserving channel
    gives a unit-trace Choi matrix. ``channel`` may be a ``CollisionMap``
    or any linear callable on ``dim x dim`` matrices.
    """
    if dim is None:
        dim = channel.dim
    blocks = []
    for i in range(dim):
        row = []
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[i, j] = 1
            row.append(np.asarray(channel(e)))
        blocks.append(row)
    d_out = blocks[0][0].shape[0]
    J = np.zeros((d_out * dim, d_out * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            # output factor first, then the reference copy
            J[i::dim, j::dim] = blocks[i][j]
    return J / dim


@dataclass(frozen=True)
class CPTPReport:
    min_choi_eigenvalue: float
    max_trace_deviation: float
    max_hermiticity_deviation: float
    eig_tol: float = 1e-10
    trace_tol: float = 1e-12

    @property
    def ok(self):
        return (
            self.min_choi_eigenvalue >= -self.eig_tol
            and self.max_trace_deviation <= self.trace_tol
            and self.max_hermiticity_deviation <= self.trace_tol
        )


def cptp_check(channel, dim=None, eig_tol=1e-10, trace_tol=1e-12):
    """Complete positivity from the Choi spectrum, trace preservation on the matrix-unit basis."""
    if dim is None:
        dim = channel.dim
    J = choi_matrix(channel, dim)
    herm = float(np.abs(J - J.conj().T).max())
    lam_min = float(np.linalg.eigvalsh((J + J.conj().T) / 2).min())
    dev = 0.0
    for i in range(dim):
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[i, j] = 1
            dev = max(dev, abs(np.trace(channel(e)) - (i == j)))
    return CPTPReport(lam_min, float(dev), herm, eig_tol, trace_tol)

