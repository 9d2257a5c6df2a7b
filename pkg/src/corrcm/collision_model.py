"""Physical model: ancilla states, collision unitaries and the full chain.

The chain is laid out as ``S, A_1, ..., A_m`` (site 0 is the system). The
system-ancilla collision is ``exp(-i tau sx sx)`` and the built-in
ancilla-ancilla correlator is ``exp(-i epsilon sz sz)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .tensor_core import (
    apply_local,
    check_density_matrix,
    conjugate_local,
    kron,
    partial_trace,
    pauli_two_body_unitary,
    vector_reduced_state,
)

MAX_MIXED_ANCILLAS = 8
MAX_PURE_ANCILLAS = 14


class DimensionBudgetError(ValueError):
    """Requested chain is too large for the chosen representation."""


@dataclass(frozen=True)
class AncillaState:
    """Single-ancilla state in the ``(rho1, rho2, rho3)`` parametrization.

    In the sigma_z basis the density matrix is
    ``0.5 * [[1 + rho3, rho1 + rho2], [rho1 - rho2, 1 - rho3]]``, so
    ``rho1 = <sx>``, ``rho2 = -i <sy>`` and ``rho3 = <sz>``.
    """

    rho1: float = 1.0
    rho2: complex = 0j
    rho3: float = 0.0

    def __post_init__(self):
        r2 = complex(self.rho2)
        if abs(r2.real) > 1e-12:
            raise ValueError(f"rho2 must be purely imaginary, got {r2}")
        if np.imag(self.rho1) != 0 or np.imag(self.rho3) != 0:
            raise ValueError("rho1 and rho3 must be real")
        object.__setattr__(self, "rho1", float(np.real(self.rho1)))
        object.__setattr__(self, "rho2", complex(0.0, r2.imag))
        object.__setattr__(self, "rho3", float(np.real(self.rho3)))
        if self.rho1**2 + abs(self.rho2) ** 2 + self.rho3**2 > 1 + 1e-12:
            raise ValueError("ancilla parameters violate positivity (norm > 1)")

    @classmethod
    def from_bloch(cls, x, y, z):
        """Build from the Bloch vector ``(<sx>, <sy>, <sz>)``."""
        return cls(float(x), -1j * float(y), float(z))

    @classmethod
    def plus(cls):
        """The sigma_x eigenstate ``|+><+|``."""
        return cls(1.0, 0j, 0.0)

    @property
    def bloch(self):
        return np.array([self.rho1, -self.rho2.imag, self.rho3])

    @property
    def coefficients(self):
        """``(rho0, rho1, rho2, rho3)`` with ``rho0 = 1``."""
        return np.array([1.0, self.rho1, self.rho2, self.rho3], dtype=complex)

    def is_pure(self, tol=1e-12):
        return abs(np.sum(self.bloch**2) - 1) < tol


def ancilla_density(a):
    r1, r2, r3 = a.rho1, a.rho2, a.rho3
    return 0.5 * np.array([[1 + r3, r1 + r2], [r1 - r2, 1 - r3]], dtype=complex)


def build_SA_unitary(tau):
    return pauli_two_body_unitary("x", "x", tau)


def build_AA_unitary(epsilon):
    return pauli_two_body_unitary("z", "z", epsilon)


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the correlated collision model.

    ``correlator`` overrides the built-in ZZ correlator; it is required for
    ``L > 2`` and must be a ``2**L`` dimensional unitary. For ``L = 1`` the
    correlator defaults to the identity.
    """

    tau: float
    epsilon: float = 0.0
    L: int = 2
    ancilla: AncillaState = field(default_factory=AncillaState.plus)
    correlator: np.ndarray = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.L < 1:
            raise ValueError(f"correlation length must be >= 1, got {self.L}")
        if self.correlator is not None:
            w = np.asarray(self.correlator, dtype=complex)
            d = 2**self.L
            if w.shape != (d, d):
                raise ValueError(f"correlator must be {d}x{d} for L={self.L}")
            if np.abs(w @ w.conj().T - np.eye(d)).max() > 1e-10:
                raise ValueError("correlator is not unitary")
            w.setflags(write=False)
            object.__setattr__(self, "correlator", w)
        elif self.L > 2:
            raise ValueError("L > 2 needs an explicit correlator unitary")

    @property
    def W(self):
        if self.correlator is not None:
            return self.correlator
        if self.L == 1:
            return np.eye(2, dtype=complex)
        return build_AA_unitary(self.epsilon)

    @property
    def U(self):
        return build_SA_unitary(self.tau)

    @property
    def rho_A(self):
        return ancilla_density(self.ancilla)


@dataclass(frozen=True)
class ChainState:
    """Full state of ``S`` plus a chain of ancillas, before any collision."""

    state: np.ndarray
    n_ancillas: int
    collided: int = 0

    @property
    def dims(self):
        return (2,) * (self.n_ancillas + 1)


def _windows(params, n):
    """Ancilla sites of the correlator windows ``[L, 1], ..., [n+L-1, n]``."""
    return [tuple(range(j, j + params.L)) for j in range(1, n + 1)]


def build_initial_chain(params, rho_S, n, max_ancillas=MAX_MIXED_ANCILLAS):
    """Correlated initial state: fresh ancillas, then the windows in ascending order."""
    if n < 1:
        raise ValueError("need at least one collision")
    rho_S = check_density_matrix(rho_S, (2,))
    m = n + params.L - 1
    if m > max_ancillas:
        raise DimensionBudgetError(f"{m} ancillas exceed the budget of {max_ancillas}")
    rho = kron(rho_S, *([params.rho_A] * m))
    dims = (2,) * (m + 1)
    if params.L > 1:
        for window in _windows(params, n):
            rho = conjugate_local(params.W, rho, dims, window)
    return ChainState(rho, m)


def _pure_vector(rho, tol=1e-12):
    lam, vec = np.linalg.eigh(rho)
    if abs(lam[-1] - 1) > tol:
        return None
    return vec[:, -1]


def chain_reduced_state_oracle(params, rho_S, n, method="auto"):
    """System state after ``n`` collisions, by brute-force propagation of the chain.

    Applies ``W_[L,1], U_S1, W_[L+1,2], U_S2, ...`` to
    ``rho_S x rho_A^(n+L-1)`` and traces out every ancilla.

    ``method`` is ``"density"`` (any input, at most 8 ancillas), ``"vector"``
    (pure ``rho_S`` and ``rho_A``, at most 14 ancillas) or ``"auto"``,
    which picks the vector path when both inputs are pure.
    """
    rho_S = check_density_matrix(rho_S, (2,))
    if n == 0:
        return rho_S.copy()
    m = n + params.L - 1
    dims = (2,) * (m + 1)
    psi_S = _pure_vector(rho_S)
    psi_A = _pure_vector(params.rho_A)
    pure = psi_S is not None and psi_A is not None
    if method == "auto":
        method = "vector" if pure and m > MAX_MIXED_ANCILLAS else "density"
    if method == "vector":
        if not pure:
            raise ValueError("vector path needs pure system and ancilla states")
        if m > MAX_PURE_ANCILLAS:
            raise DimensionBudgetError(f"{m} ancillas exceed the pure-state budget")
        psi = kron(psi_S, *([psi_A] * m))
        for j, window in enumerate(_windows(params, n), start=1):
            if params.L > 1:
                psi = apply_local(params.W, psi, dims, window)
            psi = apply_local(params.U, psi, dims, (0, j))
        return vector_reduced_state(psi, dims, [0])
    if method != "density":
        raise ValueError(f"unknown method {method!r}")
    if m > MAX_MIXED_ANCILLAS:
        raise DimensionBudgetError(f"{m} ancillas exceed the mixed-state budget")
    rho = kron(rho_S, *([params.rho_A] * m))
    for j, window in enumerate(_windows(params, n), start=1):
        if params.L > 1:
            rho = conjugate_local(params.W, rho, dims, window)
        rho = conjugate_local(params.U, rho, dims, (0, j))
    return partial_trace(rho, dims, [0])


def basic_cm_reduced_state(params, rho_S, n):
    """``Lambda^n`` of the uncorrelated collision model (same ``U`` and ``rho_A``)."""
    rho = check_density_matrix(rho_S, (2,))
    U, rho_A = params.U, params.rho_A
    for _ in range(n):
        full = U @ np.kron(rho, rho_A) @ U.conj().T
        rho = partial_trace(full, (2, 2), [0])
    return rho


def pair_state_rho_AA(params, n):
    """State of ancillas ``A_n A_{n+1}`` just before ``A_n`` collides with ``S``.

    Built by the recursion ``sigma_1 = rho_A``,
    ``sigma_{j+1} = Tr_first[W (sigma_j x rho_A) W^dagger]``, returning
    ``W (sigma_n x rho_A) W^dagger``. It does not depend on ``tau`` or on
    the system state.
    """
    if params.L != 2:
        raise ValueError("pair state is defined for L = 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    W, rho_A = params.W, params.rho_A
    sigma = rho_A
    for _ in range(n - 1):
        pair = W @ np.kron(sigma, rho_A) @ W.conj().T
        sigma = partial_trace(pair, (2, 2), [1])
    return W @ np.kron(sigma, rho_A) @ W.conj().T
