"""Transfer matrices in the ordered Pauli product basis and the decoherence function.

Basis: ``e_kl = e_k x e_l`` (system first) with index ``4k + l`` and

    e0 = I/sqrt2,  e1 = sx/sqrt2,  e2 = i sy/sqrt2,  e3 = sz/sqrt2.

With this sign of ``e2`` the coefficients ``rho_m = sqrt2 Tr[e_m^dagger rho_A]``
coincide with the ``(rho1, rho2, rho3)`` parametrization of ``AncillaState``
and the closed-form blocks below reproduce the brute-force transfer matrix
entry by entry.

All decoherence series are complex arrays ``D[0..n_max]`` with ``D[0] = 1``;
``D(n)`` multiplies the sigma_x-basis coherence ``<+|rho_S|->``.
"""

import numpy as np

from .ccm_maps import CollisionMap
from .collision_model import AncillaState
from .tensor_core import PAULI, check_density_matrix

_S2 = np.sqrt(2.0)
PAULI_BASIS = (
    PAULI["i"] / _S2,
    PAULI["x"] / _S2,
    1j * PAULI["y"] / _S2,
    PAULI["z"] / _S2,
)
PRODUCT_BASIS = tuple(np.kron(PAULI_BASIS[k], PAULI_BASIS[l]) for k in range(4) for l in range(4))

LIMIT_RADIUS = 1e-9
DEGENERATE_RADIUS = 1e-3

# sigma_x eigenbasis |+>, |->
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / _S2


def pair_index(k, l):
    return 4 * k + l


def superop_to_matrix(channel):
    """16x16 matrix ``T[kl, mn] = Tr[e_kl^dagger channel(e_mn)]`` of a two-qubit map."""
    if isinstance(channel, CollisionMap) and channel.params.L != 2:
        raise ValueError("transfer matrices are defined for L = 2 only")
    T = np.empty((16, 16), dtype=complex)
    for b, e_in in enumerate(PRODUCT_BASIS):
        out = np.asarray(channel(e_in))
        if out.shape != (4, 4):
            raise ValueError("channel must act on two-qubit operators")
        for a, e_out in enumerate(PRODUCT_BASIS):
            T[a, b] = np.vdot(e_out, out)
    return T


def ancilla_coefficients(ancilla):
    """``(rho0, ..., rho3)``; accepts an ``AncillaState`` or a 2x2 density matrix."""
    if isinstance(ancilla, AncillaState):
        return ancilla.coefficients
    rho = np.asarray(ancilla)
    return np.array([_S2 * np.vdot(e, rho) for e in PAULI_BASIS])


def a_blocks(epsilon, ancilla):
    """The 4x4 blocks ``A1`` and ``A2`` of the forward-order transfer matrix."""
    _, r1, r2, r3 = ancilla_coefficients(ancilla)
    c, s = np.cos(2 * epsilon), np.sin(2 * epsilon)
    A1 = np.array(
        [
            [1, 0, 0, 0],
            [r1 * c, 0, 0, -1j * r2 * s],
            [r2 * c, 0, 0, -1j * r1 * s],
            [r3, 0, 0, 0],
        ],
        dtype=complex,
    )
    A2 = np.array(
        [
            [0, c, -1j * r3 * s, 0],
            [0, r1, 0, 0],
            [0, r2, 0, 0],
            [0, r3 * c, -1j * s, 0],
        ],
        dtype=complex,
    )
    return A1, A2


def assemble_M_transfer(A1, A2, tau):
    """Lay out ``A1``/``A2`` into the 16x16 block pattern of the forward map."""
    c, s = np.cos(2 * tau), np.sin(2 * tau)
    Z = np.zeros((4, 4), dtype=complex)
    return np.block(
        [
            [A1, Z, Z, Z],
            [Z, A1, Z, Z],
            [Z, Z, c * A1, 1j * s * A2],
            [Z, Z, 1j * s * A2, c * A1],
        ]
    )


def build_M_transfer(params):
    if params.L != 2:
        raise ValueError("transfer matrices are defined for L = 2 only")
    A1, A2 = a_blocks(params.epsilon, params.ancilla)
    return assemble_M_transfer(A1, A2, params.tau)


def mprime_blocks(epsilon, tau, ancilla):
    """Blocks ``(A1', A2', B1, B2)`` of the reversed-order transfer matrix.

    ``A1'`` is ``A1`` with its ``e3`` column scaled by ``cos 2tau``; the
    off-diagonal blocks enter the full matrix multiplied by ``i sin 2tau``.
    """
    _, r1, r2, r3 = ancilla_coefficients(ancilla)
    ce, se = np.cos(2 * epsilon), np.sin(2 * epsilon)
    ct = np.cos(2 * tau)
    A1, _ = a_blocks(epsilon, ancilla)
    A1p = A1.copy()
    A1p[:, 3] *= ct
    A2p = np.zeros((4, 4), dtype=complex)
    A2p[1, 2] = -1j * r2 * se
    A2p[2, 2] = -1j * r1 * se
    B1 = np.array(
        [
            [ct, 0, 0, 0],
            [r1 * ce * ct, 0, 0, -1j * r2 * se],
            [r2 * ce * ct, 0, 0, -1j * r1 * se],
            [r3 * ct, 0, 0, 0],
        ],
        dtype=complex,
    )
    B2 = np.array(
        [
            [0, 1, 0, 0],
            [0, r1 * ce, 0, 0],
            [0, r2 * ce, 0, 0],
            [0, r3, 0, 0],
        ],
        dtype=complex,
    )
    return A1p, A2p, B1, B2


def build_Mprime_transfer(params):
    if params.L != 2:
        raise ValueError("transfer matrices are defined for L = 2 only")
    A1p, A2p, B1, B2 = mprime_blocks(params.epsilon, params.tau, params.ancilla)
    js = 1j * np.sin(2 * params.tau)
    Z = np.zeros((4, 4), dtype=complex)
    return np.block(
        [
            [A1p, js * A2p, Z, Z],
            [js * A2p, A1p, Z, Z],
            [Z, Z, B1, js * B2],
            [Z, Z, js * B2, B1],
        ]
    )


def _constraint_terms(Mn, rho, col_k):
    r30, r20 = pair_index(3, 0), pair_index(2, 0)
    cols = [pair_index(col_k, m) for m in range(4)]
    return np.dot(Mn[r30, cols] - Mn[r20, cols], rho)


def coherence_constraint(transfer, rho, n):
    """Both sides of the consistency relation that makes ``D(n)`` independent of ``z``.

    Returns ``(lhs, rhs)`` with ``lhs = sum_m ([M^n]_{30,3m} - [M^n]_{20,3m}) rho_m``
    and ``rhs = -sum_m ([M^n]_{30,2m} - [M^n]_{20,2m}) rho_m``.
    """
    Mn = np.linalg.matrix_power(transfer, n)
    return _constraint_terms(Mn, rho, 3), -_constraint_terms(Mn, rho, 2)


def d_via_transfer(params, n_max, transfer=None):
    """``D(n)`` from matrix elements of powers of the 16x16 transfer matrix."""
    T = build_M_transfer(params) if transfer is None else transfer
    rho = ancilla_coefficients(params.ancilla)
    out = np.empty(n_max + 1, dtype=complex)
    P = np.eye(16, dtype=complex)
    for n in range(n_max + 1):
        out[n] = _constraint_terms(P, rho, 3)
        P = P @ T
    return out


def xi_minus(params):
    A1, A2 = a_blocks(params.epsilon, params.ancilla)
    return np.cos(2 * params.tau) * A1 - 1j * np.sin(2 * params.tau) * A2


def _row0_series(matrix, rho, n_max):
    """``[matrix^n]_{0,:} . rho`` for ``n = 0..n_max`` by row-vector propagation."""
    out = np.empty(n_max + 1, dtype=complex)
    v = np.zeros(matrix.shape[0], dtype=complex)
    v[0] = 1
    for n in range(n_max + 1):
        out[n] = v @ rho
        v = v @ matrix
    return out


def d_via_xi(params, n_max):
    """``D(n) = sum_m [Xi_-^n]_{0m} rho_m`` with ``Xi_- = cos(2tau) A1 - i sin(2tau) A2``."""
    return _row0_series(xi_minus(params), ancilla_coefficients(params.ancilla), n_max)


def c_matrix(epsilon, tau):
    """2x2 reduction of ``Xi_-`` for ``rho_A = |+><+|``."""
    ct, st, ce = np.cos(2 * tau), np.sin(2 * tau), np.cos(2 * epsilon)
    return np.array([[ct, -1j * st * ce], [ct * ce, -1j * st]], dtype=complex)


def d_via_c_matrix(epsilon, tau, n_max):
    """``D(n) = [C^n]_00 + [C^n]_01`` for ``rho_A = |+><+|``."""
    return _row0_series(c_matrix(epsilon, tau), np.array([1, 1], dtype=complex), n_max)


def _power_sum(a, b, n):
    """``(a^n - b^n) / (a - b)`` evaluated as ``sum_k a^k b^(n-1-k)``; stable for ``a ~ b``."""
    if n == 0:
        return 0j
    k = np.arange(n)
    return np.sum(a**k * b ** (n - 1 - k))


def d_closed_form_plus(epsilon, tau, n):
    """Closed-form ``D(n)`` for ancillas in ``|+>``.

    ``D(n) = zeta_+ z_+^n - zeta_- z_-^n`` with
    ``z_pm = (exp(-2i tau) pm Delta)/2`` and
    ``Delta = sqrt(cos 4tau - i cos 4eps sin 4tau)`` (principal branch).

    Where ``cos 2eps`` or ``cos 2tau`` vanishes (within ``LIMIT_RADIUS``)
    the limit values ``cos(2tau)^n`` and ``(-i sin 2tau)^n cos 2eps`` are used;
    where ``Delta`` nearly vanishes the two eigenvalues merge and the
    equivalent two-eigenvalue interpolation formula is used instead.

    ``n`` may be an integer or an integer array.
    """
    n_arr = np.asarray(n)
    scalar = n_arr.ndim == 0
    n_arr = np.atleast_1d(n_arr).astype(int)
    if np.any(n_arr < 0):
        raise ValueError("n must be nonnegative")
    ce, ct, st = np.cos(2 * epsilon), np.cos(2 * tau), np.sin(2 * tau)
    if abs(ce) < 2 * LIMIT_RADIUS:
        out = ct ** n_arr.astype(float) + 0j
    elif abs(ct) < 2 * LIMIT_RADIUS:
        out = np.where(n_arr == 0, 1.0 + 0j, (-1j * st) ** n_arr * ce)
    else:
        delta = np.sqrt(complex(np.cos(4 * tau), -np.cos(4 * epsilon) * np.sin(4 * tau)))
        phase = np.exp(-2j * tau)
        zp, zm = (phase + delta) / 2, (phase - delta) / 2
        if abs(delta) < DEGENERATE_RADIUS:
            # C^n = p_n C - zp zm p_{n-1} I with p_n = (zp^n - zm^n)/(zp - zm)
            C = c_matrix(epsilon, tau)
            row = C[0, 0] + C[0, 1]
            out = np.array(
                [
                    1.0 + 0j
                    if k == 0
                    else _power_sum(zp, zm, k) * row - zp * zm * _power_sum(zp, zm, k - 1)
                    for k in n_arr
                ]
            )
        else:
            inv = np.exp(2j * tau)
            denom = 2 * ce * ct
            zeta_p = (1 - (inv - delta) / denom) * (inv + delta) / (2 * delta)
            zeta_m = (1 - (inv + delta) / denom) * (inv - delta) / (2 * delta)
            out = zeta_p * zp**n_arr - zeta_m * zm**n_arr
    out = np.where(n_arr == 0, 1.0 + 0j, out)
    return complex(out[0]) if scalar else out


def d_closed_form_series(epsilon, tau, n_max):
    return d_closed_form_plus(epsilon, tau, np.arange(n_max + 1))


def xi_prime(params):
    _, _, B1, B2 = mprime_blocks(params.epsilon, params.tau, params.ancilla)
    return B1 - 1j * np.sin(2 * params.tau) * B2


def dprime_series(params, n_max):
    """Reversed-order ``D'(n) = sum_m [(B1 - i sin(2tau) B2)^n]_{0m} rho_m``."""
    return _row0_series(xi_prime(params), ancilla_coefficients(params.ancilla), n_max)


def dprime_closed_form(epsilon, tau, n_max):
    """``D'(n) = exp(-2i tau) (cos 2tau - i sin 2tau cos 2eps)^(n-1)`` for ``rho_A = |+><+|``."""
    n = np.arange(n_max + 1)
    base = np.cos(2 * tau) - 1j * np.sin(2 * tau) * np.cos(2 * epsilon)
    out = np.exp(-2j * tau) * base ** np.maximum(n - 1, 0)
    out[0] = 1.0
    return out


def sigma_x_basis(rho):
    """Matrix of a qubit operator in the ``|+>, |->`` basis."""
    return _HADAMARD @ np.asarray(rho) @ _HADAMARD


def d_from_state_sequence(states, rho_S0, min_coherence=1e-10):
    """``D(n) = <+|rho_S(n)|-> / <+|rho_S(0)|->``.

    Raises ``ValueError`` when the initial coherence is too small to divide
    by; choose a coherent input such as ``|0><0|`` (sigma_z basis).
    """
    z = sigma_x_basis(check_density_matrix(rho_S0, (2,)))[0, 1]
    if abs(z) <= min_coherence:
        raise ValueError(
            f"initial sigma_x coherence |z| = {abs(z):.3g} is too small; "
            "use a state with <+|rho|-> != 0, e.g. |0><0|"
        )
    return np.array([sigma_x_basis(r)[0, 1] / z for r in states])
