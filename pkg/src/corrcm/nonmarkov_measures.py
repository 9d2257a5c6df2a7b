"""Trace-distance dynamics, BLP non-Markovianity and ancilla-pair correlations."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .collision_model import AncillaState, ModelParams, pair_state_rho_AA
from .liouville_rep import d_closed_form_series, d_via_xi, dprime_series
from .tensor_core import PAULI, partial_trace

INCREASE_TOL = 1e-12
ETA_GRID = 1001
ETA_XTOL = 1e-10
ENTROPY_CUTOFF = 1e-14

_GOLDEN = (np.sqrt(5) - 1) / 2


def trace_distance_qubit(p1, z1, p2, z2, D_n):
    """Trace distance of two dephased qubit states given their sigma_x-basis data.

    Each state is ``[[p, D z], [D* z*, 1 - p]]`` in the ``|+>, |->`` basis.
    """
    for p, z in ((p1, z1), (p2, z2)):
        if not 0 <= p <= 1 or abs(z) ** 2 > p * (1 - p) + 1e-12:
            raise ValueError(f"invalid qubit parameters p={p}, z={z}")
    return float(np.sqrt((p1 - p2) ** 2 + abs(D_n) ** 2 * abs(z1 - z2) ** 2))


@dataclass(frozen=True)
class BLPResult:
    value: float
    eta_star: float
    s_plus: tuple
    n_max: int


def _blp_objective(eta, upper, lower):
    eta = np.asarray(eta, dtype=float)[..., None]
    return (np.sqrt(eta + upper * (1 - eta)) - np.sqrt(eta + lower * (1 - eta))).sum(-1)


def _golden_max(f, a, b, xtol):
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def blp_from_series(series):
    """BLP measure of a decoherence series, maximized over antipodal pairs.

    Only ``|D(n)|`` matters. Increases below ``INCREASE_TOL`` are treated as
    rounding noise. The maximum over the antipodal-pair parameter ``eta`` is
    located on a 1001-point grid and refined by golden-section search.
    """
    absD = np.abs(np.asarray(series))
    if absD.size == 0:
        raise ValueError("series must be nonempty")
    n_max = absD.size - 1
    s_plus = np.nonzero(np.diff(absD) > INCREASE_TOL)[0]
    if s_plus.size == 0:
        return BLPResult(0.0, 0.0, (), n_max)
    upper, lower = absD[s_plus + 1] ** 2, absD[s_plus] ** 2
    grid = np.linspace(0.0, 1.0, ETA_GRID)
    vals = _blp_objective(grid, upper, lower)
    i = int(np.argmax(vals))
    best_eta, best = grid[i], float(vals[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, ETA_GRID - 1)]
    eta, val = _golden_max(lambda e: float(_blp_objective(e, upper, lower)), lo, hi, ETA_XTOL)
    if val > best:
        best_eta, best = eta, val
    return BLPResult(max(best, 0.0), float(best_eta), tuple(int(k) for k in s_plus), n_max)


@dataclass(frozen=True)
class SweepGrid:
    """BLP values on an ``(epsilon, tau)`` grid; ``values[i, j]`` belongs to ``(eps[i], tau[j])``."""

    epsilon_axis: np.ndarray
    tau_axis: np.ndarray
    values: np.ndarray
    n_max: int
    variant: str

    def argmax(self):
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.epsilon_axis[i]), float(self.tau_axis[j]), float(self.values[i, j])


def _check_axis(axis, name):
    axis = np.asarray(axis, dtype=float).ravel()
    if axis.size == 0:
        raise ValueError(f"{name} axis is empty")
    if axis.size > 1 and np.any(np.diff(axis) <= 0):
        raise ValueError(f"{name} axis must be strictly increasing")
    return axis


def decoherence_series(epsilon, tau, n_max, variant="forward", ancilla=None):
    """``D(n)`` (``variant="forward"``) or ``D'(n)`` (``"reversed"``) for one parameter point."""
    if variant not in ("forward", "reversed"):
        raise ValueError(f"unknown variant {variant!r}")
    plus = ancilla is None or ancilla == AncillaState.plus()
    if variant == "forward" and plus:
        return d_closed_form_series(epsilon, tau, n_max)
    params = ModelParams(tau, epsilon, 2, ancilla or AncillaState.plus())
    if variant == "forward":
        return d_via_xi(params, n_max)
    return dprime_series(params, n_max)


def _sweep_row(args):
    eps, tau_axis, n_max, variant, ancilla = args
    return [blp_from_series(decoherence_series(eps, t, n_max, variant, ancilla)).value for t in tau_axis]


def resolve_workers(workers=None, env="CORRCM_THREADS"):
    """Worker count: explicit argument, then the environment variable, then 1."""
    if workers is None:
        workers = int(os.environ.get(env, "1"))
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return workers


def blp_sweep(epsilon_axis, tau_axis, n_max=100, variant="forward", ancilla=None, workers=1):
    """BLP measure on every ``(epsilon, tau)`` cell.

    Rows are distributed over ``workers`` processes; the result does not
    depend on the worker count.
    """
    eps = _check_axis(epsilon_axis, "epsilon")
    taus = _check_axis(tau_axis, "tau")
    jobs = [(e, taus, n_max, variant, ancilla) for e in eps]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    return SweepGrid(eps, taus, np.array(rows, dtype=float), n_max, variant)


_YY = np.kron(PAULI["y"], PAULI["y"])


def concurrence_two_qubit(rho):
    """Wootters concurrence in the sigma_z x sigma_z basis.

    The ``lambda_i`` are taken as singular values of
    ``sqrt(rho) (sigma_y x sigma_y) sqrt(rho)^*`` rather than square roots of
    the eigenvalues of ``rho rho~``; this keeps pure-state values accurate to
    machine precision instead of ``sqrt(eps)``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("concurrence needs a 4x4 density matrix")
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    sq = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    lam = np.linalg.svd(sq @ _YY @ sq.conj(), compute_uv=False)
    return float(min(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]), 1.0))


def von_neumann_entropy(rho, base=2):
    lam = np.linalg.eigvalsh((rho + np.conj(rho).T) / 2)
    lam = lam[lam > ENTROPY_CUTOFF]
    return float(-np.sum(lam * np.log(lam)) / np.log(base))


def mutual_information(rho):
    """``S(A) + S(B) - S(AB)`` in bits for a two-qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("mutual information needs a 4x4 density matrix")
    sa = von_neumann_entropy(partial_trace(rho, (2, 2), [0]))
    sb = von_neumann_entropy(partial_trace(rho, (2, 2), [1]))
    return max(sa + sb - von_neumann_entropy(rho), 0.0)


@dataclass(frozen=True)
class PairCorrelations:
    n: int
    concurrence: float
    mutual_info_bits: float


def pair_correlation_series(epsilon, n_max, ancilla=None):
    """Concurrence and mutual information of ``rho_{A_n A_{n+1}}`` for ``n = 1..n_max``."""
    params = ModelParams(0.0, epsilon, 2, ancilla or AncillaState.plus())
    out = []
    for n in range(1, n_max + 1):
        rho = pair_state_rho_AA(params, n)
        out.append(PairCorrelations(n, concurrence_two_qubit(rho), mutual_information(rho)))
    return out
