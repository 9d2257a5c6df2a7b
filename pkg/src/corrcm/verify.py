"""Cross-checks between the independent routes to the reduced dynamics."""

from dataclasses import dataclass

import numpy as np

from .ccm_maps import CollisionMap, iterate_reduced, map_M_alt_apply, map_M_apply
from .collision_model import (
    MAX_MIXED_ANCILLAS,
    MAX_PURE_ANCILLAS,
    AncillaState,
    ModelParams,
    chain_reduced_state_oracle,
)
from .liouville_rep import (
    a_blocks,
    assemble_M_transfer,
    build_Mprime_transfer,
    d_closed_form_series,
    d_via_transfer,
    d_via_xi,
    dprime_closed_form,
    dprime_series,
    superop_to_matrix,
)
from .tensor_core import random_density_matrix, random_unitary

FAULTS = ("a2-sign",)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def ok(self):
        return self.max_deviation <= self.tolerance


def random_ancilla(rng, pure=False):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    if not pure:
        v *= rng.uniform(0.2, 0.95)
    return AncillaState.from_bloch(*v)


def _random_params(rng, pure=False):
    eps, tau = rng.uniform(0, np.pi, size=2)
    return ModelParams(tau, eps, 2, random_ancilla(rng, pure))


def _pure_state(rng):
    psi = rng.normal(size=2) + 1j * rng.normal(size=2)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def oracle_vs_ccm(rng, n_max=6, draws=5):
    dev = 0.0
    mixed_depth = min(n_max, MAX_MIXED_ANCILLAS - 1)
    for _ in range(draws):
        p = _random_params(rng)
        rho_S = random_density_matrix(2, rng)
        cmap = CollisionMap("M", p)
        for n in range(mixed_depth + 1):
            a = chain_reduced_state_oracle(p, rho_S, n, method="density")
            dev = max(dev, np.abs(a - iterate_reduced(cmap, rho_S, n)).max())
    if n_max > mixed_depth:
        for _ in range(draws):
            p = _random_params(rng, pure=True)
            rho_S = _pure_state(rng)
            cmap = CollisionMap("M", p)
            a = chain_reduced_state_oracle(p, rho_S, n_max, method="vector")
            dev = max(dev, np.abs(a - iterate_reduced(cmap, rho_S, n_max)).max())
    return dev


def m_vs_malt(rng, draws=10):
    dev = 0.0
    for L in (2, 3):
        for _ in range(draws):
            eps, tau = rng.uniform(0, np.pi, size=2)
            W = None if L == 2 else random_unitary(2**L, rng)
            p = ModelParams(tau, eps, L, random_ancilla(rng), W)
            theta = random_density_matrix(2**L, rng)
            dev = max(dev, np.abs(map_M_apply(p, theta) - map_M_alt_apply(p, theta)).max())
    return dev


def transfer_vs_superop(rng, draws=5, fault=None):
    dev = 0.0
    for _ in range(draws):
        p = _random_params(rng)
        A1, A2 = a_blocks(p.epsilon, p.ancilla)
        if fault == "a2-sign":
            A2 = -A2
        T = assemble_M_transfer(A1, A2, p.tau)
        dev = max(dev, np.abs(T - superop_to_matrix(CollisionMap("M", p))).max())
        Tp = build_Mprime_transfer(p)
        dev = max(dev, np.abs(Tp - superop_to_matrix(CollisionMap("M_prime", p))).max())
    return dev


def transfer_vs_xi(rng, draws=5, n_max=50):
    dev = 0.0
    for _ in range(draws):
        p = _random_params(rng)
        dev = max(dev, np.abs(d_via_transfer(p, n_max) - d_via_xi(p, n_max)).max())
    return dev


# lattice points away from the pi/4 lines and the degenerate pi/8 points
LATTICE = tuple(np.pi * np.array([0.1, 0.3, 0.4]))


def closed_form_vs_power(n_max=100):
    dev = 0.0
    for eps in LATTICE:
        for tau in LATTICE:
            p = ModelParams(tau, eps)
            dev = max(dev, np.abs(d_closed_form_series(eps, tau, n_max) - d_via_xi(p, n_max)).max())
    return dev


def dprime_closed_vs_power(rng, draws=10, n_max=100):
    dev = 0.0
    for _ in range(draws):
        eps, tau = rng.uniform(0, np.pi / 2, size=2)
        p = ModelParams(tau, eps)
        dev = max(dev, np.abs(dprime_closed_form(eps, tau, n_max) - dprime_series(p, n_max)).max())
    return dev


def run_suites(n_max=6, seed=0, fault=None, tol=1e-10):
    """Run every cross-check and return one ``SuiteResult`` per suite."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    if n_max < 0 or n_max > MAX_PURE_ANCILLAS - 1:
        raise ValueError(f"oracle depth must lie in [0, {MAX_PURE_ANCILLAS - 1}]")
    rng = np.random.default_rng(seed)
    return [
        SuiteResult("oracle-vs-ccm", oracle_vs_ccm(rng, n_max), tol),
        SuiteResult("M-vs-M_alt", m_vs_malt(rng), tol),
        SuiteResult("transfer-vs-superop", transfer_vs_superop(rng, fault=fault), tol),
        SuiteResult("transfer-vs-xi", transfer_vs_xi(rng), tol),
        SuiteResult("closed-form-vs-matrix-power", closed_form_vs_power(), tol),
        SuiteResult("dprime-closed-vs-matrix-power", dprime_closed_vs_power(rng), tol),
    ]
