import numpy as np
import pytest
from conftest import KET0

from corrcm.ccm_maps import CollisionMap, iterate_states
from corrcm.collision_model import AncillaState, ModelParams, chain_reduced_state_oracle
from corrcm.liouville_rep import (
    PAULI_BASIS,
    PRODUCT_BASIS,
    a_blocks,
    ancilla_coefficients,
    build_M_transfer,
    build_Mprime_transfer,
    d_closed_form_plus,
    d_closed_form_series,
    d_from_state_sequence,
    d_via_c_matrix,
    d_via_transfer,
    d_via_xi,
    dprime_closed_form,
    dprime_series,
    coherence_constraint,
    superop_to_matrix,
)
from corrcm.verify import random_ancilla

PI = np.pi

# D(n), n = 0..6, for epsilon = 0.195 pi, tau = 0.15 pi, taken from the chain oracle.
FROZEN_D = np.array(
    [
        1.0,
        0.5877852522924732 - 0.2740447341176663j,
        0.12378465569237038 - 0.21564317214815854j,
        0.01366291930044485 + 0.02054098142515702j,
        0.11542699411329187 + 0.05312910258385304j,
        0.10218160696247833 - 0.05640229235375219j,
        -0.00793503959417348 - 0.06722842080012319j,
    ]
)


def _random_params(rng):
    tau, eps = rng.uniform(0, PI, 2)
    return ModelParams(tau, eps, 2, random_ancilla(rng))


def test_product_basis_is_orthonormal():
    G = np.array([[np.vdot(a, b) for b in PRODUCT_BASIS] for a in PRODUCT_BASIS])
    np.testing.assert_allclose(G, np.eye(16), atol=1e-15)


@pytest.mark.parametrize("bloch", [(1, 0, 0), (0, -1, 0), (0.2, 0.5, -0.7)])
def test_coefficients_from_matrix_match_parametrization(bloch):
    a = AncillaState.from_bloch(*bloch)
    rho = ModelParams(0.0, 0.0, 2, a).rho_A
    np.testing.assert_allclose(ancilla_coefficients(rho), a.coefficients, atol=1e-15)
    # and the expansion reconstructs the matrix
    recon = sum(c * e for c, e in zip(a.coefficients, PAULI_BASIS)) / np.sqrt(2)
    np.testing.assert_allclose(recon, rho, atol=1e-15)


@pytest.mark.parametrize("seed", range(4))
def test_forward_transfer_matches_superoperator(seed):
    p = _random_params(np.random.default_rng(seed))
    np.testing.assert_allclose(build_M_transfer(p), superop_to_matrix(CollisionMap("M", p)), atol=1e-13)


@pytest.mark.parametrize("seed", range(4))
def test_reversed_transfer_matches_superoperator(seed):
    p = _random_params(np.random.default_rng(seed))
    np.testing.assert_allclose(build_Mprime_transfer(p), superop_to_matrix(CollisionMap("M_prime", p)), atol=1e-13)


def test_flipped_a2_block_is_detected(rng):
    from corrcm.liouville_rep import assemble_M_transfer

    p = _random_params(rng)
    A1, A2 = a_blocks(p.epsilon, p.ancilla)
    assert np.abs(assemble_M_transfer(A1, -A2, p.tau) - superop_to_matrix(CollisionMap("M", p))).max() > 1e-3


def test_transfer_needs_two_slots():
    with pytest.raises(ValueError):
        superop_to_matrix(CollisionMap("M", ModelParams(0.1, L=1)))
    with pytest.raises(ValueError):
        build_M_transfer(ModelParams(0.1, L=1))


@pytest.mark.parametrize("seed", range(4))
def test_transfer_and_xi_routes_agree(seed):
    p = _random_params(np.random.default_rng(seed))
    np.testing.assert_allclose(d_via_transfer(p, 60), d_via_xi(p, 60), atol=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_coherence_constraint(seed):
    p = _random_params(np.random.default_rng(seed))
    T = build_M_transfer(p)
    for n in (1, 2, 7, 20):
        lhs, rhs = coherence_constraint(T, p.ancilla.coefficients, n)
        assert abs(lhs - rhs) < 1e-11


@pytest.mark.parametrize("seed", range(3))
def test_state_sequence_route(seed):
    rng = np.random.default_rng(seed)
    p = _random_params(rng)
    states = iterate_states(CollisionMap("M", p), KET0, 30)
    np.testing.assert_allclose(d_from_state_sequence(states, KET0), d_via_xi(p, 30), atol=1e-12)


def test_oracle_frozen_decoherence():
    p = ModelParams(0.15 * PI, 0.195 * PI)
    states = [KET0] + [chain_reduced_state_oracle(p, KET0, n) for n in range(1, 7)]
    np.testing.assert_allclose(d_from_state_sequence(states, KET0), FROZEN_D, atol=1e-14)
    np.testing.assert_allclose(d_closed_form_series(0.195 * PI, 0.15 * PI, 6), FROZEN_D, atol=1e-14)


def test_state_sequence_needs_coherence():
    plus = np.full((2, 2), 0.5)
    with pytest.raises(ValueError):
        d_from_state_sequence([plus], plus)


LATTICE = [0.07, 0.1, 0.19, 0.3, 0.33, 0.4, 0.45, 0.6, 0.9]


@pytest.mark.parametrize("eps", LATTICE)
@pytest.mark.parametrize("tau", LATTICE)
def test_closed_form_matches_matrix_power(eps, tau):
    eps, tau = eps * PI, tau * PI
    ref = d_via_xi(ModelParams(tau, eps), 100)
    np.testing.assert_allclose(d_closed_form_series(eps, tau, 100), ref, atol=1e-10)
    np.testing.assert_allclose(d_via_c_matrix(eps, tau, 100), ref, atol=1e-12)


@pytest.mark.parametrize(
    "eps, tau",
    [
        (PI / 8, PI / 8),
        (PI / 8 + 1e-7, PI / 8),
        (PI / 8, PI / 8 - 3e-5),
        (3 * PI / 8, PI / 8),
        (PI / 8 + 2e-4, PI / 8 - 2e-4),
        (PI / 4, 0.1 * PI),
        (PI / 4 + 1e-10, 0.3 * PI),
        (PI / 4 + 1e-6, 0.3 * PI),
        (0.2 * PI, PI / 4),
        (0.2 * PI, 3 * PI / 4),
        (0.2 * PI, PI / 4 - 1e-10),
        (3 * PI / 4, 0.35 * PI),
        (0.0, 0.2 * PI),
        (0.2 * PI, 0.0),
        (PI / 2, PI / 2),
    ],
)
def test_closed_form_at_special_points(eps, tau):
    ref = d_via_xi(ModelParams(tau, eps), 100)
    np.testing.assert_allclose(d_closed_form_series(eps, tau, 100), ref, atol=1e-9)


@pytest.mark.parametrize("tau", [0.1 * PI, 0.2 * PI, 0.3 * PI])
def test_closed_form_limit_eps_quarter(tau):
    n = np.arange(101)
    np.testing.assert_allclose(d_closed_form_plus(PI / 4, tau, n), np.cos(2 * tau) ** n, atol=1e-10)


@pytest.mark.parametrize("eps", [0.1 * PI, 0.195 * PI, 0.4 * PI])
def test_closed_form_limit_tau_quarter(eps):
    n = np.arange(1, 101)
    np.testing.assert_allclose(
        d_closed_form_plus(eps, PI / 4, n), np.exp(-1j * PI * n / 2) * np.cos(2 * eps), atol=1e-9
    )


def test_closed_form_scalar_and_errors():
    assert d_closed_form_plus(0.3, 0.2, 0) == 1
    assert isinstance(d_closed_form_plus(0.3, 0.2, 5), complex)
    with pytest.raises(ValueError):
        d_closed_form_plus(0.3, 0.2, -1)


@pytest.mark.parametrize("seed", range(5))
def test_reversed_closed_form(seed):
    eps, tau = np.random.default_rng(seed).uniform(0, PI, 2)
    np.testing.assert_allclose(dprime_closed_form(eps, tau, 100), dprime_series(ModelParams(tau, eps), 100), atol=1e-10)


@pytest.mark.parametrize("seed", range(3))
def test_reversed_series_from_states(seed):
    rng = np.random.default_rng(seed)
    p = _random_params(rng)
    states = iterate_states(CollisionMap("M_prime", p), KET0, 20)
    np.testing.assert_allclose(d_from_state_sequence(states, KET0), dprime_series(p, 20), atol=1e-12)
