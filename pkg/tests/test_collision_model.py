import numpy as np
import pytest
from conftest import KET0

from corrcm.collision_model import (
    AncillaState,
    DimensionBudgetError,
    ModelParams,
    basic_cm_reduced_state,
    build_initial_chain,
    chain_reduced_state_oracle,
    pair_state_rho_AA,
)
from corrcm.tensor_core import PAULI, is_density_matrix, partial_trace, pauli_two_body_unitary, random_density_matrix

# Oracle output for rho_S = |0><0|, epsilon = 0.195 pi, tau = 0.15 pi, n = 3.
FROZEN_RHO3 = np.array(
    [[0.50683145965022236, -0.01027049071257845j], [0.01027049071257857j, 0.49316854034977753]]
)


@pytest.mark.parametrize("bloch", [(1, 0, 0), (0, 1, 0), (0, 0, -1), (0.3, -0.4, 0.5)])
def test_ancilla_state_matches_bloch_vector(bloch):
    a = AncillaState.from_bloch(*bloch)
    rho = ModelParams(0.1, 0.2, 2, a).rho_A
    for k, axis in enumerate("xyz"):
        assert np.trace(rho @ PAULI[axis]).real == pytest.approx(bloch[k], abs=1e-15)
    np.testing.assert_allclose(a.bloch, bloch)


@pytest.mark.parametrize(
    "args",
    [(1.0, 0.5, 0.0), (0.9, 0.3j, 0.5), (1j, 0, 0)],
)
def test_ancilla_state_validation(args):
    with pytest.raises(ValueError):
        AncillaState(*args)


def test_model_params_validation(rng):
    with pytest.raises(ValueError):
        ModelParams(0.1, 0.1, L=3)
    with pytest.raises(ValueError):
        ModelParams(0.1, 0.1, L=0)
    with pytest.raises(ValueError):
        ModelParams(0.1, 0.1, L=2, correlator=np.ones((4, 4)))
    with pytest.raises(ValueError):
        ModelParams(0.1, 0.1, L=2, correlator=np.eye(8))
    np.testing.assert_allclose(ModelParams(0.1, L=1).W, np.eye(2))


def test_initial_chain_single_collision_amplitudes():
    eps = 0.37
    chain = build_initial_chain(ModelParams(0.2, eps), KET0, 1)
    assert chain.n_ancillas == 2
    rho_AA = partial_trace(chain.state, chain.dims, [1, 2])
    amp = np.array([np.exp(-1j * eps), np.exp(1j * eps), np.exp(1j * eps), np.exp(-1j * eps)]) / 2
    np.testing.assert_allclose(rho_AA, np.outer(amp, amp.conj()), atol=1e-15)


def test_initial_chain_budget():
    with pytest.raises(DimensionBudgetError):
        build_initial_chain(ModelParams(0.2, 0.1), KET0, 8)


def test_oracle_frozen_value():
    p = ModelParams(0.15 * np.pi, 0.195 * np.pi)
    np.testing.assert_allclose(chain_reduced_state_oracle(p, KET0, 3), FROZEN_RHO3, atol=1e-14)


@pytest.mark.parametrize("n", [0, 1, 4])
def test_oracle_outputs_density_matrices(rng, n):
    p = ModelParams(*rng.uniform(0, np.pi, 2), 2, AncillaState.from_bloch(0.2, 0.3, -0.4))
    out = chain_reduced_state_oracle(p, random_density_matrix(2, rng), n)
    assert is_density_matrix(out)


def test_oracle_vector_and_density_paths_agree(rng):
    p = ModelParams(0.41, 1.1, 2, AncillaState.from_bloch(0, 0.6, 0.8))
    psi = np.array([0.6, 0.8j])
    rho_S = np.outer(psi, psi.conj())
    for n in (1, 3, 6):
        a = chain_reduced_state_oracle(p, rho_S, n, method="vector")
        b = chain_reduced_state_oracle(p, rho_S, n, method="density")
        np.testing.assert_allclose(a, b, atol=1e-13)


def test_oracle_method_errors(rng):
    p = ModelParams(0.3, 0.4, 2, AncillaState.from_bloch(0.5, 0, 0))
    with pytest.raises(ValueError):
        chain_reduced_state_oracle(p, KET0, 2, method="vector")
    with pytest.raises(ValueError):
        chain_reduced_state_oracle(p, KET0, 2, method="bogus")
    with pytest.raises(DimensionBudgetError):
        chain_reduced_state_oracle(p, KET0, 8)
    with pytest.raises(DimensionBudgetError):
        chain_reduced_state_oracle(ModelParams(0.3, 0.4), KET0, 14)


@pytest.mark.parametrize("seed", range(3))
def test_xx_correlator_reduces_to_basic_model(seed):
    # a correlator generated by sigma_x sigma_x commutes with the |+> ancillas and U
    rng = np.random.default_rng(seed)
    tau, eps = rng.uniform(0, np.pi, 2)
    p = ModelParams(tau, eps, 2, correlator=pauli_two_body_unitary("x", "x", eps))
    rho_S = random_density_matrix(2, rng)
    for n in range(1, 5):
        np.testing.assert_allclose(
            chain_reduced_state_oracle(p, rho_S, n), basic_cm_reduced_state(p, rho_S, n), atol=1e-12
        )


def test_uncorrelated_plus_ancillas_only_rotate():
    # |+> is a sigma_x eigenstate, so each collision is a sigma_x rotation of S
    p = ModelParams(0.3, 0.0)
    out = chain_reduced_state_oracle(p, KET0, 4)
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert (h @ out @ h)[0, 1] == pytest.approx(0.5 * np.exp(-2.4j), abs=1e-14)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_pair_state_independent_of_tau(n):
    a = pair_state_rho_AA(ModelParams(0.1, 0.3), n)
    b = pair_state_rho_AA(ModelParams(1.2, 0.3), n)
    np.testing.assert_allclose(a, b, atol=1e-15)
    assert is_density_matrix(a)


def test_pair_state_matches_chain_marginal():
    p = ModelParams(0.0, 0.4)
    n = 3
    # tau = 0 leaves the ancillas untouched by S; windows up to [n, n+1] build A_n A_{n+1}
    chain = build_initial_chain(p, KET0, n)
    np.testing.assert_allclose(partial_trace(chain.state, chain.dims, [n, n + 1]), pair_state_rho_AA(p, n), atol=1e-14)


def test_pair_state_errors():
    with pytest.raises(ValueError):
        pair_state_rho_AA(ModelParams(0.1, L=1), 1)
    with pytest.raises(ValueError):
        pair_state_rho_AA(ModelParams(0.1, 0.1), 0)
