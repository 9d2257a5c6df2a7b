"""
Decoherence with correlated ancillas
====================================

A qubit S collides with a stream of ancilla qubits prepared in |+>.
Before each collision the incoming ancilla is entangled with the next one
by exp(-i eps sz sz). We follow the sigma_x coherence of S,
D(n) = <+|rho_S(n)|-> / <+|rho_S(0)|->, along three independent routes.
"""

import numpy as np

from corrcm.collision_model import ModelParams, chain_reduced_state_oracle
from corrcm.liouville_rep import d_closed_form_series, d_from_state_sequence, d_via_xi

eps, tau = 0.195 * np.pi, 0.15 * np.pi
params = ModelParams(tau, eps)
ket0 = np.diag([1.0, 0.0]).astype(complex)  # |0> has full sigma_x coherence

# Route 1: brute force on S plus the whole ancilla chain (small n only)
states = [ket0] + [chain_reduced_state_oracle(params, ket0, n) for n in range(1, 8)]
d_oracle = d_from_state_sequence(states, ket0)

# Route 2: powers of the 4x4 block that carries the coherence
d_matrix = d_via_xi(params, 7)

# Route 3: the two-eigenvalue closed form
d_closed = d_closed_form_series(eps, tau, 7)

print(" n   |D| oracle    |D| matrix    |D| closed")
for n in range(8):
    print(f"{n:2d}   {abs(d_oracle[n]):.10f}  {abs(d_matrix[n]):.10f}  {abs(d_closed[n]):.10f}")

# |D| is not monotone: coherence flows back from the correlated ancillas
absD = np.abs(d_closed_form_series(eps, tau, 40))
rises = np.nonzero(np.diff(absD) > 1e-12)[0]
print("\nsteps where |D| grows:", rises.tolist())
