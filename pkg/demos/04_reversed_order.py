"""
Collide first, correlate afterwards
===================================

If the system meets an ancilla before that ancilla is correlated with the
next one, the information the ancilla carries away is scrambled into the
chain instead of being handed back. |D'(n)| then never grows and the
BLP measure vanishes everywhere.
"""

import numpy as np

from corrcm.ccm_maps import CollisionMap, iterate_states
from corrcm.collision_model import ModelParams
from corrcm.liouville_rep import d_from_state_sequence, dprime_closed_form, dprime_series
from corrcm.nonmarkov_measures import blp_sweep

eps, tau = 0.195 * np.pi, 0.15 * np.pi
params = ModelParams(tau, eps)
ket0 = np.diag([1.0, 0.0]).astype(complex)

states = iterate_states(CollisionMap("M_prime", params), ket0, 10)
d_states = d_from_state_sequence(states, ket0)
d_matrix = dprime_series(params, 10)
d_closed = dprime_closed_form(eps, tau, 10)
print("max |difference| between routes:", max(np.abs(d_states - d_matrix).max(), np.abs(d_closed - d_matrix).max()))
print("|D'(n)|:", np.round(np.abs(d_matrix), 6).tolist())

axis = np.linspace(0, np.pi / 2, 21)
print("largest BLP value on a 21x21 grid:", blp_sweep(axis, axis, 100, variant="reversed").values.max())
