"""
One map, three ways to write it
===============================

The correlated chain can be replaced by a map on S plus one carried
ancilla. Here we check that the map agrees with the brute-force chain and
with its fixed-block rewriting (including a random three-ancilla
correlator), and that it is completely positive and trace preserving.
"""

import numpy as np

from corrcm.ccm_maps import CollisionMap, cptp_check, iterate_reduced, map_M_alt_apply, map_M_apply
from corrcm.collision_model import AncillaState, ModelParams, chain_reduced_state_oracle
from corrcm.liouville_rep import build_M_transfer, superop_to_matrix
from corrcm.tensor_core import random_density_matrix, random_unitary

rng = np.random.default_rng(1)
params = ModelParams(0.4, 1.1, 2, AncillaState.from_bloch(0.3, -0.5, 0.6))
rho_S = random_density_matrix(2, rng)
cmap = CollisionMap("M", params)

for n in range(1, 7):
    dev = np.abs(iterate_reduced(cmap, rho_S, n) - chain_reduced_state_oracle(params, rho_S, n)).max()
    print(f"n = {n}: chain vs map {dev:.1e}")

theta = random_density_matrix(4, rng)
print("fixed-block form, L = 2:", np.abs(map_M_apply(params, theta) - map_M_alt_apply(params, theta)).max())

p3 = ModelParams(0.4, 0.0, 3, AncillaState.plus(), random_unitary(8, rng))
theta3 = random_density_matrix(8, rng)
print("fixed-block form, L = 3:", np.abs(map_M_apply(p3, theta3) - map_M_alt_apply(p3, theta3)).max())

print("closed-form transfer matrix vs brute force:", np.abs(build_M_transfer(params) - superop_to_matrix(cmap)).max())
print(cptp_check(cmap))
