"""
Where is the dynamics non-Markovian?
====================================

The BLP measure adds up every increase of the trace distance between two
evolving states, maximized over the input pair. For this dephasing-type
dynamics it reduces to the sum of the increases of |D(n)|.
Here we scan the (eps, tau) square [0, pi/2]^2 on a coarse grid.
"""

import numpy as np

from corrcm.nonmarkov_measures import blp_sweep

axis = np.linspace(0, np.pi / 2, 41)
grid = blp_sweep(axis, axis, n_max=100)

eps_star, tau_star, peak = grid.argmax()
print(f"largest BLP value {peak:.5f} at eps = {eps_star / np.pi:.3f} pi, tau = {tau_star / np.pi:.3f} pi")

# crude text heat map, rows are eps (top = 0, every other row), columns are tau
shades = " .:-=+*#%@"
scale = np.sqrt(grid.values / peak)  # square-root scale shows the weak regions
for i in range(0, len(axis), 2):
    print("".join(shades[min(int(v * (len(shades) - 1) + 0.5), len(shades) - 1)] for v in scale[i, ::1]))

# no backflow on the lines eps, tau in {0, pi/4, pi/2}
for k, label in ((0, "0"), (20, "pi/4"), (40, "pi/2")):
    print(f"eps = {label:4s}: max {grid.values[k].max():.1e}   tau = {label:4s}: max {grid.values[:, k].max():.1e}")
