"""
How correlated are neighbouring ancillas?
=========================================

The correlator acts on overlapping pairs, so ancilla A_n is first
entangled with A_{n-1} and then with A_{n+1}. The state of the pair
A_n A_{n+1} settles after one step. We print its concurrence and its
mutual information (in bits).
"""

import numpy as np

from corrcm.nonmarkov_measures import pair_correlation_series

print(" eps/pi   C(n=1)   C(n>=2)   I(n=1)   I(n>=2)")
for eps in np.linspace(0, np.pi / 2, 11):
    recs = pair_correlation_series(eps, 4)
    first, later = recs[0], recs[-1]
    print(
        f"  {eps / np.pi:.2f}   {first.concurrence:.4f}   {later.concurrence:.4f}"
        f"    {first.mutual_info_bits:.4f}   {later.mutual_info_bits:.4f}"
    )

# at eps = pi/4 the first pair is maximally entangled but later pairs are only classically correlated
recs = pair_correlation_series(np.pi / 4, 3)
print("\neps = pi/4:", [(r.n, round(r.concurrence, 12), round(r.mutual_info_bits, 12)) for r in recs])
