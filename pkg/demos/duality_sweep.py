"""
Euler characteristic and unit-order invariants over random matrices
===================================================================

For every admissible ``A``, ``chi(O_A) = 0`` and ``chi`` of the dual is 1,
while exactly one of the two unit classes has infinite order. Here we
tally the invariants over a few hundred random matrices.
"""

import random
from collections import Counter

import numpy as np

from ckdual.ktheory import NotIrreducible, PermutationMatrix, check_admissible, invariant_sheet, verify_duality_sheet

rng = np.random.default_rng(0)
tally = Counter()
k0_orders = []
tried = 0
while sum(tally.values()) < 300:
    n = int(rng.integers(2, 8))
    M = (rng.random((n, n)) < 0.5).astype(int)
    tried += 1
    try:
        A = check_admissible(M.tolist())
    except (NotIrreducible, PermutationMatrix):
        continue
    s = invariant_sheet(A)
    assert verify_duality_sheet(A, s).ok
    tally[(s.chi_oa, s.chi_hat, s.w_oa, s.w_hat)] += 1
    if s.k0.is_finite:
        k0_orders.append(s.k0.order)

print(f"{sum(tally.values())} admissible out of {tried} random draws")
print("(chi, chi_hat, w, w_hat): count")
for key, count in sorted(tally.items()):
    print(f"  {key}: {count}")

# finite K0 groups dominate; their orders are |det(I - A)|
print("finite K0 orders, median", int(np.median(k0_orders)), "max", max(k0_orders))
