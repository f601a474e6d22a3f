"""
The spectral gap of the vacuum state
====================================

For mean-zero ``X = sum c S_mu S_nu^*`` the vacuum state satisfies
``-i phi(X^* delta(X)) >= phi(X^* X)``, where ``delta`` generates the
gauge action. The ratio of the two sides is the average word length seen
by ``X Omega``, so it never drops below 1.
"""

from fractions import Fraction

import numpy as np

from ckdual.fock import spectral_gap_check

rep = spectral_gap_check([[1, 1], [1, 1]], 2, 8, samples=400, seed=3)
ratios = np.array([float(s.lhs / s.rhs) for s in rep.samples if s.rhs > 0])
print(f"{len(rep.samples)} samples, {rep.violations} violations, {len(ratios)} with phi(X*X) > 0")
print("smallest ratio", ratios.min(), " mean", round(ratios.mean(), 3))
counts, edges = np.histogram(ratios, bins=[1, 1.5, 2, 2.5, 3, 3.5, 4.01])
for c, lo, hi in zip(counts, edges, edges[1:]):
    print(f"  [{lo:.1f}, {hi:.1f}) {'#' * int(c // 4)}")
print("witness X = S_1:", rep.witness.lhs, ">=", rep.witness.rhs, "gap", Fraction(rep.witness.lhs, rep.witness.rhs))
