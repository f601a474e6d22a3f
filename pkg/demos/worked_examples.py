"""
Reciprocal duals of three small Cuntz-Krieger algebras
======================================================

The invariant sheet of ``O_A`` holds its K-groups and its strong Ext
groups. The Ext side, pointed by ``iota(1)``, is the K-datum of the
reciprocal dual.
"""

from ckdual.abgroup import quotient_by
from ckdual.classify import classify, reciprocal_kdatum, w_case_report
from ckdual.ktheory import build_hatA, invariant_sheet

# the full shift on two letters gives O_2
O2 = [[1, 1], [1, 1]]
s = invariant_sheet(O2)
print("O_2:      K0 =", s.k0, " K1 =", s.k1)
d = reciprocal_kdatum(s)
print("dual:     ", d, "->", classify(d))

# all-ones (N+1)x(N+1): the dual is pointed by a class whose quotient is Z/N
for n in range(2, 6):
    d = reciprocal_kdatum(invariant_sheet([[1] * (n + 1)] * (n + 1)))
    print(f"N = {n}:    dual {d}, Z/<unit> = {quotient_by(d.unit)}")

# a 5x5 matrix whose dual has trivial unit class
A = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 1, 0],
    [1, 1, 1, 1, 1],
    [0, 1, 1, 1, 0],
    [1, 1, 1, 1, 1],
]
print("hatA rows:", build_hatA(A).to_lists())
s = invariant_sheet(A)
d = reciprocal_kdatum(s)
print("K(O_A) =", (str(s.k0), str(s.k1)), " dual datum", d)

# going back: the dual's K-datum determines the groups of O_A
r = w_case_report(d)
print("reconstructed from the dual: w =", r.w, " K0 =", r.k0, " K1 =", r.k1)
