"""
Exact relation checks in a truncated Fock space
===============================================

Creation operators on admissible words of length at most ``L`` satisfy the
Toeplitz relations only away from the top level. Each operator carries its
headroom, and relations are compared on the words it cannot push past
``L``. Dropping that restriction breaks the relations, which is what the
negative controls record.
"""

from ckdual.fock import FockRep, verify_relation, verify_thm57

A = [[1, 1], [1, 0]]
rep = FockRep(A, 6)
print("basis size", rep.basis.dim, "words by length", rep.basis.level_counts)

# T_1* T_1 = T_1 T_1* + T_2 T_2* + e_A needs one level of room
lhs = rep.S(1).adj @ rep.S(1)
rhs = rep.range_proj([1, 2]) + rep.e_A
print("headroom of T_1* T_1:", lhs.headroom)
print("holds on the interior:", verify_relation(lhs, rhs, rep.basis))
print("holds everywhere:     ", verify_relation(lhs, rhs, rep.basis, 0))

# generators of the reciprocal dual inside the transpose's O_{A infinity}
rpt = verify_thm57(A, 3, 8)
print(f"{len(rpt.records)} relations, all pass: {rpt.ok}")
for r in rpt.controls:
    print(f"  control {r.relation} {r.indices}: fails without projector = {r.boundary_fails}")
