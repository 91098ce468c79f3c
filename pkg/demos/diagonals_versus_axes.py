"""Meets versus sequential products on the qubit.

Two projective measurements of a qubit: along the coordinate axes and along
the diagonals.  Their lattice meets are all zero, so a meet-based refinement
has nothing left in it.  The sequential refinement keeps all the mass.
"""

import numpy as np

from seqeffect import DensityMatrix, cond_entropy, entropy, quantum_instance
from seqeffect.spectral import frobenius, join_projections, meet_projections
from seqeffect.verify import check_bayes, example_2_3_matrices

np.set_printoptions(precision=3, suppress=True)

Q = quantum_instance(2)
m = example_2_3_matrices()
P1, P2, Q1, Q2 = (Q.element(m[k]) for k in ("P1", "P2", "Q1", "Q2"))

axes = Q.validate_partition([P1, P2])
diagonals = Q.validate_partition([Q1, Q2])
rho = DensityMatrix(np.eye(2) / 2)

# every axis projection meets every diagonal projection in the zero subspace
for p in ("P1", "P2"):
    for q in ("Q1", "Q2"):
        print(f"|{p} ^ {q}| =", frobenius(meet_projections(m[p], m[q])))

# so s(b) = sum_i s(a_i ^ b) cannot hold: left side 1/2, right side 0
print("Bayes residuals s(Q_j) - sum_i s(P_i ^ Q_j):", check_bayes(rho, axes, [Q1, Q2]))

# the sequential refinement instead: Q_j then P_i gives Q_j P_i Q_j = Q_j / 2
AB = Q.refine(diagonals, axes)
for k, x in enumerate(AB):
    print(f"element {k}:\n{x.matrix.real}")
print("sum of refinement:\n", sum(x.matrix for x in AB).real)

print("H(A)   =", entropy(rho, diagonals))
print("H(B|A) =", cond_entropy(rho, axes, diagonals))
print("H(AoB) =", entropy(rho, AB))

# distributivity fails too: P1 ^ (Q1 v Q2) = P1, (P1 ^ Q1) v (P1 ^ Q2) = 0
lhs = meet_projections(m["P1"], join_projections(m["Q1"], m["Q2"]))
rhs = join_projections(meet_projections(m["P1"], m["Q1"]), meet_projections(m["P1"], m["Q2"]))
print("distributivity gap:", frobenius(lhs - rhs))
