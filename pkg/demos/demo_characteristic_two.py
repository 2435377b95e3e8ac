"""
Rank drops in characteristic 2
==============================

A five-variable mixed ideal whose multiplication maps have full rank over
the rationals but lose rank modulo 2, and the cubic kernel element that
explains the first drop.
"""

from __future__ import annotations

from lefschetz import family_mixed, h_vector, map_rank, verify_witness, wlp_check, witness_thmB

alphas, d = (4, 4, 3, 3, 2), 5
I = family_mixed(alphas, d)

# pure powers x1^4, x2^4, x3^3, x4^3, x5^2 plus the one squarefree quintic
print("generators:", I.generators)
h = h_vector(I)
print("h-vector:", h.values)

# rank of x l : A_t -> A_{t+1} in each characteristic, next to min(h_t, h_{t+1})
print(f"{'t':>2} {'min':>4} " + " ".join(f"{'char ' + str(p):>7}" for p in (0, 2, 3, 5)))
for t in range(h.socle_degree):
    ranks = [map_rank(I, t, p) for p in (0, 2, 3, 5)]
    print(f"{t:>2} {min(h[t], h[t + 1]):>4} " + " ".join(f"{k:>7}" for k in ranks))

# the full report in characteristic 2: first failure and a kernel element found by elimination
rep = wlp_check(I, 2)
print("\nchar 2 verdict:", rep.verdict.value, "first failure t =", rep.first_failure)
print("kernel element from the engine:", rep.witness)

# the symmetric cubic sum_i x_i^3 + sum_{i != m} x_i^2 x_m, reduced mod I, is a closed-form kernel element
w = witness_thmB(alphas, d)
chk = verify_witness(I, 2, w)
print("closed-form cubic:", w.f)
print("(nonzero, killed by l, h_3 <= h_4):", chk.as_tuple(), "->", chk.conclusion)

# the same form is not killed in characteristic 0: the residue keeps its even coefficients
print("residue over Q:", verify_witness(I, 0, w).residue)
