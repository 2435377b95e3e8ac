"""
Squares plus every squarefree monomial of degree d
==================================================

The algebra is level with h_i = C(r, i) for i < d.  The sum of all
squarefree monomials of degree i is killed by l exactly when the prime
divides i + 1; whether that breaks the WLP depends on h_i <= h_{i+1}.
"""

from __future__ import annotations

from math import comb

import numpy as np

from lefschetz import family_squares, socle, verify_witness, wlp_verdict, witness_prop

primes = (2, 3, 5, 7, 11, 13)
print("verdict per (r, d): '.' holds, 'F' fails; columns char 0 then", primes)
for r in range(4, 11):
    for d in range(3, min(r, 6) + 1):
        I = family_squares(r, d)
        assert socle(I).is_level
        marks = ["." if wlp_verdict(I, p).holds else "F" for p in (0,) + primes]
        print(f"r={r:>2} d={d}  " + " ".join(marks))

# binomial h-vector, checked against numpy's cumulative product formula
r, d = 8, 6
h = [comb(r, i) for i in range(d)]
alt = np.concatenate([[1], np.cumprod([(r - i) / (i + 1) for i in range(d - 1)])]).round().astype(int)
print("\nh for r=8, d=6:", h, (alt == h).all())

# cells where the witness is killed yet the WLP holds: the witness sits where h_{p-1} > h_p
for r, d, p in [(4, 4, 3), (7, 6, 5), (8, 6, 5)]:
    chk = verify_witness(family_squares(r, d), p, witness_prop(r, d, p - 1))
    print(f"r={r} d={d} p={p}: {chk.as_tuple()}  h_{p - 1}={chk.h_t} h_{p}={chk.h_t1}",
          "WLP", wlp_verdict(family_squares(r, d), p).verdict.value)
