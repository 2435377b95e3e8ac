"""
Two readings of the closed-form kernel elements
===============================================

Summing the displayed terms over pairs i < m only (the "literal" form)
gives x_i^2 the coefficient r - i, and f * l keeps terms such as
x_a^2 x_b.  The symmetric ("balanced") form is what multiplication by
l actually annihilates; it also matches the kernel vector the rank
engine finds.
"""

from __future__ import annotations

from lefschetz import family_J, family_mixed, verify_witness, wlp_check, witness_thmA, witness_thmB, witness_thmC

cases = [
    ("quadratic, char 3", family_mixed((3,) * 5, 4), 3, lambda form: witness_thmA((3,) * 5, 4, form)),
    ("cubic, char 2", family_mixed((4, 4, 3, 3, 2), 5), 2, lambda form: witness_thmB((4, 4, 3, 3, 2), 5, form)),
    ("degree a-1, char 2", family_J(4, 5), 2, lambda form: witness_thmC(4, 5, form)),
]

for name, I, p, make in cases:
    print(f"== {name}")
    for form in ("literal", "balanced"):
        chk = verify_witness(I, p, make(form))
        print(f"  {form:>8}: (nonzero, killed by l, h_t <= h_t+1) = {chk.as_tuple()}")
        if not chk.annihilated:
            # a few surviving terms of f * l mod (I, p)
            print("            survives:", str(chk.residue)[:70], "...")

# the one-dimensional kernel in degree 2 is spanned by the balanced quadratic
I = family_mixed((3,) * 5, 4)
print("\nengine kernel in degree 2 (mod 3):", wlp_check(I, 3).witness.mod(3))
print("balanced quadratic (mod 3):       ", witness_thmA((3,) * 5, 4).f.mod(3))

# with four exponents equal to 2 the quadratic is still killed, but h_2 > h_3 so nothing fails
chk = verify_witness(family_mixed((2, 2, 2, 2), 4), 3, witness_thmA((2, 2, 2, 2), 4))
print("\nfour squares:", chk.as_tuple(), f"h_2={chk.h_t}, h_3={chk.h_t1}")

# five variables with exponents (2, 2, 2, 2, 3): the cubic is killed but h_3 = 14 > h_4 = 11;
# the WLP still fails in char 2, one degree earlier
I = family_mixed((2, 3, 2, 2, 2), 5)
chk = verify_witness(I, 2, witness_thmB((2, 3, 2, 2, 2), 5))
rep = wlp_check(I, 2)
print("exponents 2,3,2,2,2:", chk.as_tuple(), f"h_3={chk.h_t}, h_4={chk.h_t1};",
      "first failure t =", rep.first_failure)
