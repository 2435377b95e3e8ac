"""Explicit kernel elements of ``x l`` that certify WLP failure, and their checks.

Each constructor returns a homogeneous form ``f`` of degree ``t`` together
with the characteristic in which ``f * l`` should vanish modulo the ideal.
Nothing is assumed: :func:`verify_witness` recomputes ``f mod I``,
``f * l mod (I, p)`` and ``h_t <= h_{t+1}`` from scratch.

Two readings exist for the first three families.  ``form="literal"`` sums
the displayed terms over pairs ``i < m`` only, which gives ``x_i^2`` the
coefficient ``r - i`` and leaves terms such as ``x_a^2 x_b`` alive in
``f * l``.  The default ``form="balanced"`` uses the symmetric form whose
product with ``l`` really does vanish:

* degree 2, char 3: ``sum_i x_i^2 - sum_{i<m} x_i x_m``
* degree 3, char 2: ``sum_i x_i^3 + sum_{i != m} x_i^2 x_m``
* degree a-1, char 2: ``sum_i x_i^(a-1) + sum_{i != m} x_i^(a-2) x_m``
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .engine import h_vector
from .families import FamilySpec, ParameterError
from .linalg import Characteristic, as_char, is_prime
from .monomials import Monomial, MonomialIdeal, Polynomial, multiply_linear, reduce_mod_ideal

FORMS = ("balanced", "literal")


@dataclass(frozen=True)
class Witness:
    f: Polynomial  # already reduced modulo the family's ideal (coefficients over Z)
    degree: int
    claimed_char: Characteristic
    family: FamilySpec
    form: str = "balanced"

    @property
    def degenerate(self) -> bool:
        """True when every term of ``f`` lies in the ideal, so there is nothing to certify."""
        return self.f.is_zero()

    def ideal(self) -> MonomialIdeal:
        return self.family.ideal()


@dataclass(frozen=True)
class WitnessCheck:
    nonzero: bool
    annihilated: bool
    inequality: bool
    degree: int
    char: Characteristic
    h_t: int
    h_t1: int
    residue: Polynomial  # f * l modulo (I, p)

    @property
    def all_true(self) -> bool:
        return self.nonzero and self.annihilated and self.inequality

    @property
    def conclusion(self) -> str | None:
        if self.all_true:
            return f"WLP fails at t={self.degree} in characteristic {self.char.value}"
        return None

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.nonzero, self.annihilated, self.inequality)

    def __iter__(self):
        return iter(self.as_tuple())


def _mono(r: int, exps: dict[int, int]) -> Monomial:
    e = [0] * r
    for i, a in exps.items():
        e[i] += a
    return Monomial(e)


def _check_form(form: str):
    if form not in FORMS:
        raise ParameterError(f"form must be one of {FORMS}, got {form!r}")


def _finish(terms: Counter, t: int, family: FamilySpec, char: int, form: str) -> Witness:
    I = family.ideal()
    f = reduce_mod_ideal(Polynomial(terms, degree=t, nvars=family.r), I, 0)
    return Witness(f, t, as_char(char), family, form)


def witness_thmA(alphas: Sequence[int], d: int, form: str = "balanced") -> Witness:
    """Degree-2 kernel element for ``family_mixed(alphas, d)`` with all exponents in {2, 3}, char 3."""
    _check_form(form)
    alphas = tuple(int(a) for a in alphas)
    if any(a not in (2, 3) for a in alphas):
        raise ParameterError(f"exponents must lie in {{2, 3}}, got {alphas}")
    if d < 4 or d > len(alphas):
        raise ParameterError(f"need 4 <= d <= r, got d={d}, r={len(alphas)}")
    r = len(alphas)
    terms: Counter = Counter()
    for i, m in combinations(range(r), 2):
        terms[_mono(r, {i: 1, m: 1})] -= 1
        if form == "literal":
            terms[_mono(r, {i: 2})] += 1
    if form == "balanced":
        for i in range(r):
            terms[_mono(r, {i: 2})] += 1
    return _finish(terms, 2, FamilySpec.mixed(alphas, d), 3, form)


def witness_thmB(alphas: Sequence[int], d: int, form: str = "balanced") -> Witness:
    """Degree-3 kernel element for ``family_mixed(alphas, d)``, exponents in {2, 3, 4}, char 2.

    With every exponent equal to 2 each term lies in the ideal and the
    witness comes back degenerate.
    """
    _check_form(form)
    alphas = tuple(int(a) for a in alphas)
    if any(a not in (2, 3, 4) for a in alphas):
        raise ParameterError(f"exponents must lie in {{2, 3, 4}}, got {alphas}")
    if d < 5 or d > len(alphas):
        raise ParameterError(f"need 5 <= d <= r, got d={d}, r={len(alphas)}")
    r = len(alphas)
    terms: Counter = Counter()
    if form == "literal":
        for i, m in combinations(range(r), 2):
            for j in (1, 2, 3):
                terms[_mono(r, {i: j, m: 3 - j})] += 1
    else:
        for i in range(r):
            terms[_mono(r, {i: 3})] += 1
        for i, m in permutations(range(r), 2):
            terms[_mono(r, {i: 2, m: 1})] += 1
    return _finish(terms, 3, FamilySpec.mixed(alphas, d), 2, form)


def witness_thmC(r: int, alpha: int, form: str = "balanced") -> Witness:
    """Degree-``alpha-1`` kernel element for ``family_J(r, alpha)``, char 2."""
    _check_form(form)
    if r < 4 or alpha < 5:
        raise ParameterError(f"need r >= 4 and alpha >= 5, got r={r}, alpha={alpha}")
    terms: Counter = Counter()
    if form == "literal":
        for i, m in combinations(range(r), 2):
            for j in (1, 2, alpha - 1):
                terms[_mono(r, {i: alpha - j, m: j - 1})] += 1
    else:
        for i in range(r):
            terms[_mono(r, {i: alpha - 1})] += 1
        for i, m in permutations(range(r), 2):
            terms[_mono(r, {i: alpha - 2, m: 1})] += 1
    return _finish(terms, alpha - 1, FamilySpec.j(r, alpha), 2, form)


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while n % p:
        p += 1
    return p


def witness_prop(r: int, d: int, i: int, char: int | None = None) -> Witness:
    """Sum of all squarefree degree-``i`` monomials, a kernel element for ``family_squares(r, d)``.

    ``f * l = (i + 1) * (sum of squarefree degree-(i+1) monomials)``, so the
    claimed characteristic is a prime dividing ``i + 1`` (the smallest one
    unless ``char`` is given).
    """
    if not 1 <= i <= (r + 1) // 2 or i > d - 2:
        raise ParameterError(f"need 1 <= i <= ceil(r/2) and i <= d-2, got r={r}, d={d}, i={i}")
    if not 2 <= d <= r:
        raise ParameterError(f"need 2 <= d <= r, got r={r}, d={d}")
    if char is None:
        char = _smallest_prime_factor(i + 1)
    if not is_prime(char) or (i + 1) % char:
        raise ParameterError(f"characteristic {char} is not a prime dividing {i + 1}")
    terms = Counter({_mono(r, {j: 1 for j in S}): 1 for S in combinations(range(r), i)})
    return _finish(terms, i, FamilySpec.squares(r, d), char, "balanced")


def verify_witness(I: MonomialIdeal, char, w: Witness, ell: Sequence | None = None) -> WitnessCheck:
    """Recheck a witness: ``f != 0`` in ``A_t``, ``f * l == 0`` in ``A_{t+1}``, and ``h_t <= h_{t+1}``."""
    ch = as_char(char)
    p = ch.value
    t = w.degree
    f = reduce_mod_ideal(w.f, I, p)
    coeffs = list(ell) if ell is not None else [1] * I.r
    prod = reduce_mod_ideal(multiply_linear(f, coeffs), I, p) if f else Polynomial((), degree=t + 1, nvars=I.r)
    h = h_vector(I, max_dim=10**9)
    return WitnessCheck(not f.is_zero(), prod.is_zero(), h[t] <= h[t + 1], t, ch, h[t], h[t + 1], prod)


def hilbert_inequality_check(I: MonomialIdeal, t: int) -> bool:
    """``h_t <= h_{t+1}`` from actual basis sizes (``h`` is 0 past the socle degree).

    Past the socle degree both sides are 0; the comparison is only meaningful
    while ``A_t`` is nonzero, so the check is false there.
    """
    if t < 0:
        raise ParameterError("t must be non-negative")
    h = h_vector(I, max_dim=10**9)
    if h[t] == 0:
        return False
    return h[t] <= h[t + 1]


def quadratic_drop_closed_form(r: int, m: int) -> bool:
    """Closed-form test for ``h_2 > h_3`` when ``m`` of the ``r`` exponents equal 2 and the rest 3.

    Valid for squarefree truncation degree ``d >= 4``, where the truncation
    does not touch degrees 2 and 3.  For ``r >= 4`` this is true only at
    ``m = r = 4``.
    """
    return 7 * r + 6 * r * m > r**3 + 12 * m


class IdentityKind(str, enum.Enum):
    THM_A = "thm_a"
    THM_B = "thm_b"
    THM_C = "thm_c"
    PROP = "prop"


def _expand(products, r: int) -> Counter:
    """Multiset of monomials ``g * x_c`` over the given ``g`` and variables ``c`` outside supp(g)."""
    out: Counter = Counter()
    for g in products:
        supp = {k for k, a in enumerate(g) if a}
        for c in range(r):
            if c not in supp:
                e = list(g)
                e[c] += 1
                out[tuple(e)] += 1
    return out


def counting_identity_check(r: int, kind, i: int | None = None) -> bool:
    """Integer count behind each witness: every target monomial is hit exactly ``c`` times.

    The products of the witness terms with variables outside their support
    are enumerated as a multiset; the check passes when every distinct
    product occurs exactly ``c`` times (3, 2, 2 or ``i+1``) and the total
    equals the closed-form count.
    """
    kind = IdentityKind(kind)
    if kind is IdentityKind.THM_A:
        if r < 3:
            raise ParameterError("need r >= 3")
        gens = [_mono(r, {a: 1, b: 1}) for a, b in combinations(range(r), 2)]
        c, total, targets = 3, (r - 2) * comb(r, 2), comb(r, 3)
    elif kind is IdentityKind.THM_B:
        if r < 3:
            raise ParameterError("need r >= 3")
        gens = [_mono(r, {a: 2, b: 1}) for a, b in permutations(range(r), 2)]
        c, total, targets = 2, 2 * (r - 2) * comb(r, 2), 3 * comb(r, 3)
    elif kind is IdentityKind.THM_C:
        if r < 4:
            raise ParameterError("need r >= 4")
        # exponent 3 stands in for alpha-2; the count is the same for every alpha >= 5
        gens = [_mono(r, {a: 3, b: 1}) for a, b in permutations(range(r), 2)]
        c, total, targets = 2, 2 * (r - 2) * comb(r, 2), 3 * comb(r, 3)
    else:
        if i is None or not 1 <= i or i + 1 > r:
            raise ParameterError(f"PROP needs 1 <= i <= r-1, got i={i}")
        gens = [_mono(r, {a: 1 for a in S}) for S in combinations(range(r), i)]
        c, total, targets = i + 1, (r - i) * comb(r, i), comb(r, i + 1)
    counts = _expand(gens, r)
    return (all(v == c for v in counts.values()) and len(counts) == targets
            and sum(counts.values()) == total == c * targets)


def failing_primes_squares(r: int) -> set[int]:
    """Primes ``p <= ceil(r/2) + 1``, i.e. those with an admissible ``i = p - 1``."""
    if r < 2:
        raise ParameterError("need r >= 2")
    bound = (r + 1) // 2 + 1
    return {p for p in range(2, bound + 1) if is_prime(p)}
