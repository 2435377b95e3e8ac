from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lefschetz import (
    IdentityKind,
    ParameterError,
    family_J,
    family_mixed,
    family_squares,
    counting_identity_check,
    failing_primes_squares,
    hilbert_inequality_check,
    verify_witness,
    wlp_check,
    witness_prop,
    witness_thmA,
    witness_thmB,
    witness_thmC,
)
from lefschetz.monomials import Monomial, multiply_linear
from lefschetz.witnesses import quadratic_drop_closed_form


def _sq(r, i, a=2):
    e = [0] * r
    e[i] = a
    return Monomial(e)


def _pair(r, i, m, a=1, b=1):
    e = [0] * r
    e[i], e[m] = a, b
    return Monomial(e)


# --------------------------------------------------------------------------
# quadratic witness, char 3


def test_literal_quadratic_coefficients():
    w = witness_thmA((3, 3, 3, 3), 4, form="literal")
    f = w.f.mod(3)
    assert [f.coefficient(_sq(4, i)) for i in range(4)] == [0, 2, 1, 0]
    assert all(w.f.coefficient(_pair(4, i, m)) == -1 for i in range(4) for m in range(i + 1, 4))


@pytest.mark.parametrize("form", ["balanced", "literal"])
def test_quadratic_witness_with_all_exponents_two(form):
    w = witness_thmA((2,) * 5, 4, form=form)
    assert all(max(m) == 1 for m in w.f.terms)
    assert len(w.f.terms) == comb(5, 2) and all(c == -1 for _, c in w.f.terms.items())


def test_balanced_quadratic_witness_verifies():
    I = family_mixed((3,) * 5, 4)
    w = witness_thmA((3,) * 5, 4)
    chk = verify_witness(I, 3, w)
    assert chk.as_tuple() == (True, True, True)
    assert chk.conclusion == "WLP fails at t=2 in characteristic 3"
    assert wlp_check(I, 3).first_failure == 2


def test_balanced_quadratic_witness_matches_engine_kernel():
    I = family_mixed((3,) * 5, 4)
    rep = wlp_check(I, 3)
    w = witness_thmA((3,) * 5, 4)
    k = rep.witness.mod(3)
    # the kernel is one-dimensional here, so the two agree up to a unit
    assert k == w.f.mod(3) or k == (w.f * 2).mod(3)


def test_literal_quadratic_witness_is_not_annihilated():
    I = family_mixed((3,) * 5, 4)
    chk = verify_witness(I, 3, witness_thmA((3,) * 5, 4, form="literal"))
    assert chk.nonzero and not chk.annihilated and chk.conclusion is None


def test_quadratic_witness_in_characteristic_five():
    I = family_mixed((3,) * 5, 4)
    chk = verify_witness(I, 5, witness_thmA((3,) * 5, 4))
    assert chk.nonzero and not chk.annihilated
    assert any(c % 5 == 2 or c % 5 == 3 for _, c in chk.residue.terms.items())


def test_four_squares_exception_fails_the_inequality():
    # h_2 > h_3 here, so non-injectivity on A_2 does not break maximal rank
    I = family_mixed((2, 2, 2, 2), 4)
    chk = verify_witness(I, 3, witness_thmA((2, 2, 2, 2), 4))
    assert chk.as_tuple() == (True, True, False)
    assert chk.conclusion is None
    assert quadratic_drop_closed_form(4, 4)


@pytest.mark.parametrize("r", range(4, 13))
def test_closed_form_drop_only_at_four(r):
    assert [m for m in range(r + 1) if quadratic_drop_closed_form(r, m)] == ([4] if r == 4 else [])


@pytest.mark.parametrize("bad", [dict(alphas=(4, 3, 3, 3, 3), d=4), dict(alphas=(3,) * 5, d=3),
                                 dict(alphas=(3,) * 5, d=6)])
def test_quadratic_witness_range(bad):
    with pytest.raises(ParameterError):
        witness_thmA(**bad)


# --------------------------------------------------------------------------
# cubic witness, char 2


def test_cubic_witness_terms_with_exponent_four():
    w = witness_thmB((4,) * 5, 5)
    assert w.degree == 3 and w.claimed_char.value == 2
    assert w.f.coefficient(_sq(5, 0, 3)) == 1
    assert w.f.coefficient(_pair(5, 0, 1, 2, 1)) == 1
    assert w.f.coefficient(_pair(5, 1, 0, 2, 1)) == 1


def test_cubic_witness_degenerate_for_squares():
    w = witness_thmB((2,) * 5, 5)
    assert w.degenerate
    chk = verify_witness(w.ideal(), 2, w)
    assert not chk.nonzero and chk.conclusion is None


def test_cubic_witness_on_five_variable_example():
    I = family_mixed((4, 4, 3, 3, 2), 5)
    chk = verify_witness(I, 2, witness_thmB((4, 4, 3, 3, 2), 5))
    assert chk.as_tuple() == (True, True, True)
    assert (chk.h_t, chk.h_t1) == (28, 43)
    literal = verify_witness(I, 2, witness_thmB((4, 4, 3, 3, 2), 5, form="literal"))
    assert literal.nonzero and not literal.annihilated


# --------------------------------------------------------------------------
# degree alpha-1 witness, char 2


def test_top_power_witness_terms():
    w = witness_thmC(4, 5, form="literal")
    assert w.f.coefficient(_sq(4, 0, 4)) != 0
    assert w.f.coefficient(_pair(4, 0, 1, 3, 1)) != 0
    assert w.f.coefficient(_pair(4, 0, 1, 1, 3)) != 0
    assert not family_J(4, 5).contains(_sq(4, 0, 4))


@pytest.mark.parametrize("r,alpha", [(4, 5), (4, 6), (5, 5)])
def test_top_power_witness_verifies(r, alpha):
    I = family_J(r, alpha)
    chk = verify_witness(I, 2, witness_thmC(r, alpha))
    assert chk.as_tuple() == (True, True, True)
    assert wlp_check(I, 2).first_failure == alpha - 1
    assert not verify_witness(I, 2, witness_thmC(r, alpha, form="literal")).annihilated


def test_top_power_witness_range():
    with pytest.raises(ParameterError):
        witness_thmC(3, 5)
    with pytest.raises(ParameterError):
        witness_thmC(4, 4)
    with pytest.raises(ParameterError):
        witness_thmC(4, 5, form="other")


# --------------------------------------------------------------------------
# squarefree witness


def test_linear_squarefree_witness():
    w = witness_prop(4, 3, 1)
    assert w.claimed_char.value == 2
    assert dict(w.f.terms) == {Monomial([int(j == i) for j in range(4)]): 1 for i in range(4)}
    prod = multiply_linear(w.f, [1] * 4)
    assert all(c == 2 for m, c in prod.terms.items() if max(m) == 1)
    assert verify_witness(family_squares(4, 3), 2, w).as_tuple() == (True, True, True)


def test_quadratic_squarefree_witness_in_characteristic_three():
    w = witness_prop(6, 4, 2)
    assert w.claimed_char.value == 3
    prod = multiply_linear(w.f, [1] * 6)
    assert {c for m, c in prod.terms.items() if max(m) == 1} == {3}
    assert verify_witness(family_squares(6, 4), 3, w).all_true


@pytest.mark.parametrize("r,d,i", [(4, 3, 0), (4, 3, 2), (5, 5, 4), (4, 4, 3)])
def test_squarefree_witness_range(r, d, i):
    with pytest.raises(ParameterError):
        witness_prop(r, d, i)


def test_squarefree_witness_rejects_foreign_characteristic():
    with pytest.raises(ParameterError):
        witness_prop(6, 4, 2, char=2)
    assert witness_prop(8, 5, 3, char=2).claimed_char.value == 2


# --------------------------------------------------------------------------
# counts, primes and inequalities


def test_counting_identity_examples():
    assert (6 - 2) * comb(6, 2) == 60 == 3 * comb(6, 3)
    assert counting_identity_check(6, IdentityKind.THM_A)
    assert 2 * 3 * comb(5, 2) == 60 == 2 * 3 * comb(5, 3)
    assert counting_identity_check(5, IdentityKind.THM_B)
    assert (5 - 2) * comb(5, 2) == 30 == 3 * comb(5, 3)
    assert counting_identity_check(5, IdentityKind.PROP, i=2)


@pytest.mark.parametrize("r", range(3, 13))
def test_counting_identities_for_every_r(r):
    assert counting_identity_check(r, IdentityKind.THM_A)
    assert counting_identity_check(r, IdentityKind.THM_B)
    if r >= 4:
        assert counting_identity_check(r, IdentityKind.THM_C)
    for i in range(1, r):
        assert counting_identity_check(r, IdentityKind.PROP, i=i)


def test_counting_identity_ranges():
    with pytest.raises(ParameterError):
        counting_identity_check(2, IdentityKind.THM_A)
    with pytest.raises(ParameterError):
        counting_identity_check(3, IdentityKind.THM_C)
    with pytest.raises(ParameterError):
        counting_identity_check(4, IdentityKind.PROP, i=4)


@pytest.mark.parametrize("r,primes", [(2, {2}), (4, {2, 3}), (10, {2, 3, 5}), (11, {2, 3, 5, 7})])
def test_failing_primes(r, primes):
    assert failing_primes_squares(r) == primes


@pytest.mark.parametrize(
    "I,t,expected",
    [
        (family_mixed((4, 4, 3, 3, 2), 5), 3, True),
        (family_J(4, 5), 4, True),
        (family_squares(4, 3), 2, False),
        (family_squares(4, 3), 7, False),
        (family_mixed((2, 2, 2, 2), 4), 2, False),
    ],
)
def test_hilbert_inequality(I, t, expected):
    assert hilbert_inequality_check(I, t) is expected


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_verified_witness_implies_rank_failure(data):
    r = data.draw(st.integers(5, 6))
    kind = data.draw(st.sampled_from(["A", "B"]))
    if kind == "A":
        alphas = tuple(data.draw(st.lists(st.sampled_from([2, 3]), min_size=r, max_size=r)))
        d = data.draw(st.integers(4, r))
        w, p = witness_thmA(alphas, d), 3
    else:
        alphas = tuple(data.draw(st.lists(st.sampled_from([2, 3, 4]), min_size=r, max_size=r)))
        d = data.draw(st.integers(5, r))
        w, p = witness_thmB(alphas, d), 2
    I = family_mixed(alphas, d)
    chk = verify_witness(I, p, w)
    if chk.all_true:
        rep = wlp_check(I, p)
        assert not rep.holds
        assert rep.row(w.degree).rank < rep.row(w.degree).h_t
