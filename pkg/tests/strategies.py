from __future__ import annotations

from hypothesis import strategies as st

from lefschetz import MonomialIdeal


@st.composite
def artinian_ideals(draw, max_r=4, max_exp=4, max_extra=4):
    """Random Artinian monomial ideals: one pure power per variable plus a few mixed generators."""
    r = draw(st.integers(1, max_r))
    gens = [tuple(draw(st.integers(1, max_exp)) if j == i else 0 for j in range(r)) for i in range(r)]
    extra = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * r), max_size=max_extra))
    gens += [e for e in extra if sum(e) > 0]
    return MonomialIdeal.from_generators(r, gens)
