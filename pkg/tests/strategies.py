"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from rauzy.perm_core import Permutation, is_irreducible


@st.composite
def irreducible_perms(draw, min_d=2, max_d=8):
    d = draw(st.integers(min_d, max_d))
    line = draw(st.permutations(range(1, d + 1)).filter(lambda l: is_irreducible(Permutation(tuple(l)))))
    return Permutation(tuple(line))


def positive_fractions(max_den=12):
    return st.fractions(min_value=0, max_denominator=max_den).filter(lambda x: x > 0)
