import pytest
from hypothesis import given, settings, strategies as st

from rauzy.invariants import genus
from rauzy.lagrangian import (
    intersection,
    is_isotropic,
    is_lagrangian,
    is_transposition_lagrangian,
    orbits,
    rank,
    report,
)
from rauzy.perm_core import irreducibles, is_self_inverse, omega, perm
from rauzy.selfinverse_construct import LOW_GENUS

from .strategies import irreducible_perms


def _up_to_sign(vectors):
    return {tuple(v) if next(x for x in v if x) > 0 else tuple(-x for x in v) for v in vectors if any(v)}


def test_lagrangian_example():
    p = perm(4, 1, 3, 2)
    assert is_lagrangian(p)
    span = orbits(p).span_vectors()
    assert rank(span + [[1, 1, 0, -2], [0, 1, 0, -1]]) == rank(span) == 2
    assert {(1, 1, 0, -2), (0, 1, 0, -1)} <= _up_to_sign(span)


def test_non_lagrangian_example():
    p = perm(3, 1, 4, 2)
    assert not is_lagrangian(p)
    assert _up_to_sign(orbits(p).span_vectors()) == {(1, 2, -2, -1)}


def test_lagrangian_but_not_by_transpositions():
    p = perm(7, 5, 3, 6, 2, 4, 1)
    assert is_lagrangian(p) and not is_transposition_lagrangian(p)
    o = orbits(p)
    assert o.image((2, 5)) == o.image((4, 6))
    r = report(p)
    assert r["transposition_rank"] == 2 and r["genus"] == 3


def test_orbits_of_reversal():
    o = orbits(perm(3, 2, 1))
    assert o.orbits == ((1, 3), (2,))


def test_transposition_test_requires_involution():
    with pytest.raises(ValueError):
        is_transposition_lagrangian(perm(3, 1, 4, 2))
    with pytest.raises(ValueError):
        is_lagrangian(perm(1, 2))


def test_intersection_errors_and_pair_value():
    p = perm(4, 3, 2, 1)
    with pytest.raises(ValueError):
        intersection(p, [1, 0], [0, 1])
    # e_a against e_b for a transposition-sized pair gives +-2 via the pair form
    u, v = [1, 0, 0, 1], [1, 0, 0, -1]
    assert abs(intersection(p, u, v)) == 2


@pytest.mark.parametrize("d", range(2, 7))
def test_isotropy_exhaustive(d):
    for p in irreducibles(d):
        assert is_isotropic(p)


@pytest.mark.parametrize("d", range(2, 8))
def test_self_inverse_are_lagrangian(d):
    for p in irreducibles(d):
        if is_self_inverse(p):
            assert is_lagrangian(p), p
            assert rank(orbits(p).span_vectors()) == genus(p)


@pytest.mark.parametrize("d", range(2, 8))
def test_omega_rank_is_twice_genus(d):
    for p in irreducibles(d):
        assert rank(omega(p)) == 2 * genus(p)


def test_self_inverse_orbits_small():
    for line in LOW_GENUS.values():
        o = orbits(perm(*line))
        assert max(map(len, o.orbits)) <= 2


@settings(max_examples=80, deadline=None)
@given(irreducible_perms(2, 8), st.data())
def test_form_is_antisymmetric(p, data):
    vec = st.lists(st.integers(-3, 3), min_size=p.d, max_size=p.d)
    u, v = data.draw(vec), data.draw(vec)
    assert intersection(p, u, v) == -intersection(p, v, u)
    assert intersection(p, u, u) == 0


@settings(max_examples=80, deadline=None)
@given(irreducible_perms(2, 8))
def test_orbits_partition_alphabet(p):
    o = orbits(p)
    letters = sorted(a for b in o.orbits for a in b)
    assert letters == list(range(1, p.d + 1))
    assert rank(o.span_vectors()) <= genus(p)
