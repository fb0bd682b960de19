import pytest
from hypothesis import given

from rauzy.perm_core import (
    Permutation,
    ReducibleError,
    canonicalize,
    inverse,
    irreducibles,
    is_irreducible,
    is_self_inverse,
    is_standard,
    omega,
    parse,
    perm,
    rauzy_move,
    rauzy_premove,
    reversal,
)

from .strategies import irreducible_perms


def test_parse_forms_agree():
    assert parse("3 2 1") == parse("(3,2,1)") == parse("a b c / c b a") == perm(3, 2, 1)
    assert parse("x y / y x") == reversal(2)


@pytest.mark.parametrize("bad", ["1 1 2", "0 1", "1", "1 2 / 1 3", "a b / b a / c"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_moves_on_reversal():
    p = perm(3, 2, 1)
    assert rauzy_move(p, 0) == perm(3, 1, 2)
    assert rauzy_move(p, 1) == perm(2, 3, 1)


def test_move_rejects_reducible():
    with pytest.raises(ReducibleError):
        rauzy_move(perm(1, 3, 2), 0)


def test_irreducible_counts():
    # irreducible permutations: 1, 3, 13, 71, 461
    assert [sum(1 for _ in irreducibles(d)) for d in range(2, 7)] == [1, 3, 13, 71, 461]


def test_inverse_and_self_inverse():
    p = perm(4, 1, 3, 2)
    assert inverse(inverse(p)) == p
    assert inverse(p) == perm(2, 4, 3, 1)
    assert is_self_inverse(perm(7, 5, 3, 6, 2, 4, 1))
    assert not is_self_inverse(perm(3, 1, 4, 2))


def test_standard():
    assert is_standard(perm(4, 3, 2, 1))
    assert not is_standard(perm(4, 1, 3, 2))


def test_omega_is_antisymmetric_translation_matrix():
    m = omega(perm(3, 2, 1))
    assert m == [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]


def test_canonicalize_letters():
    assert canonicalize("abc", "cab") == Permutation((3, 1, 2))


@given(irreducible_perms())
def test_premove_inverts_move(p):
    for e in (0, 1):
        assert rauzy_premove(rauzy_move(p, e), e) == p
        assert rauzy_move(rauzy_premove(p, e), e) == p


@given(irreducible_perms())
def test_moves_keep_irreducibility(p):
    for e in (0, 1):
        assert is_irreducible(rauzy_move(p, e))


@given(irreducible_perms())
def test_inverse_conjugates_move_types(p):
    for e in (0, 1):
        assert rauzy_move(inverse(p), e) == inverse(rauzy_move(p, 1 - e))
