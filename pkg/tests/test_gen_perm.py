from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rauzy.gen_perm import (
    GenPerm,
    GenSignature,
    d_sign,
    enumerate_gen_class,
    gen_genus,
    gen_perms,
    gen_rauzy_move,
    gen_signature,
    inverse_gen,
    is_irreducible_gen,
    is_proper,
    is_self_inverse_gen,
    parse_gen,
    parse_gen_signature,
    row_sums,
    self_inverse_exists,
    witness_lengths,
)
from rauzy.perm_core import ReducibleError, perm
from rauzy.rauzy_class import enumerate_class


def _irreducible(d):
    return [p for p in gen_perms(d) if is_proper(p) and is_irreducible_gen(p)]


def _classes(d):
    todo, out = set(_irreducible(d)), []
    while todo:
        g = enumerate_gen_class(min(todo))
        todo -= set(g.vertices)
        out.append(g)
    return out


SMALL = parse_gen("1 2 2 / 3 3 1")


def test_d_sign_example():
    p = parse_gen("c / a d b c b d a")
    assert d_sign(p, p.top[0]) == "-"
    q = parse_gen("c a d / b c b d a")
    assert d_sign(q, q.top[1]) == "-" and d_sign(q, q.bottom[0]) == "+"
    assert all(d_sign(GenPerm.from_perm(perm(3, 1, 2)), a) == "-" for a in (1, 2, 3))
    with pytest.raises(KeyError):
        d_sign(p, 99)


def test_properness_and_witness():
    p = parse_gen("a b b / c a c d d")
    assert is_proper(p)
    lam = witness_lengths(p)
    s0, s1 = row_sums(p, lam)
    assert s0 == s1 and all(x > 0 for x in lam.values())
    assert not is_proper(parse_gen("a a b c / b c"))
    assert witness_lengths(parse_gen("a a b c / b c")) is None
    t = GenPerm.from_perm(perm(4, 2, 1, 3))
    assert is_proper(t)


def test_irreducibility_examples():
    assert is_irreducible_gen(SMALL)
    assert not is_irreducible_gen(parse_gen("a a b b c / d c d"))
    assert is_irreducible_gen(parse_gen("a a b b / c d c d"))
    with pytest.raises(ValueError):
        is_irreducible_gen(parse_gen("a a b c / b c"))


def test_irreducibility_agrees_with_linear_program():
    lp = pytest.importorskip("scipy.optimize")
    import numpy as np

    def cone(p):
        A, b = [], []
        for row, sgn in ((p.top, -1), (p.bottom, 1)):
            for k in range(1, len(row)):
                v = np.zeros(p.d)
                for a in row[:k]:
                    v[a - 1] += 1
                A.append(sgn * v)
                b.append(-1.0)
        eq = np.zeros(p.d)
        for a in p.top:
            eq[a - 1] += 1
        for a in p.bottom:
            eq[a - 1] -= 1
        res = lp.linprog(np.zeros(p.d), A_ub=np.array(A), b_ub=b, A_eq=eq[None, :], b_eq=[0],
                         bounds=[(None, None)] * p.d, method="highs")
        return res.status == 0

    for d in (2, 3, 4):
        for p in gen_perms(d):
            if is_proper(p):
                assert is_irreducible_gen(p) == cone(p), p


def test_true_perms_match_true_irreducibility():
    from itertools import permutations
    from rauzy.perm_core import is_irreducible
    for line in permutations(range(1, 5)):
        p = perm(*line)
        assert is_irreducible_gen(GenPerm.from_perm(p)) == is_irreducible(p)


def test_inverse_and_self_inverse():
    assert inverse_gen(SMALL) == parse_gen("3 3 1 / 1 2 2")
    assert is_self_inverse_gen(parse_gen("1 2 1 2 3 4 3 4 / 5 6 5 6 7 8 7 8"))
    assert not is_self_inverse_gen(SMALL)


def test_moves_on_small_class():
    assert gen_rauzy_move(SMALL, 1) == SMALL
    r0 = gen_rauzy_move(SMALL, 0)
    assert r0 == parse_gen("1 1 2 2 / 3 3")
    assert gen_rauzy_move(r0, 0) is None
    with pytest.raises(ReducibleError):
        gen_rauzy_move(parse_gen("a a b b c / d c d"), 0)


def test_small_class_matches_oracle(golden_gen):
    want = golden_gen["class_122_331"]
    g = enumerate_gen_class(SMALL)
    assert sorted(map(str, g.vertices)) == sorted(want["vertices"])
    got = sorted([str(s), str(t), e] for s, t, e in g.edges)
    assert got == sorted(want["edges"])
    assert len(g) == 4 and len(g.edges) == 6


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gen_classes_match_oracle(d, golden_gen):
    rows = []
    for g in _classes(d):
        sigs = {gen_signature(v) for v in g.vertices}
        assert len(sigs) == 1
        (s,) = sigs
        rows.append({
            "size": len(g),
            "orders": [s.marked] + sorted(s.rest, reverse=True),
            "has_self_inverse": any(is_self_inverse_gen(v) for v in g.vertices),
            "constant_orders": True,
            "representative": str(g.vertices[0]),
        })
    rows.sort(key=lambda r: (r["size"], r["representative"]))
    want = golden_gen[str(d)]
    assert [(r["size"], r["orders"], r["has_self_inverse"]) for r in rows] == \
        [(r["size"], r["orders"], r["has_self_inverse"]) for r in want]


def test_true_class_agrees():
    p = perm(4, 3, 2, 1)
    g = enumerate_gen_class(GenPerm.from_perm(p))
    assert {v.to_perm() for v in g.vertices} == set(enumerate_class(p).vertices)


def test_signature_examples():
    s = gen_signature(parse_gen("a b b / c a c d d"))
    assert sorted(s.orders) == [-1, -1, 2]
    q = parse_gen("1 2 1 2 3 4 3 4 / 5 6 5 6 7 8 7 8")
    assert gen_signature(q) == GenSignature(12) and gen_genus(q) == 4


def test_signature_parsing():
    s = parse_gen_signature("(0,1^8,-1^4)")
    assert s.marked == 0 and s.rest.count(1) == 8 and s.genus == 2
    assert str(s) == "(0,1^8,-1^4)"
    with pytest.raises(ValueError):
        GenSignature(2)
    with pytest.raises(ValueError):
        GenSignature(-2, (2,))


def test_existence_rule():
    assert self_inverse_exists(GenSignature(12))
    assert not self_inverse_exists(GenSignature(9, (-1,)))
    assert not self_inverse_exists(GenSignature(1, (1, 2)))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_inverse_conjugation_and_closure(d):
    for p in _irreducible(d):
        for e in (0, 1):
            a = gen_rauzy_move(inverse_gen(p), e)
            b = gen_rauzy_move(p, 1 - e)
            assert (a is None) == (b is None)
            if b is not None:
                assert a == inverse_gen(b)
                assert is_irreducible_gen(b)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gauss_bonnet(d):
    for p in _irreducible(d):
        assert gen_signature(p).total == 4 * gen_genus(p) - 4


def test_self_inverse_pairing_is_matching():
    from rauzy.gen_construct import site_classes
    for p in _irreducible(4):
        if not is_self_inverse_gen(p):
            continue
        sites, orders, marked = site_classes(p)
        partner = {}
        for a, b in sites.values():
            assert partner.setdefault(a, b) == b
            assert partner.setdefault(b, a) == a
            assert orders[a] == orders[b]
        if marked in partner:
            assert partner[marked] == marked


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda d: st.permutations([a for a in range(1, d + 1) for _ in (0, 1)])),
       st.data())
def test_witness_is_admissible(word, data):
    d0 = data.draw(st.integers(1, len(word) - 1))
    p = GenPerm.from_rows(word[:d0], word[d0:])
    lam = witness_lengths(p)
    if lam is None:
        assert not is_proper(p)
    else:
        s0, s1 = row_sums(p, lam)
        assert s0 == s1 and min(lam.values()) > Fraction(0)
