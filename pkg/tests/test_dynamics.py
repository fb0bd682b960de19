import random
from fractions import Fraction as F
from math import lcm

import pytest
from hypothesis import given, settings, strategies as st

from rauzy.dynamics import (
    ConeError,
    InductionState,
    InductionUndefined,
    SingularPoint,
    cone_violation,
    export_svg,
    find_connection,
    gen_induction_depth,
    gen_rv_step,
    gen_rv_step_suspension,
    induct_once,
    induction_depth,
    induction_type,
    iet_apply,
    keane_check,
    linv_apply,
    rv_preimage_suspension,
    rv_step,
    rv_step_suspension,
    suspension_polygon,
    translation_vector,
    unit_suspension,
)
from rauzy.gen_perm import GenPerm, is_irreducible_gen, is_proper, parse_gen, witness_lengths
from rauzy.perm_core import canonicalize, inverse, is_irreducible, irreducibles, is_self_inverse, perm, rauzy_move

from .strategies import irreducible_perms

LINV = parse_gen("a b b / c c a")
LINV_LAM = (F(1, 2), F(1, 4), F(1, 4))


# --- a direct model of the exchange, independent of the package -------------

def _apply(top, bottom, lam, x):
    s, start0 = F(0), {}
    for a in top:
        start0[a] = s
        s += lam[a]
    s, start1 = F(0), {}
    for a in bottom:
        start1[a] = s
        s += lam[a]
    a = [b for b in top if start0[b] <= x][-1]
    return a, x - start0[a] + start1[a]


def first_return(p, lam):
    """Pieces of the first-return map to the shortened interval, keyed by
    itinerary, as (canonical permutation, lengths in top order)."""
    top, bottom = list(p.top), list(p.bottom)
    lam = dict(zip(range(1, p.d + 1), lam))
    L = sum(lam.values())
    cut = min(lam[top[-1]], lam[bottom[-1]])
    J = L - cut
    den = lcm(*(v.denominator for v in lam.values()))
    pieces = []
    for k in range(int(J * den)):
        x = (F(k) + F(1, 2)) / den
        y, path = x, []
        while True:
            a, y = _apply(top, bottom, lam, y)
            path.append(a)
            if y < J:
                break
        key = tuple(path)
        if pieces and pieces[-1][0] == key:
            pieces[-1][2] += F(1, den)
        else:
            pieces.append([key, x - F(1, 2 * den), F(1, den), y - x])
    names = list(range(1, len(pieces) + 1))
    image_order = sorted(names, key=lambda n: pieces[n - 1][1] + pieces[n - 1][3])
    return canonicalize(names, image_order), [pc[2] for pc in pieces]


def _random_case(rng, dmax=5):
    while True:
        d = rng.randint(2, dmax)
        line = list(range(1, d + 1))
        rng.shuffle(line)
        p = perm(*line)
        if not is_irreducible(p):
            continue
        lam = tuple(F(rng.randint(1, 5), rng.choice((1, 2, 3, 4))) for _ in range(d))
        if lam[p.top[-1] - 1] != lam[p.bottom[-1] - 1]:
            return p, lam


def test_rv_step_matches_first_return_oracle():
    rng = random.Random(2024)
    for _ in range(100):
        p, lam = _random_case(rng)
        q, lam2 = rv_step(p, lam)
        assert q == rauzy_move(p, induction_type(p, lam))
        want_q, want_lam = first_return(p, lam)
        assert q == want_q
        assert [lam2[a - 1] for a in q.top] == want_lam


def test_translation_vector_example():
    assert translation_vector(perm(3, 2, 1), (1, 1, 1)) == (2, 0, -2)


def test_rotation_and_range():
    lam = (F(1), F(2))
    assert iet_apply(perm(2, 1), lam, F(1, 2)) == F(5, 2)
    with pytest.raises(ValueError):
        iet_apply(perm(2, 1), lam, 3)
    with pytest.raises(SingularPoint):
        iet_apply(perm(2, 1), lam, 1, strict=True)


@settings(max_examples=60, deadline=None)
@given(irreducible_perms(2, 6), st.data())
def test_inverse_exchange_composes_to_identity(p, data):
    lam = tuple(data.draw(st.fractions(F(1, 10), 3, max_denominator=10)) for _ in range(p.d))
    q = inverse(p)
    # the inverse exchange lists the same letters, relabelled by bottom position
    relabel = {a: i for i, a in enumerate(p.bottom, 1)}
    lam_q = [None] * p.d
    for a in p.top:
        lam_q[relabel[a] - 1] = lam[a - 1]
    t = data.draw(st.fractions(0, 1, max_denominator=50))
    if t == 1:
        return
    x = t * sum(lam)
    y = iet_apply(p, lam, x)
    assert iet_apply(q, lam_q, y) == x


def test_reversal_example_step():
    # bottom-last letter is longer: type 1
    q, lam = rv_step(perm(3, 2, 1), (F(1, 2), F(1, 4), F(1, 8)))
    assert q == perm(2, 3, 1) == rauzy_move(perm(3, 2, 1), 1)
    assert sorted(lam) == [F(1, 8), F(1, 4), F(3, 8)]
    q, _ = rv_step(perm(3, 2, 1), (F(1, 8), F(1, 4), F(1, 2)))
    assert q == perm(3, 1, 2)
    with pytest.raises(InductionUndefined):
        rv_step(perm(3, 2, 1), (1, 1, 1))


def _area_case(rng):
    p, lam = _random_case(rng)
    # tau = Omega 1 always lies in the cone
    tau = tuple(F(p.positions1()[a] - a) for a in range(1, p.d + 1))
    return p, lam, tau


def test_suspension_step_preserves_area_and_cone():
    rng = random.Random(11)
    for _ in range(100):
        p, lam, tau = _area_case(rng)
        before = suspension_polygon(p, lam, tau).area()
        q, lam2, tau2 = rv_step_suspension(p, lam, tau)
        assert cone_violation(q, tau2) is None
        assert suspension_polygon(q, lam2, tau2).area() == before


def test_preimage_unique_with_nonzero_height_sum():
    p = perm(4, 3, 2, 1)
    lam = (F(1), F(2), F(3), F(1, 2))
    tau = (F(3), F(1), F(-1), F(-2))
    assert sum(tau) > 0
    pre = rv_preimage_suspension(p, lam, tau)
    assert list(pre) == [1]
    q, lam0, tau0 = pre[1]
    assert rv_step_suspension(q, lam0, tau0) == (p, lam, tau)


def test_preimages_map_forward():
    rng = random.Random(5)
    for _ in range(40):
        p, lam, tau = _area_case(rng)
        for eps, (q, lam0, tau0) in rv_preimage_suspension(p, lam, tau).items():
            assert induction_type(q, lam0) == eps
            assert rv_step_suspension(q, lam0, tau0) == (p, lam, tau)


def test_resumable_state():
    p, lam = perm(4, 3, 2, 1), (F(13, 7), F(3, 5), F(11, 9), F(2, 3))
    a = InductionState(p, lam)
    list(a.advance(6))
    b = InductionState(p, lam)
    list(b.advance(2))
    list(b.advance(4))
    assert (a.perm, a.lam, a.steps) == (b.perm, b.lam, b.steps)


def test_keane_rational_rotation():
    v = keane_check(perm(2, 1), (1, 1), 5)
    assert v is not None and v.m <= 2
    assert induction_depth(perm(2, 1), (1, 1), 5) == 0


def test_keane_near_golden_rotation():
    lam = (F(1), F(10946, 6765))
    assert keane_check(perm(2, 1), lam, 12) is None
    assert induction_depth(perm(2, 1), lam, 12) is None


def test_keane_agrees_with_halting():
    rng = random.Random(9)
    for _ in range(60):
        p, lam = _random_case(rng, 4)
        halt = induction_depth(p, lam, 400)
        assert halt is not None  # rational data always halts
        assert keane_check(p, lam, 400) is not None


# --- linear involutions ---------------------------------------------------

@pytest.mark.parametrize("x,eps,want", [
    (F(1, 8), 0, (F(5, 8), 0)),
    (F(3, 8), 0, (F(7, 8), 0)),
    (F(5, 8), 0, (F(7, 8), 1)),
    (F(7, 8), 0, (F(5, 8), 1)),
    (F(1, 8), 1, (F(3, 8), 0)),
    (F(3, 8), 1, (F(1, 8), 0)),
    (F(5, 8), 1, (F(1, 8), 1)),
    (F(15, 16), 1, (F(7, 16), 1)),
])
def test_worked_linear_involution(x, eps, want):
    assert linv_apply(LINV, LINV_LAM, x, eps) == want


def test_worked_involution_singularities():
    for pt in [(F(1, 2), 0), (F(3, 4), 0), (F(1, 4), 1)]:
        with pytest.raises(SingularPoint):
            linv_apply(LINV, LINV_LAM, *pt)


def test_true_host_keeps_direction():
    p = perm(4, 1, 3, 2)
    g = GenPerm.from_perm(p)
    lam = (F(1, 3), F(1, 2), F(1, 5), F(1, 7))
    for k in range(1, 40):
        x = F(k, 41) * sum(lam)
        y, e = linv_apply(g, lam, x, 0)
        assert e == 0 and y == iet_apply(p, lam, x)


def test_linear_involution_is_bijection():
    lam = LINV_LAM
    seen = set()
    for k in range(1, 64):
        for e in (0, 1):
            x = F(2 * k - 1, 128)
            y = linv_apply(LINV, lam, x, e)
            assert linv_apply(LINV, lam, y[0], 1 - y[1]) == (x, 1 - e)
            seen.add(y)
    assert len(seen) == 126


def _random_linv(rng):
    while True:
        d = rng.randint(3, 5)
        word = [a for a in range(1, d + 1) for _ in (0, 1)]
        rng.shuffle(word)
        k = rng.randint(1, 2 * d - 1)
        p = GenPerm.from_rows(word[:k], word[k:])
        if p.is_true() or not is_proper(p) or not is_irreducible_gen(p):
            continue
        w = witness_lengths(p)
        lam = tuple(w[a] * rng.randint(1, 3) for a in p.letters())
        top = sum(lam[a - 1] for a in p.top)
        bot = sum(lam[a - 1] for a in p.bottom)
        if top != bot:
            continue
        return p, lam


def test_connection_agrees_with_halting():
    rng = random.Random(17)
    n = 0
    while n < 40:
        p, lam = _random_linv(rng)
        halt = gen_induction_depth(p, lam, 300)
        conn = find_connection(p, lam, 300)
        assert (halt is not None) == (conn is not None)
        n += 1


def test_gen_step_shrinks_and_keeps_rows_equal():
    rng = random.Random(23)
    for _ in range(40):
        p, lam = _random_linv(rng)
        if lam[p.top[-1] - 1] == lam[p.bottom[-1] - 1]:
            continue
        q, lam2 = gen_rv_step(p, lam)
        assert sum(lam2[a - 1] for a in q.top) == sum(lam2[a - 1] for a in q.bottom)
        assert sum(lam2[a - 1] for a in q.top) < sum(lam[a - 1] for a in p.top)


def test_gen_suspension_step_rejects_bad_cone():
    with pytest.raises(ConeError):
        gen_rv_step_suspension(LINV, (F(1, 4), F(1, 4), F(1, 2)), (F(-1), F(1), F(0)))


# --- polygons -------------------------------------------------------------

def test_polygon_example():
    poly = suspension_polygon(perm(3, 2, 1), (1, 1, 1), (1, 0, -1))
    assert poly.top == ((0, 0), (1, 1), (2, 1), (3, 0))
    assert poly.area() > 0


def test_cone_rejects():
    assert cone_violation(perm(3, 2, 1), (-1, 0, 1)) == (0, 1)
    with pytest.raises(ConeError) as info:
        suspension_polygon(perm(3, 2, 1), (1, 1, 1), (-1, 0, 1))
    assert info.value.index == 1


@pytest.mark.parametrize("d", range(2, 7))
def test_unit_suspension_symmetric_for_involutions(d):
    for p in irreducibles(d):
        if is_self_inverse(p) and p.line[0] == d and p.line[-1] == 1:
            verts = unit_suspension(p).polygon().vertices()
            assert {(x, -y) for x, y in verts} == verts


def test_svg_export():
    svg = export_svg(unit_suspension(perm(4, 3, 2, 1)).polygon())
    assert svg.startswith(b"<svg") and b"<polygon" in svg and svg.count(b"<text") == 8


def test_induct_once_on_both_hosts():
    q, lam, tau = induct_once(perm(3, 2, 1), "1/2,1/4,1/8")
    assert q == perm(2, 3, 1) and tau is None
    g, lam2, _ = induct_once(LINV, LINV_LAM)
    assert sum(lam2[a - 1] for a in g.top) == F(3, 4)
