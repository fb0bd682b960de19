"""Insertion blocks and self-inverse representatives of generalized classes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import count

from .gen_perm import (
    GenPerm,
    GenSignature,
    gen_signature,
    is_irreducible_gen,
    is_proper,
    is_self_inverse_gen,
    self_inverse_exists,
    vertex_classes,
)

POLES, EVEN, SPACE, TWOFOURS, JUSTFOURS, TWOTWOS, INSERT = (
    "POLES", "EVEN", "SPACE", "TWOFOURS", "JUSTFOURS", "TWOTWOS", "INSERT")

Q12 = {
    "reg": GenPerm.from_rows("1 2 1 2 3 4 3 4".split(), "5 6 5 6 7 8 7 8".split()),
    "irr": GenPerm.from_rows("1 2 3 4 5 2 6 7".split(), "7 8 4 3 6 8 5 1".split()),
}


@dataclass(frozen=True)
class InsertionBlock:
    kind: str
    params: tuple = ()

    def columns(self, fresh) -> list[tuple]:
        return render(self.kind, *self.params, fresh=fresh)

    def __str__(self):
        return self.kind + (str(self.params) if self.params else "")


def _pair(fresh):
    a, b = next(fresh), next(fresh)
    return (a, b)


def render(kind: str, *params, fresh=None) -> list[tuple]:
    """Columns ``(top, bottom)`` of a block over fresh letters."""
    fresh = fresh if fresh is not None else count(1)
    if kind == SPACE:
        a = next(fresh)
        return [(a, a)]
    if kind == POLES:
        (i,) = params
        if i < 0:
            raise ValueError("POLES needs i >= 0")
        cols = []
        for _ in range(i):
            c = _pair(fresh)
            cols += [c, c]
        return cols
    if kind == EVEN:
        (n2,) = params
        if n2 < 0 or n2 % 2:
            raise ValueError("EVEN needs a non-negative even size")
        cols = []
        for _ in range(n2 // 2):
            a, b = next(fresh), next(fresh)
            cols += [(a, b), (b, a)]
        return cols
    if kind == TWOFOURS:
        al, be, ga, de, ep = (next(fresh) for _ in range(5))
        return [(al, ep), (be, be), (ga, de), (al, ep), (de, ga)]
    if kind == JUSTFOURS:
        (n,) = params
        if n < 8 or n % 4:
            raise ValueError("JUSTFOURS needs a multiple of 4 that is at least 8")
        cols = render(EVEN, (n - 8) // 2, fresh=fresh)
        ab, gd = _pair(fresh), _pair(fresh)
        return cols + [ab, gd, ab, gd]
    if kind == TWOTWOS:
        p, q = params
        if p % 4 != 2 or q % 4 != 2:
            raise ValueError("TWOTWOS needs two orders congruent to 2 mod 4")
        ab = _pair(fresh)
        return ([ab] + render(SPACE, fresh=fresh) + render(EVEN, (p - 2) // 2, fresh=fresh)
                + [ab] + render(EVEN, (q - 2) // 2, fresh=fresh))
    if kind == INSERT:
        r, (p, q) = params
        if r < 1 or r % 2 == 0 or p < -1 or q < -1 or p % 2 == 0 or q % 2 == 0:
            raise ValueError("INSERT needs odd r >= 1 and odd p, q >= -1")
        ac, bd = _pair(fresh), _pair(fresh)
        return ([ac] + render(EVEN, p + 1, fresh=fresh) + [ac] + [bd]
                + render(EVEN, q + 1, fresh=fresh) + [bd] + render(EVEN, r - 1, fresh=fresh))
    raise ValueError(f"unknown block kind {kind!r}")


def to_gen(cols) -> GenPerm:
    return GenPerm.from_rows([c[0] for c in cols], [c[1] for c in cols])


def to_columns(p: GenPerm) -> list[tuple]:
    if p.d0 != p.d1:
        raise ValueError("host must be balanced")
    return list(zip(p.top, p.bottom))


@dataclass(frozen=True)
class InsertionSite:
    column: int


def site_classes(p: GenPerm) -> tuple[dict, list[int], int]:
    """For each column gap i, the (top, bottom) singularity indices."""
    vertex, orders, marked = vertex_classes(p)
    sites = {i: (vertex[(0, i)], vertex[(1, i)]) for i in range(1, p.d0)}
    return sites, orders, marked


def insert(p: GenPerm, site: InsertionSite | int, block: InsertionBlock) -> GenPerm:
    i = site.column if isinstance(site, InsertionSite) else site
    if not 1 <= i < p.d0 or p.d0 != p.d1:
        raise ValueError(f"invalid insertion site {i}")
    cols = to_columns(p)
    fresh = count(p.d + 1)
    return to_gen(cols[:i] + block.columns(fresh) + cols[i:])


# --- site selection -------------------------------------------------------

def paired_pole_site(p: GenPerm) -> int | None:
    return odd_pair_site(p, -1)


def odd_pair_site(p: GenPerm, j: int) -> int | None:
    sites, orders, _ = site_classes(p)
    for i, (a, b) in sorted(sites.items()):
        if a != b and orders[a] == j and orders[b] == j:
            return i
    return None


def even_site(p: GenPerm, order: int, marked: bool) -> int | None:
    sites, orders, mk = site_classes(p)
    for i, (a, b) in sorted(sites.items()):
        if a == b and orders[a] == order and (a == mk) == marked:
            return i
    return None


# --- base words -----------------------------------------------------------

class _Builder:
    """Column words over a shared fresh-letter supply."""

    def __init__(self):
        self.fresh = count(1)

    def block(self, kind, *params):
        return render(kind, *params, fresh=self.fresh)

    def pair(self):
        return _pair(self.fresh)

    def rev(self, n):
        letters = [next(self.fresh) for _ in range(n)]
        return list(zip(letters, reversed(letters)))

    def join(self, parts):
        """Separate parts by SPACE; an empty part stands for an order-0 point."""
        out = []
        for k, part in enumerate(parts):
            if k:
                out += self.block(SPACE)
            out += part
        return out

    def ab(self, inner):
        a, b = self.pair()
        return [(a, b)] + inner + [(b, a)]

    def acbd(self, inner):
        ac, bd = self.pair(), self.pair()
        return [ac, ac] + inner + [bd, bd]


def _split(sig: GenSignature):
    """Even orders (marked first), odd pair orders, pole count."""
    c = Counter(sig.rest)
    evens = [sig.marked] + sorted((x for x in sig.rest if x % 2 == 0), reverse=True)
    pairs = []
    for v in sorted((v for v in c if v % 2 and v > 0), reverse=True):
        pairs += [v] * (c[v] // 2)
    return evens, pairs, c[-1]


def _even_parts(B: _Builder, evens: list[int]) -> list[list]:
    """Parts (left to right, marked rightmost) realizing positive even
    orders whose sum is divisible by 4, as a generalized word."""
    marked, rest = evens[0], sorted(evens[1:], reverse=True)
    if all(x == 4 for x in evens):
        if len(evens) == 1:
            raise ValueError("no quadratic differential with a single order-4 zero in genus 2")
        return [B.block(EVEN, 2) for _ in range(len(evens) - 2)] + [B.block(TWOFOURS)]
    if all(x % 4 == 0 for x in evens):
        j = next(i for i, x in enumerate([marked] + rest) if x > 4)
        ordered = [marked] + rest
        parts = [B.block(JUSTFOURS, x) if i == j else B.block(EVEN, x // 2)
                 for i, x in enumerate(ordered)]
        return parts[::-1]
    twos = sorted((x for x in rest if x % 4 == 2), reverse=True)
    fours = sorted((x for x in rest if x % 4 == 0), reverse=True)
    if marked % 4 == 0:
        parts = [B.block(TWOTWOS, twos[k], twos[k + 1]) for k in range(0, len(twos), 2)]
        return parts + [B.block(EVEN, x // 2) for x in fours + [marked]]
    twos = [marked] + twos
    parts = [B.block(EVEN, x // 2) for x in fours]
    for k in range(len(twos) - 2, -1, -2):
        parts.append(B.block(TWOTWOS, twos[k + 1], twos[k]))
    return parts


def _with_zeros(parts: list[list], zeros: int, marked_zero: bool) -> list[list]:
    return parts + [[]] * zeros if marked_zero else [[]] * zeros + parts


def _evens_word(B: _Builder, evens: list[int], quadratic: bool = True) -> list:
    """Interior word for the A/B frame carrying the given even orders
    (marked first). With ``quadratic`` false an Abelian-type word is allowed
    for total 4, as needed when poles are added afterwards."""
    nz = [x for x in evens if x]
    zeros = len(evens) - len(nz)
    if not nz:
        parts = []
    elif not quadratic and sum(nz) == 4 and len(nz) == 1:
        parts = [B.block(EVEN, 2)]
    else:
        parts = _even_parts(B, nz)
    parts = _with_zeros(parts, zeros, evens[0] == 0)
    if not parts:
        return []
    return B.join(parts)


def _nopoles(B: _Builder, evens: list[int], pairs: list[int]) -> list:
    """Self-inverse columns for orders ``evens`` (marked first) plus the odd
    pairs in ``pairs``; a trailing -1 entry stands for the two poles."""
    n = len(pairs)
    if n == 0:
        return B.ab(_evens_word(B, evens))
    if n % 2 == 0:
        cols = B.acbd(_evens_word(B, evens, quadratic=False)[::-1])
        host = to_gen(cols)
        for k in range(0, n - 2, 2):
            host = _insert_at(host, paired_pole_site(host), InsertionBlock(INSERT, (pairs[k], (pairs[k + 1], -1))))
        for j in pairs[-2:]:
            if j + 1:
                host = _insert_at(host, paired_pole_site(host), InsertionBlock(EVEN, (j + 1,)))
        return to_columns(host)
    p = next(i for i, x in enumerate(evens) if x % 4 == 2)
    rest = evens[:p] + evens[p + 1:]
    ac = B.pair()
    special = B.block(EVEN, evens[p] // 2 - 1)
    if p == 0:
        parts = ([_evens_word_parts(B, rest)] if rest else []) + [special + [ac, ac]]
    else:
        parts = [[ac, ac] + special] + ([_evens_word_parts(B, rest)] if rest else [])
    host = to_gen(B.ab(B.join(parts)))
    for k in range(0, n - 1, 2):
        host = _insert_at(host, paired_pole_site(host), InsertionBlock(INSERT, (pairs[k], (pairs[k + 1], -1))))
    if pairs[-1] + 1:
        host = _insert_at(host, paired_pole_site(host), InsertionBlock(EVEN, (pairs[-1] + 1,)))
    return to_columns(host)


def _evens_word_parts(B, evens):
    return _evens_word(B, evens, quadratic=False) if any(evens) or len(evens) > 1 else []


def _insert_at(host: GenPerm, site: int | None, block: InsertionBlock) -> GenPerm:
    if site is None:
        raise AssertionError(f"no insertion site for {block} in {host}")
    return insert(host, site, block)


def _genus0(sig: GenSignature) -> GenPerm:
    evens, pairs, _ = _split(sig)
    B = _Builder()
    parts = [B.block(POLES, x // 2) for x in evens]
    host = to_gen(B.acbd(B.join(parts)))
    for j in pairs:
        host = _insert_at(host, paired_pole_site(host), InsertionBlock(POLES, (j + 1,)))
    return host


def _genus1(sig: GenSignature) -> GenPerm:
    evens, pairs, _ = _split(sig)
    B = _Builder()
    if any(evens):
        parts = [B.block(POLES, x // 2) for x in evens][::-1]
        host = to_gen(B.ab(B.join(parts)))
    else:
        j1, pairs = pairs[0], pairs[1:]
        ac, bd = B.pair(), B.pair()
        inner = B.block(EVEN, 2) + B.block(POLES, 2 * j1 - 2)
        spaces = [c for _ in range(len(evens) - 1) for c in B.block(SPACE)]
        host = to_gen([ac] + inner + [ac] + spaces + [bd, bd])
    for j in pairs:
        host = _insert_at(host, paired_pole_site(host), InsertionBlock(POLES, (j + 1,)))
    return host


def _hyperelliptic_form(sig: GenSignature, component: str) -> GenPerm:
    nz = sorted((x for x in sig.orders if x), reverse=True)
    zeros = len(sig.orders) - len(nz)
    hyp = component == "hyp"
    B = _Builder()
    block = B.rev if hyp else (lambda n: B.block(EVEN, n))

    def cc(k):
        left = [next(B.fresh) for _ in range(2 * k)]
        return ([(left[i], left[2 * k - 1 - i]) for i in range(k)],
                [(left[k + i], left[k - 1 - i]) for i in range(k)])

    def spaced(inner, marked_zero):
        sp = [c for _ in range(zeros) for c in B.block(SPACE)]
        return inner + sp if marked_zero else sp + inner

    odd = [x for x in nz if x % 2]
    even = [x for x in nz if x % 2 == 0]
    if len(odd) == 4 and not even and odd[0] == odd[1] and odd[2] == odd[3] and sig.marked == 0:
        j, k = (odd[0] + 1) // 2, (odd[2] + 1) // 2
        ac, bd = B.pair(), B.pair()
        sp = [c for _ in range(zeros - 1) for c in B.block(SPACE)]
        return to_gen([ac] + block(2 * j) + [ac] + sp + [bd] + block(2 * k) + [bd])
    if len(odd) == 2 and len(even) == 1 and odd[0] == odd[1] and even[0] % 4 == 2 \
            and sig.marked in (0, even[0]):
        k, j = (even[0] - 2) // 4, (odd[0] + 1) // 2
        al = B.pair()
        if hyp:
            left, right = cc(k)
            inner = left + [al] + B.rev(2 * j) + [al] + right
        else:
            inner = B.block(EVEN, 2 * k) + [al] + B.block(EVEN, 2 * j) + [al]
        return to_gen(B.ab(spaced(inner, sig.marked == 0)))
    if len(even) == 2 and not odd and all(x % 4 == 2 for x in even) and sig.marked in (0, *even):
        mk = sig.marked if sig.marked else even[0]
        other = even[1] if mk == even[0] else even[0]
        k, j = (mk - 2) // 4, (other - 2) // 4
        if hyp:
            al = B.pair()
            left, right = cc(k)
            inner = left + [al] + B.rev(2 * j + 1) + [al] + right
        else:
            inner = B.block(TWOTWOS, other, mk)
        return to_gen(B.ab(spaced(inner, sig.marked == 0)))
    raise ValueError(f"no {component} construction for {sig}")


def _reduce(sig: GenSignature):
    """One reduction step: (smaller signature, block, site finder)."""
    evens, pairs, p = _split(sig)
    orders = list(sig.orders)
    for idx, x in enumerate(orders):
        if x > 0 and x % 2 == 0:
            new = orders[:idx] + [x - 2] + orders[idx + 1:]
            new.remove(-1)
            new.remove(-1)
            finder = lambda h, o=x - 2, m=(idx == 0): even_site(h, o, m)
            return GenSignature(new[0], tuple(new[1:])), InsertionBlock(POLES, (1,)), finder
    big = [j for j in pairs if j > 1]
    if big:
        j = big[0]
        new = list(orders)
        new.remove(j)
        new.remove(j)
        new += [j - 2, j - 2]
        for _ in range(4):
            new.remove(-1)
        return GenSignature(new[0], tuple(new[1:])), InsertionBlock(POLES, (2,)), \
            (lambda h, o=j - 2: odd_pair_site(h, o))
    new = list(orders)
    new.remove(1)
    new.remove(1)
    new.remove(-1)
    new.remove(-1)
    return GenSignature(new[0], tuple(new[1:])), InsertionBlock(POLES, (2,)), paired_pole_site


def _true_fallback(sig: GenSignature) -> GenPerm | None:
    """Signatures only realized by true permutations (squares of Abelian
    differentials): all orders even and the quadratic stratum empty."""
    if any(x % 2 for x in sig.orders):
        return None
    nz = [x for x in sig.orders if x]
    if (sig.genus == 1 and not nz) or (sig.genus == 2 and nz == [4]):
        from .invariants import Signature
        from .selfinverse_construct import self_inverse_for_signature
        return GenPerm.from_perm(self_inverse_for_signature(
            Signature(sig.marked // 2, tuple(x // 2 for x in sig.rest))))
    return None


def _build(sig: GenSignature, component: str | None) -> GenPerm:
    if component in ("hyp", "nonhyp"):
        return _hyperelliptic_form(sig, component)
    if component in ("reg", "irr"):
        if sig != GenSignature(12):
            raise ValueError(f"component {component} only applies to (12)")
        return Q12[component]
    if component is not None:
        raise ValueError(f"unknown component {component!r}")
    fallback = _true_fallback(sig)
    if fallback is not None:
        return fallback
    if sig.genus == 0:
        return _genus0(sig)
    if sig.genus == 1:
        return _genus1(sig)
    if sig == GenSignature(12):
        return Q12["reg"]
    evens, pairs, p = _split(sig)
    if p == 0:
        return to_gen(_nopoles(_Builder(), evens, pairs))
    if p == 2:
        return to_gen(_nopoles(_Builder(), evens, pairs + [-1]))
    smaller, block, finder = _reduce(sig)
    host = _build(smaller, None)
    return _insert_at(host, finder(host), block)


def self_inverse_gen_for(sig: GenSignature, component: str | None = None) -> GenPerm | None:
    """A self-inverse generalized permutation with signature ``sig``, or None
    when no class with that signature contains one."""
    if not self_inverse_exists(sig):
        return None
    p = _build(sig, component)
    if not (is_proper(p) and is_self_inverse_gen(p) and is_irreducible_gen(p)
            and gen_signature(p) == sig):
        raise AssertionError(f"construction for {sig} produced {p}")
    return p
