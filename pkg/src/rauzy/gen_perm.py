"""Generalized permutations: two rows in which every letter appears twice."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .invariants import _DSU, parse_orders
from .perm_core import Permutation, ReducibleError
from .rauzy_class import DEFAULT_CAP, bfs


@dataclass(frozen=True, order=True)
class GenPerm:
    """Rows relabeled so letters are 1..d in order of first appearance
    (top row, then bottom row)."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        if not self.top or not self.bottom:
            raise ValueError("both rows must be nonempty")
        if len(self.top) + len(self.bottom) < 4:
            raise ValueError("need at least two letters")
        c = Counter(self.top + self.bottom)
        if any(v != 2 for v in c.values()):
            raise ValueError("every letter must appear exactly twice")

    @classmethod
    def from_rows(cls, top, bottom) -> "GenPerm":
        label = {}
        for a in list(top) + list(bottom):
            label.setdefault(a, len(label) + 1)
        return cls(tuple(label[a] for a in top), tuple(label[a] for a in bottom))

    @classmethod
    def from_perm(cls, p: Permutation) -> "GenPerm":
        return cls.from_rows(p.top, p.bottom)

    @property
    def d(self) -> int:
        return (len(self.top) + len(self.bottom)) // 2

    @property
    def d0(self) -> int:
        return len(self.top)

    @property
    def d1(self) -> int:
        return len(self.bottom)

    @property
    def word(self) -> tuple[int, ...]:
        return self.top + self.bottom

    def __getitem__(self, i: int) -> int:
        """Letter at 1-based position i in 1..2d."""
        return self.word[i - 1]

    def twin(self, i: int) -> int:
        w = self.word
        a = w[i - 1]
        for j, b in enumerate(w, 1):
            if b == a and j != i:
                return j
        raise AssertionError

    def row_of(self, i: int) -> int:
        return 0 if i <= self.d0 else 1

    def letters(self) -> range:
        return range(1, self.d + 1)

    def is_true(self) -> bool:
        return sorted(self.top) == sorted(self.bottom) and len(set(self.top)) == len(self.top)

    def to_perm(self) -> Permutation:
        from .perm_core import canonicalize
        if not self.is_true():
            raise ValueError("not a true permutation")
        return canonicalize(self.top, self.bottom)

    def __str__(self):
        return " ".join(map(str, self.top)) + " / " + " ".join(map(str, self.bottom))

    def __repr__(self):
        return f"GenPerm({self})"


def parse_gen(text: str) -> GenPerm:
    parts = text.split("/")
    if len(parts) != 2:
        raise ValueError(f"expected 'top / bottom', got {text!r}")
    return GenPerm.from_rows(parts[0].split(), parts[1].split())


def d_sign(p: GenPerm, letter) -> str:
    """'+' if both occurrences of ``letter`` sit in one row."""
    if letter not in p.top and letter not in p.bottom:
        raise KeyError(letter)
    return "+" if p.top.count(letter) == 2 or p.bottom.count(letter) == 2 else "-"


def letter_split(p: GenPerm) -> tuple[set, set, set]:
    """Letters doubled on top, mixed, doubled on bottom."""
    c0, c1 = Counter(p.top), Counter(p.bottom)
    a0 = {a for a, v in c0.items() if v == 2}
    a1 = {a for a, v in c1.items() if v == 2}
    return a0, set(p.letters()) - a0 - a1, a1


def is_proper(p: GenPerm) -> bool:
    a0, _, a1 = letter_split(p)
    return bool(a0) == bool(a1)


def witness_lengths(p: GenPerm) -> dict[int, Fraction] | None:
    """Positive lengths with equal row sums, or None when improper."""
    if not is_proper(p):
        return None
    a0, _, a1 = letter_split(p)
    lam = {}
    for a in p.letters():
        if a in a0:
            lam[a] = Fraction(1, len(a0))
        elif a in a1:
            lam[a] = Fraction(1, len(a1))
        else:
            lam[a] = Fraction(1)
    return lam


def row_sums(p: GenPerm, lam) -> tuple:
    return sum(lam[a] for a in p.top), sum(lam[a] for a in p.bottom)


def corner_decomposition(p: GenPerm):
    """Return a reducing (A, B, C, D) or None."""
    top, bot = p.top, p.bottom
    alphabet = set(p.letters())

    def prefixes(row):
        out, seen = [(0, frozenset())], set()
        for k, a in enumerate(row, 1):
            if a in seen:
                break
            seen.add(a)
            out.append((k, frozenset(seen)))
        return out

    f1s, f2s = prefixes(top), prefixes(top[::-1])
    f3s, f4s = prefixes(bot), prefixes(bot[::-1])
    kinds = {frozenset({1, 2}): 0, frozenset({1, 3}): 1, frozenset({2, 4}): 2, frozenset({3, 4}): 3}
    for (n1, f1), (n2, f2), (n3, f3), (n4, f4) in product(f1s, f2s, f3s, f4s):
        if n1 + n2 > len(top) or n3 + n4 > len(bot):
            continue
        empty = [n1 == 0, n2 == 0, n3 == 0, n4 == 0]
        ne = sum(empty)
        if not (ne == 0 or (ne == 1 and (empty[0] or empty[2]))
                or (ne == 2 and ((empty[0] and empty[2]) or (empty[1] and empty[3])))):
            continue
        parts = [set(), set(), set(), set()]
        ok = True
        for a in f1 | f2 | f3 | f4:
            member = frozenset(k for k, f in enumerate((f1, f2, f3, f4), 1) if a in f)
            if member not in kinds:
                ok = False
                break
            parts[kinds[member]].add(a)
        if not ok or not any(parts) or any(x == alphabet for x in parts):
            continue
        return tuple(frozenset(x) for x in parts)
    return None


def is_irreducible_gen(p: GenPerm) -> bool:
    if not is_proper(p):
        raise ValueError(f"{p} is not proper")
    return corner_decomposition(p) is None


def inverse_gen(p: GenPerm) -> GenPerm:
    return GenPerm.from_rows(p.bottom, p.top)


def is_self_inverse_gen(p: GenPerm) -> bool:
    return p.d0 == p.d1 and inverse_gen(p) == p


def _check(p: GenPerm):
    if not is_proper(p):
        raise ValueError(f"{p} is not proper")
    if not is_irreducible_gen(p):
        raise ReducibleError(f"{p} is reducible")


def _raw_move(p: GenPerm, eps: int) -> tuple[list, int]:
    """The rewritten position word and new top-row length."""
    w, d0, n = list(p.word), p.d0, 2 * p.d
    if eps == 0:
        t = p.twin(d0)
        last = w.pop()
        if t > d0:
            w.insert(t, last)
            return w, d0
        w.insert(t - 1, last)
        return w, d0 + 1
    if eps == 1:
        t = p.twin(n)
        if t < d0:
            a = w.pop(d0 - 1)
            w.insert(t, a)
            return w, d0
        a = w.pop(d0 - 1)
        w.insert(t - 2, a)
        return w, d0 - 1
    raise ValueError("move type must be 0 or 1")


def gen_rauzy_move(p: GenPerm, eps: int, check: bool = True) -> GenPerm | None:
    """Move of type ``eps``, or None when the result would be improper."""
    if check:
        _check(p)
    w, d0 = _raw_move(p, eps)
    if d0 == 0 or d0 == len(w):
        return None
    q = GenPerm.from_rows(w[:d0], w[d0:])
    return q if is_proper(q) else None


@dataclass(frozen=True)
class GenGraph:
    vertices: tuple[GenPerm, ...]
    edges: tuple[tuple[GenPerm, GenPerm, int], ...]

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, p):
        return p in set(self.vertices)

    def successors(self, p) -> dict[int, GenPerm]:
        return {t: q for (s, q, t) in self.edges if s == p}


def _gen_step(x):
    for t in (0, 1):
        y = gen_rauzy_move(x, t, check=False)
        if y is not None:
            yield t, y


def enumerate_gen_class(p: GenPerm, cap: int = DEFAULT_CAP) -> GenGraph:
    _check(p)
    order, edges = bfs(p, _gen_step, cap)
    return GenGraph(tuple(sorted(order)), tuple(sorted(edges, key=lambda e: (e[0], e[2]))))


@dataclass(frozen=True, order=True)
class GenSignature:
    """Order of the marked singularity plus the other orders (descending)."""

    marked: int
    rest: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rest", tuple(sorted(self.rest, reverse=True)))
        if min(self.orders) < -1:
            raise ValueError("orders must be >= -1")
        if (self.total + 4) % 4:
            raise ValueError(f"sum of orders {self.total} is not 4g-4")

    @property
    def orders(self) -> tuple[int, ...]:
        return (self.marked,) + self.rest

    @property
    def total(self) -> int:
        return sum(self.orders)

    @property
    def genus(self) -> int:
        return (self.total + 4) // 4

    def __str__(self):
        out = [str(self.marked)]
        for v, k in sorted(Counter(self.rest).items(), reverse=True):
            out.append(f"{v}^{k}" if k > 1 else str(v))
        return "(" + ",".join(out) + ")"


def parse_gen_signature(text: str) -> GenSignature:
    orders = parse_orders(text)
    return GenSignature(orders[0], tuple(orders[1:]))


def vertex_classes(p: GenPerm) -> tuple[dict, list[int], int]:
    """Singularity index of every interior vertex, the order of each
    singularity and the index of the marked one.

    Interior vertices are keyed ``(row, k)``: the point after the k-th
    segment of that row."""
    d0, n = p.d0, 2 * p.d
    dsu = _DSU()
    for i in range(1, n):
        if i != d0:
            dsu.union((i, "R"), (i + 1, "L"))
    dsu.union((1, "L"), (d0 + 1, "L"))
    dsu.union((d0, "R"), (n, "R"))
    flip = {"L": "R", "R": "L"}
    for i in range(1, n + 1):
        j = p.twin(i)
        same_row = p.row_of(i) == p.row_of(j)
        for s in "LR":
            dsu.union((i, s), (j, flip[s] if same_row else s))
    index = {}
    for i in range(1, n + 1):
        for s in "LR":
            index.setdefault(dsu.find((i, s)), len(index))
    counts = [0] * len(index)
    vertex = {}
    for i in range(1, n):
        if i != d0:
            row, k = (0, i) if i < d0 else (1, i - d0)
            c = index[dsu.find((i, "R"))]
            vertex[(row, k)] = c
            counts[c] += 1
    marked = index[dsu.find((1, "L"))]
    return vertex, [c - 2 for c in counts], marked


def gen_signature(p: GenPerm) -> GenSignature:
    _check(p)
    _, orders, marked = vertex_classes(p)
    return GenSignature(orders[marked], tuple(orders[:marked] + orders[marked + 1:]))


def gen_genus(p: GenPerm) -> int:
    _check(p)
    _, orders, _ = vertex_classes(p)
    chi = len(orders) - p.d + 1
    g, r = divmod(2 - chi, 2)
    if r or sum(orders) != 4 * g - 4:
        raise AssertionError(f"Euler characteristic and orders disagree for {p}")
    return g


def self_inverse_exists(sig: GenSignature) -> bool:
    if sig.marked % 2:
        return False
    c = Counter(sig.orders)
    return all(k % 2 == 0 for v, k in c.items() if v % 2)


def gen_perms(d: int, d0: int | None = None):
    """All canonical generalized permutations with d letters."""
    if d < 2:
        return
    seen = set()
    splits = [d0] if d0 is not None else range(1, 2 * d)
    for s in splits:
        for w in _canonical_words(d):
            p = GenPerm(tuple(w[:s]), tuple(w[s:]))
            if p not in seen:
                seen.add(p)
                yield p


def _canonical_words(d: int):
    """Words of length 2d using 1..d twice each, first occurrences increasing."""
    n = 2 * d
    word = [0] * n
    count = [0] * (d + 2)

    def rec(i, nxt):
        if i == n:
            yield tuple(word)
            return
        for a in range(1, nxt):
            if count[a] == 1:
                count[a] = 2
                word[i] = a
                yield from rec(i + 1, nxt)
                count[a] = 1
        if nxt <= d:
            count[nxt] = 1
            word[i] = nxt
            yield from rec(i + 1, nxt + 1)
            count[nxt] = 0
    yield from rec(0, 1)
