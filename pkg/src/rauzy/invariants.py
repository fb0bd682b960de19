"""Signature, genus, spin parity, hyperellipticity and class keys."""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field

from .perm_core import (
    Permutation,
    ReducibleError,
    canonicalize,
    is_irreducible,
    is_standard,
    move_rows,
    omega,
    reversal,
)

HYP, ODD, EVEN, NONHYP, NONE = "hyperelliptic", "odd", "even", "nonhyperelliptic", "none"
TYPES = (HYP, ODD, EVEN, NONHYP, NONE)
_TYPE_ALIASES = {"hyp": HYP, "nonhyp": NONHYP, "-": NONE}


def normalize_type(name: str) -> str:
    name = name.strip().lower()
    name = _TYPE_ALIASES.get(name, name)
    if name not in TYPES:
        raise ValueError(f"unknown component type {name!r}")
    return name


@dataclass(frozen=True, order=True)
class Signature:
    """Marked singularity degree plus the remaining degrees (descending)."""

    marked: int
    rest: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rest", tuple(sorted(self.rest, reverse=True)))
        if self.marked < 0 or any(r < 0 for r in self.rest):
            raise ValueError("degrees must be non-negative")
        if self.total % 2:
            raise ValueError("sum of degrees must be even")

    @property
    def total(self) -> int:
        return self.marked + sum(self.rest)

    @property
    def genus(self) -> int:
        return 1 + self.total // 2

    @property
    def degrees(self) -> tuple[int, ...]:
        return (self.marked,) + self.rest

    def __str__(self):
        if not self.rest:
            return f"({self.marked})"
        return f"({self.marked}; {', '.join(map(str, self.rest))})"


def parse_orders(text: str) -> list[int]:
    """Parse ``"(1; 1,2)"`` or ``"(0,1^2,-1^4)"`` into a flat list, marked first."""
    body = text.strip().replace("−", "-").strip("()")
    out = []
    for tok in re.split(r"[;,\s]+", body):
        if not tok:
            continue
        m = re.fullmatch(r"(-?\d+)(?:\^(\d+))?", tok)
        if not m:
            raise ValueError(f"bad signature entry {tok!r} in {text!r}")
        out += [int(m.group(1))] * int(m.group(2) or 1)
    if not out:
        raise ValueError("empty signature")
    return out


def parse_signature(text: str) -> Signature:
    orders = parse_orders(text)
    return Signature(orders[0], tuple(orders[1:]))


@dataclass(frozen=True, order=True)
class ClassKey:
    signature: Signature
    type: str

    def __str__(self):
        return f"({self.signature}, {self.type})"


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def singularity_classes(p: Permutation) -> tuple[list[int], int, dict]:
    """Degrees of all singularities, the index of the marked one, and the
    map from endpoint token ``(letter, row, side)`` to singularity index."""
    if not is_irreducible(p):
        raise ReducibleError(f"{p} is reducible")
    rows = (p.top, p.bottom)
    dsu = _DSU()
    for r, row in enumerate(rows):
        for a, b in zip(row, row[1:]):
            dsu.union((a, r, "R"), (b, r, "L"))
    dsu.union((rows[0][0], 0, "L"), (rows[1][0], 1, "L"))
    dsu.union((rows[0][-1], 0, "R"), (rows[1][-1], 1, "R"))
    for a in p.top:
        for side in "LR":
            dsu.union((a, 0, side), (a, 1, side))
    roots = {}
    for a in p.top:
        for r in (0, 1):
            for side in "LR":
                roots.setdefault(dsu.find((a, r, side)), len(roots))
    tokens = {(a, r, s): roots[dsu.find((a, r, s))] for a in p.top for r in (0, 1) for s in "LR"}
    counts = [0] * len(roots)
    for a in p.top[1:]:
        counts[tokens[(a, 0, "L")]] += 1
    marked = tokens[(p.top[0], 0, "L")]
    return [c - 1 for c in counts], marked, tokens


def signature(p: Permutation) -> Signature:
    degrees, marked, _ = singularity_classes(p)
    return Signature(degrees[marked], tuple(degrees[:marked] + degrees[marked + 1:]))


def genus(p: Permutation) -> int:
    return signature(p).genus


@dataclass
class SpinWorkspace:
    """GF(2) reduction of the intersection form to a symplectic basis.

    Cycles are bitmasks over the original letters; ``pairs`` collects the
    extracted (alpha, beta) with their phi values.
    """

    matrix: list[int]
    phi: list[int]
    cycles: list[int]
    active: list[int]
    pairs: list[tuple[int, int, int, int]] = field(default_factory=list)

    @classmethod
    def from_matrix(cls, m: list[list[int]], phi=None):
        n = len(m)
        rows = [sum(1 << j for j in range(n) if m[i][j] % 2) for i in range(n)]
        return cls(rows, list(phi) if phi is not None else [1] * n,
                   [1 << i for i in range(n)], list(range(n)))

    def _meets(self, k, l):
        return (self.matrix[k] >> l) & 1

    def next_pair(self, rng: random.Random | None = None):
        cands = [(i, j) for x, i in enumerate(self.active) for j in self.active[x + 1:]
                 if self._meets(i, j)]
        if not cands:
            return None
        return rng.choice(cands) if rng else cands[0]

    def step(self, i: int, j: int):
        """Take (c_i, c_j) as (alpha, beta) and make the others orthogonal to them."""
        rest = [k for k in self.active if k not in (i, j)]
        ki = {k: self._meets(k, i) for k in rest}
        kj = {k: self._meets(k, j) for k in rest}
        new_rows = {}
        for k in rest:
            row = self.matrix[k]
            for l in rest:
                flip = (ki[k] & kj[l]) ^ (kj[k] & ki[l])
                if flip:
                    row ^= 1 << l
            new_rows[k] = row
        for k in rest:
            self.matrix[k] = new_rows[k]
            if kj[k]:
                self.cycles[k] ^= self.cycles[i]
            if ki[k]:
                self.cycles[k] ^= self.cycles[j]
            self.phi[k] ^= (kj[k] & self.phi[i]) ^ (ki[k] & self.phi[j]) ^ (ki[k] & kj[k])
        self.pairs.append((i, j, self.phi[i], self.phi[j]))
        self.active = rest

    def run(self, rng: random.Random | None = None) -> int:
        while (pair := self.next_pair(rng)) is not None:
            self.step(*pair)
        return self.arf()

    def arf(self) -> int:
        return sum(a * b for _, _, a, b in self.pairs) % 2


def spin_workspace(p: Permutation, rng: random.Random | None = None) -> SpinWorkspace:
    ws = SpinWorkspace.from_matrix(omega(p))
    ws.run(rng)
    return ws


def spin_parity(p: Permutation, rng: random.Random | None = None) -> int | None:
    if any(x % 2 for x in signature(p).degrees):
        return None
    return spin_workspace(p, rng).arf()


def interior_blocks(p: Permutation) -> list[tuple[int, int]]:
    """Maximal-refinement intervals [a, b] of interior positions that hold
    the same letters in both rows, for a standard permutation."""
    blocks, start, hi = [], 2, 0
    for k in range(2, p.d):
        hi = max(hi, p.line[k - 1])
        if hi == k:
            blocks.append((start, k))
            start = k + 1
    return blocks


def block_phi(p: Permutation, a: int, b: int) -> int:
    m = omega(p)
    sub = [row[a - 1:b] for row in m[a - 1:b]]
    ws = SpinWorkspace.from_matrix(sub, phi=[0] * (b - a + 1))
    return ws.run()


def spin_parity_standard(p: Permutation) -> int | None:
    if not is_standard(p):
        raise ValueError(f"{p} is not standard")
    if any(x % 2 for x in signature(p).degrees):
        return None
    return (1 + sum(block_phi(p, a, b) for a, b in interior_blocks(p))) % 2


def _apply(p: Permutation, eps: int, times: int) -> Permutation:
    top, bottom = list(p.top), list(p.bottom)
    for _ in range(times):
        top, bottom = move_rows(top, bottom, eps)
    return canonicalize(top, bottom)


def standardize(p: Permutation) -> Permutation:
    """Reach a standard permutation of the class by the explicit move schedule."""
    if not is_irreducible(p):
        raise ReducibleError(f"{p} is reducible")
    d = p.d
    while not is_standard(p):
        q = p.positions1()
        a0, a1 = d, p.line[-1]
        n = min(a1, q[a0])
        if n == 1:
            if q[a0] == 1:
                p = _apply(p, 0, d - q[p.top[0]])
            else:
                p = _apply(p, 1, d - p.line[0])
            continue
        if n == a1:
            # type 1 on gamma with bottom position < n < top position
            gamma = next(g for g in range(n + 1, d + 1) if q[g] < n)
            p = _apply(p, 1, d - gamma)
        else:
            gamma = next(g for g in range(1, n) if q[g] > n)
            p = _apply(p, 0, d - q[gamma])
    return p


def _forget(p: Permutation, letter: int) -> Permutation:
    return canonicalize([a for a in p.top if a != letter], [a for a in p.bottom if a != letter])


def _removable_letter(p: Permutation) -> int | None:
    d, line = p.d, p.line
    q = p.positions1()
    for g in range(1, d):
        if q[g + 1] == q[g] + 1:
            return g + 1
    if line[1] == 2:
        return 2
    if line[d - 2] == d - 1:
        return d - 1
    return None


def reduce_removable(p: Permutation) -> Permutation:
    """Forget removable singularities of a standard permutation."""
    if not is_standard(p):
        raise ValueError(f"{p} is not standard")
    while p.d > 2 and 0 in signature(p).degrees:
        letter = _removable_letter(p)
        if letter is None:
            raise AssertionError(f"no forget rule applies to {p}")
        p = _forget(p, letter)
    return p


def is_hyperelliptic_class(p: Permutation) -> bool:
    q = reduce_removable(standardize(p))
    return q == reversal(q.d)


def class_key(p: Permutation) -> ClassKey:
    sig = signature(p)
    if is_hyperelliptic_class(p):
        return ClassKey(sig, HYP)
    if all(x % 2 == 0 for x in sig.degrees):
        phi = spin_parity(reduce_removable(standardize(p)))
        return ClassKey(sig, ODD if phi else EVEN)
    nonzero = sorted(x for x in sig.degrees if x)
    if len(nonzero) == 2 and nonzero[0] == nonzero[1] and nonzero[0] % 2 and nonzero[0] >= 3:
        return ClassKey(sig, NONHYP)
    return ClassKey(sig, NONE)


def degree_counts(sig: Signature) -> Counter:
    return Counter(sig.degrees)
