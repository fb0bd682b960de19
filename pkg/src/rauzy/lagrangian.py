"""Vertical cycles of a permutation and their span in homology.

The letters are acted on by ``alpha -> position of alpha in the bottom row``
(the top row is 1..d). Each orbit B gives an indicator vector e_B and its
image v_B = Omega e_B; the span of the v_B is always isotropic, and the
permutation is Lagrangian when that span has dimension equal to the genus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .invariants import genus
from .perm_core import Permutation, is_irreducible, is_self_inverse, omega


@dataclass(frozen=True)
class OrbitDecomposition:
    action: tuple[int, ...]              # action[a - 1] is the image of letter a
    orbits: tuple[tuple[int, ...], ...]  # sorted by smallest letter
    omega: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.action)

    def of_size(self, k: int) -> list[tuple[int, ...]]:
        return [b for b in self.orbits if len(b) == k]

    def indicator(self, block) -> list[int]:
        e = [0] * self.d
        for a in block:
            e[a - 1] = 1
        return e

    def image(self, block) -> list[int]:
        """v_B = Omega e_B."""
        return [sum(row[a - 1] for a in block) for row in self.omega]

    def span_vectors(self, k: int | None = None) -> list[list[int]]:
        blocks = self.orbits if k is None else self.of_size(k)
        return [self.image(b) for b in blocks]


def orbits(p: Permutation) -> OrbitDecomposition:
    q = p.positions1()
    action = tuple(q[a] for a in range(1, p.d + 1))
    seen, out = set(), []
    for a in range(1, p.d + 1):
        if a in seen:
            continue
        cyc, b = [], a
        while b not in seen:
            seen.add(b)
            cyc.append(b)
            b = action[b - 1]
        out.append(tuple(sorted(cyc)))
    return OrbitDecomposition(action, tuple(out), tuple(map(tuple, omega(p))))


def intersection(p: Permutation | OrbitDecomposition, u, v) -> int:
    """omega(Omega u, Omega v) = u^t Omega v."""
    m = p.omega if isinstance(p, OrbitDecomposition) else omega(p)
    if len(u) != len(m) or len(v) != len(m):
        raise ValueError(f"vectors must have length {len(m)}")
    return sum(u[i] * m[i][j] * v[j] for i in range(len(m)) for j in range(len(m)) if u[i] and v[j])


def rank(vectors) -> int:
    """Rank over the rationals by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _check(p: Permutation) -> None:
    if not is_irreducible(p):
        raise ValueError(f"{p} is reducible")


def is_isotropic(p: Permutation) -> bool:
    _check(p)
    o = orbits(p)
    es = [o.indicator(b) for b in o.orbits]
    return all(intersection(o, u, v) == 0 for i, u in enumerate(es) for v in es[i + 1:])


def is_lagrangian(p: Permutation) -> bool:
    _check(p)
    return rank(orbits(p).span_vectors()) == genus(p)


def is_transposition_lagrangian(p: Permutation) -> bool:
    _check(p)
    if not is_self_inverse(p):
        raise ValueError(f"{p} is not self-inverse")
    return rank(orbits(p).span_vectors(2)) == genus(p)


def report(p: Permutation) -> dict:
    """Everything the command line prints about p."""
    o = orbits(p)
    out = {
        "orbits": [list(b) for b in o.orbits],
        "span": o.span_vectors(),
        "rank": rank(o.span_vectors()),
        "genus": genus(p),
        "isotropic": is_isotropic(p),
        "lagrangian": is_lagrangian(p),
    }
    if is_self_inverse(p):
        out["transposition_rank"] = rank(o.span_vectors(2))
        out["transposition_lagrangian"] = out["transposition_rank"] == out["genus"]
    return out
