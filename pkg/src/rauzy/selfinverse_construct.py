"""Block words and self-inverse representatives of true Rauzy classes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .invariants import (
    EVEN,
    HYP,
    NONE,
    NONHYP,
    ODD,
    ClassKey,
    Signature,
    class_key,
)
from .perm_core import Permutation, canonicalize, is_self_inverse, reversal

SPACE, EVEN_B, ODD_B, ODD22, PAIR = "SPACE", "EVEN", "ODD", "ODD22", "PAIR"


class UnsupportedKey(ValueError):
    """No construction rule produces a permutation with this class key."""


@dataclass(frozen=True)
class Block:
    kind: str
    params: tuple[int, ...] = ()

    def __str__(self):
        return self.kind + (f"({','.join(map(str, self.params))})" if self.params else "")

    def columns(self, fresh) -> list[tuple[int, int]]:
        """Render as a list of (top, bottom) columns using letters from ``fresh``."""
        return render_block(self.kind, *self.params, fresh=fresh)


def _even(n2: int, fresh) -> list[tuple[int, int]]:
    cols = []
    for _ in range(n2 // 2):
        a, b = next(fresh), next(fresh)
        cols += [(a, b), (b, a)]
    return cols


def _rev(n: int, fresh) -> list[tuple[int, int]]:
    letters = [next(fresh) for _ in range(n)]
    return list(zip(letters, reversed(letters)))


def render_block(kind: str, *params: int, fresh=None) -> list[tuple[int, int]]:
    fresh = fresh if fresh is not None else count(1)
    if kind == SPACE:
        a = next(fresh)
        return [(a, a)]
    if kind == EVEN_B:
        (n2,) = params
        if n2 < 0 or n2 % 2:
            raise ValueError(f"EVEN needs a non-negative even size, got {n2}")
        return _even(n2, fresh)
    if kind == ODD_B:
        (n2,) = params
        if n2 < 4 or n2 % 2:
            raise ValueError(f"ODD needs an even size >= 4, got {n2}")
        return _even(n2 - 4, fresh) + _rev(4, fresh)
    if kind == ODD22:
        return _rev(5, fresh)
    if kind == PAIR:
        m, n = params
        if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
            raise ValueError(f"PAIR needs two odd positive degrees, got {params}")
        return _even(m - 1, fresh) + _rev(3, fresh) + _even(n - 1, fresh)
    raise ValueError(f"unknown block kind {kind!r}")


def render_word(blocks) -> list[tuple[int, int]]:
    fresh = count(1)
    cols = []
    for b in blocks:
        cols += b.columns(fresh)
    return cols


def assemble_columns(cols: list[tuple[int, int]]) -> Permutation:
    """Wrap interior columns with the outer letters A ... B / B ... A."""
    a, b = "A", "B"
    top = [a] + [c[0] for c in cols] + [b]
    bottom = [b] + [c[1] for c in cols] + [a]
    return canonicalize(top, bottom)


def assemble(blocks) -> Permutation:
    return assemble_columns(render_word(blocks))


def interior_columns(p: Permutation) -> list[tuple[int, int]]:
    """Interior columns of a standard permutation."""
    return list(zip(p.top[1:-1], p.line[1:-1]))


# Self-inverse representatives for genus <= 3, by (marked, rest, type).
LOW_GENUS = {
    ((0,), HYP): (2, 1),
    ((0, 0), HYP): (3, 2, 1),
    ((2,), HYP): (4, 3, 2, 1),
    ((1, 1), HYP): (5, 4, 3, 2, 1),
    ((4,), HYP): (6, 5, 4, 3, 2, 1),
    ((4,), ODD): (6, 3, 2, 5, 4, 1),
    ((3, 1), NONE): (7, 4, 3, 2, 6, 5, 1),
    ((1, 3), NONE): (7, 3, 2, 6, 5, 4, 1),
    ((2, 2), HYP): (7, 6, 5, 4, 3, 2, 1),
    ((2, 2), ODD): (7, 3, 2, 4, 6, 5, 1),
    ((1, 2, 1), NONE): (8, 3, 2, 4, 7, 6, 5, 1),
    ((2, 1, 1), NONE): (8, 4, 3, 2, 5, 7, 6, 1),
    ((1, 1, 1, 1), NONE): (9, 4, 3, 2, 5, 8, 7, 6, 1),
}


def _low_genus(marked: int, rest: list[int], kind: str):
    for (degs, t), line in LOW_GENUS.items():
        if t == kind and degs[0] == marked and sorted(degs[1:]) == sorted(rest):
            return Permutation(line)
    return None


def _pair_blocks(degs: list[int]) -> list[Block]:
    """``degs`` listed right to left (marked first)."""
    return [Block(PAIR, (degs[i + 1], degs[i])) for i in range(0, len(degs), 2)]


def _odd_word(marked: int, rest: list[int]) -> list[Block]:
    """Interior word for signatures with some odd degree (right to left)."""
    odds = sorted((x for x in rest if x % 2), reverse=True)
    evens = sorted((x for x in rest if x % 2 == 0), reverse=True)
    units: list[Block] = []  # right to left
    if marked % 2:
        units += _pair_blocks([marked] + odds)
        units += [Block(EVEN_B, (x,)) for x in evens]
    else:
        units += [Block(EVEN_B, (x,)) for x in [marked] + evens]
        units += _pair_blocks(odds)
    return _join(units)


def _join(units_right_to_left: list[Block]) -> list[Block]:
    word = []
    for u in reversed(units_right_to_left):
        if word:
            word.append(Block(SPACE))
        word.append(u)
    return word


def _even_word(marked: int, rest: list[int], kind: str) -> list[Block]:
    degs = [marked] + sorted(rest, reverse=True)  # right to left
    if kind == ODD:
        return _join([Block(EVEN_B, (x,)) for x in degs])
    if all(x == 2 for x in degs):
        if len(degs) < 2:
            raise UnsupportedKey("even spin with a single degree-2 singularity")
        units = [Block(ODD22)] + [Block(EVEN_B, (2,))] * (len(degs) - 2)
        return _join(units)
    j = next(i for i, x in enumerate(degs) if x > 2)
    units = [Block(ODD_B if i == j else EVEN_B, (x,)) for i, x in enumerate(degs)]
    return _join(units)


def _core(marked: int, rest: list[int], kind: str) -> list[tuple[int, int]]:
    """Interior columns for a signature without degree-zero entries."""
    g = 1 + (marked + sum(rest)) // 2
    if g <= 3:
        p = _low_genus(marked, rest, kind)
        if p is None:
            raise UnsupportedKey(f"no genus {g} class with degrees {[marked] + rest} and type {kind}")
        return interior_columns(p)
    if kind == HYP:
        degs = sorted([marked] + rest)
        if degs == [2 * g - 2]:
            return interior_columns(reversal(2 * g))
        if degs == [g - 1, g - 1]:
            return interior_columns(reversal(2 * g + 1))
        raise UnsupportedKey("no hyperelliptic component with this signature")
    if any(x % 2 for x in [marked] + rest):
        if kind not in (NONE, NONHYP):
            raise UnsupportedKey(f"type {kind} needs even degrees")
        return render_word(_odd_word(marked, rest))
    if kind not in (ODD, EVEN):
        raise UnsupportedKey(f"type {kind} with even degrees at genus {g}")
    return render_word(_even_word(marked, rest, kind))


def construct_columns(key: ClassKey) -> list[tuple[int, int]]:
    sig = key.signature
    zeros = sig.rest.count(0) + (sig.marked == 0)
    nonzero = [x for x in sig.degrees if x]
    if not nonzero:
        return render_word([Block(SPACE)] * (zeros - 1))
    if sig.marked:
        core = _core(sig.marked, [x for x in sig.rest if x], key.type)
        return render_word([Block(SPACE)] * zeros) + _shift(core, zeros)
    top = max(nonzero)
    rest = list(nonzero)
    rest.remove(top)
    core = _core(top, rest, key.type)
    fresh = count(max([0] + [c[0] for c in core]) + 1)
    return core + [(a, a) for a in (next(fresh) for _ in range(zeros))]


def _shift(cols, k):
    return [(a + k, b + k) for a, b in cols]


def self_inverse_for(key: ClassKey) -> Permutation:
    p = assemble_columns(construct_columns(key))
    if not is_self_inverse(p) or class_key(p) != key:
        raise UnsupportedKey(f"no construction yields {key}")
    return p


def self_inverse_for_signature(sig: Signature, kind: str | None = None) -> Permutation:
    """Convenience wrapper: pick the default type when none is given."""
    if kind is None:
        kind = NONE if any(x % 2 for x in sig.degrees) else ODD
        if sig.genus <= 2 or all(x == 0 for x in sig.degrees):
            kind = HYP
    return self_inverse_for(ClassKey(sig, kind))
