"""True permutations in one-line (monodromy) form and Rauzy moves on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Iterator, Sequence


class ReducibleError(ValueError):
    """Raised when an operation requires an irreducible permutation."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A pair of rows relabeled so the top row reads 1..d.

    ``line[k]`` is the letter at bottom position k+1, i.e. the tuple
    ``(pi^-1(1), ..., pi^-1(d))``.
    """

    line: tuple[int, ...]

    def __post_init__(self):
        d = len(self.line)
        if d < 2:
            raise ValueError("need at least two letters")
        if sorted(self.line) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {self.line}")

    @property
    def d(self) -> int:
        return len(self.line)

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(range(1, self.d + 1))

    @property
    def bottom(self) -> tuple[int, ...]:
        return self.line

    def pos0(self, letter: int) -> int:
        """1-based position of ``letter`` in the top row."""
        return letter

    def pos1(self, letter: int) -> int:
        """1-based position of ``letter`` in the bottom row."""
        return self.line.index(letter) + 1

    def positions1(self) -> list[int]:
        """List indexed by letter (index 0 unused) of bottom positions."""
        out = [0] * (self.d + 1)
        for k, a in enumerate(self.line, 1):
            out[a] = k
        return out

    def __str__(self) -> str:
        return " ".join(map(str, self.line))

    def __repr__(self) -> str:
        return f"Permutation({self.line})"


def canonicalize(top: Sequence, bottom: Sequence) -> Permutation:
    """Relabel the pair so the top row is 1..d."""
    top, bottom = list(top), list(bottom)
    if len(set(top)) != len(top):
        raise ValueError("duplicate letter in top row")
    if len(set(bottom)) != len(bottom):
        raise ValueError("duplicate letter in bottom row")
    if set(top) != set(bottom):
        raise ValueError("rows use different letters")
    label = {a: k for k, a in enumerate(top, 1)}
    return Permutation(tuple(label[a] for a in bottom))


def canonicalize_with_map(top: Sequence, bottom: Sequence) -> tuple[Permutation, dict]:
    """Like :func:`canonicalize` but also return the old-letter -> new-letter map."""
    label = {a: k for k, a in enumerate(top, 1)}
    return canonicalize(top, bottom), label


def parse(text: str) -> Permutation:
    """Parse ``"3 2 1"`` or ``"a b c / c b a"``."""
    if "/" in text:
        parts = text.split("/")
        if len(parts) != 2:
            raise ValueError("expected exactly one '/' separating rows")
        return canonicalize(parts[0].split(), parts[1].split())
    tokens = text.replace(",", " ").replace("(", " ").replace(")", " ").split()
    try:
        line = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ValueError(f"bad one-line permutation {text!r}") from exc
    return Permutation(line)


def perm(*line: int) -> Permutation:
    return Permutation(tuple(line))


def inverse(p: Permutation) -> Permutation:
    return canonicalize(p.bottom, p.top)


def reversal(d: int) -> Permutation:
    return Permutation(tuple(range(d, 0, -1)))


def is_self_inverse(p: Permutation) -> bool:
    return inverse(p) == p


def is_standard(p: Permutation) -> bool:
    return p.line[0] == p.d and p.line[-1] == 1


def is_irreducible(p: Permutation) -> bool:
    m = 0
    for k, a in enumerate(p.line[:-1], 1):
        m = max(m, a)
        if m == k:
            return False
    return True


def irreducibles(d: int) -> Iterator[Permutation]:
    """All irreducible permutations on d letters, in lexicographic order."""
    for line in _permutations(range(1, d + 1)):
        p = Permutation(line)
        if is_irreducible(p):
            yield p


def omega(p: Permutation) -> list[list[int]]:
    """The d x d matrix Omega, indexed by letter - 1."""
    d = p.d
    q = p.positions1()
    m = [[0] * d for _ in range(d)]
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            if q[a] > q[b]:
                m[a - 1][b - 1] = 1
                m[b - 1][a - 1] = -1
    return m


def move_rows(top: list, bottom: list, eps: int) -> tuple[list, list]:
    """Apply a Rauzy move of type ``eps`` to explicit rows (letters arbitrary).

    Type 0: the top-last letter wins and the bottom-last letter is moved to
    sit right after it in the bottom row. Type 1 is the mirror image.
    """
    top, bottom = list(top), list(bottom)
    if eps == 0:
        winner, loser = top[-1], bottom.pop()
        bottom.insert(bottom.index(winner) + 1, loser)
    elif eps == 1:
        winner, loser = bottom[-1], top.pop()
        top.insert(top.index(winner) + 1, loser)
    else:
        raise ValueError("move type must be 0 or 1")
    return top, bottom


def _check_irreducible(p: Permutation):
    if not is_irreducible(p):
        raise ReducibleError(f"{p} is reducible")


def rauzy_move(p: Permutation, eps: int) -> Permutation:
    _check_irreducible(p)
    return canonicalize(*move_rows(p.top, p.bottom, eps))


def rauzy_premove(p: Permutation, eps: int) -> Permutation:
    """The unique permutation sent to ``p`` by a move of type ``eps``."""
    _check_irreducible(p)
    top, bottom = list(p.top), list(p.bottom)
    if eps == 0:
        k = bottom.index(top[-1]) + 1
        bottom.append(bottom.pop(k))
    elif eps == 1:
        k = top.index(bottom[-1]) + 1
        top.append(top.pop(k))
    else:
        raise ValueError("move type must be 0 or 1")
    return canonicalize(top, bottom)
