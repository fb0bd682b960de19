"""Interval exchanges, linear involutions and Rauzy-Veech induction on them.

Arithmetic is exact throughout (``fractions.Fraction``). Length and height
vectors are tuples indexed by ``letter - 1``. Intervals are half-open
``[a, b)`` for exchanges; linear involutions live on ``(0, L) x {0, 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .gen_perm import GenPerm, _raw_move, is_proper
from .perm_core import Permutation, canonicalize_with_map, is_irreducible, move_rows

Host = Union[Permutation, GenPerm]


class SingularPoint(ValueError):
    """The point is a discontinuity, where the map is not defined."""


class InductionUndefined(ValueError):
    """The two competing intervals have equal length."""


class ConeError(ValueError):
    def __init__(self, row: int, index: int, message: str = ""):
        super().__init__(message or f"height vector leaves the cone at row {row}, prefix {index}")
        self.row = row
        self.index = index


def lengths(values) -> tuple[Fraction, ...]:
    """Parse ``"1/2,1/3,1/6"`` or a sequence into a tuple of positive Fractions."""
    if isinstance(values, str):
        values = [v for v in values.replace(" ", ",").split(",") if v]
    out = tuple(Fraction(v) for v in values)
    return out


def _heights(values) -> tuple[Fraction, ...]:
    return lengths(values)


def _rows(p: Host) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(p.top), tuple(p.bottom)


def _check_lengths(p: Host, lam) -> None:
    if len(lam) != p.d:
        raise ValueError(f"expected {p.d} lengths, got {len(lam)}")
    if any(x <= 0 for x in lam):
        raise ValueError("lengths must be positive")
    if isinstance(p, GenPerm):
        top, bot = _rows(p)
        if sum(lam[a - 1] for a in top) != sum(lam[a - 1] for a in bot):
            raise ValueError("row sums differ")


def total(lam) -> Fraction:
    return sum(lam, Fraction(0))


# --- interval exchanges ---------------------------------------------------

def _starts(row, lam) -> dict[int, Fraction]:
    out, s = {}, Fraction(0)
    for a in row:
        out[a] = s
        s += lam[a - 1]
    return out


def translation_vector(p: Permutation, lam) -> tuple[Fraction, ...]:
    s0, s1 = _starts(p.top, lam), _starts(p.bottom, lam)
    return tuple(s1[a] - s0[a] for a in range(1, p.d + 1))


def iet_apply(p: Permutation, lam, x, strict: bool = False) -> Fraction:
    lam = lengths(lam)
    _check_lengths(p, lam)
    x = Fraction(x)
    if not 0 <= x < total(lam):
        raise ValueError(f"{x} is outside [0, {total(lam)})")
    s0, s1 = _starts(p.top, lam), _starts(p.bottom, lam)
    for a in reversed(p.top):
        if x >= s0[a]:
            if strict and x == s0[a] and a != p.top[0]:
                raise SingularPoint(f"{x} is a discontinuity")
            return x - s0[a] + s1[a]
    raise AssertionError("unreachable")


def induction_type(p: Host, lam) -> int:
    top, bot = _rows(p)
    a0, a1 = top[-1], bot[-1]
    if lam[a0 - 1] == lam[a1 - 1]:
        raise InductionUndefined(f"letters {a0} and {a1} have equal length {lam[a0 - 1]}")
    return 0 if lam[a0 - 1] > lam[a1 - 1] else 1


def _relabel(vec, mapping: dict) -> tuple:
    out = [None] * len(vec)
    for old, new in mapping.items():
        out[new - 1] = vec[old - 1]
    return tuple(out)


def _cut(vec, winner: int, loser: int) -> tuple:
    v = list(vec)
    v[winner - 1] -= v[loser - 1]
    return tuple(v)


def rv_step(p: Permutation, lam) -> tuple[Permutation, tuple[Fraction, ...]]:
    """One step of Rauzy induction on the exchange (p, lam)."""
    q, lam2, _ = _rv(p, lengths(lam), None)
    return q, lam2


def _rv(p: Permutation, lam, tau):
    _check_lengths(p, lam)
    eps = induction_type(p, lam)
    winner, loser = (p.top[-1], p.bottom[-1]) if eps == 0 else (p.bottom[-1], p.top[-1])
    top, bot = move_rows(p.top, p.bottom, eps)
    q, mapping = canonicalize_with_map(top, bot)
    lam2 = _relabel(_cut(lam, winner, loser), mapping)
    tau2 = None if tau is None else _relabel(_cut(tau, winner, loser), mapping)
    return q, lam2, tau2


def rv_step_suspension(p: Permutation, lam, tau):
    """Induction on the suspension data (p, lam, tau); returns (p', lam', tau')."""
    lam, tau = lengths(lam), _heights(tau)
    cone_violation(p, tau, raise_=True)
    return _rv(p, lam, tau)


def rv_preimage_suspension(p: Permutation, lam, tau):
    """The suspensions sent to (p, lam, tau) by one induction step, as
    ``{type: (p_prev, lam_prev, tau_prev)}``; when the heights do not sum to
    zero exactly one type survives."""
    lam, tau = lengths(lam), _heights(tau)
    out = {}
    for eps in (0, 1):
        top, bot = list(p.top), list(p.bottom)
        win_row, other = (top, bot) if eps == 0 else (bot, top)
        winner = win_row[-1]
        k = other.index(winner) + 1
        if k >= len(other):
            continue
        loser = other.pop(k)
        other.append(loser)
        q, mapping = canonicalize_with_map(top, bot)
        grow = lambda v: tuple(x + v[loser - 1] if a == winner else x
                               for a, x in enumerate(v, 1))
        lam0, tau0 = _relabel(grow(lam), mapping), _relabel(grow(tau), mapping)
        if is_irreducible(q) and cone_violation(q, tau0) is None:
            out[eps] = (q, lam0, tau0)
    return out


@dataclass
class InductionState:
    """Resumable induction chain; ``steps`` counts completed moves."""
    perm: Permutation
    lam: tuple
    tau: tuple | None = None
    steps: int = 0
    halted: bool = False

    def advance(self, n: int = 1) -> Iterator["InductionState"]:
        for _ in range(n):
            if self.halted:
                return
            try:
                eps = induction_type(self.perm, self.lam)
                self.perm, self.lam, self.tau = _rv(self.perm, self.lam, self.tau)
            except InductionUndefined:
                self.halted = True
                return
            self.steps += 1
            self.last_type = eps
            yield self


def induction_depth(p: Permutation, lam, max_steps: int) -> int | None:
    """Number of steps before induction becomes undefined, or None if it
    is still defined after ``max_steps``."""
    st = InductionState(p, lengths(lam))
    for _ in st.advance(max_steps):
        pass
    return st.steps if st.halted else None


@dataclass(frozen=True)
class KeaneViolation:
    i: int  # T^m of the left end of the i-th top interval ...
    j: int  # ... is the left end of the j-th one (j > 1)
    m: int


def keane_check(p: Permutation, lam, depth: int) -> KeaneViolation | None:
    """Search for T^m(left end of I_i) = left end of I_j, j > 1, m <= depth."""
    lam = lengths(lam)
    _check_lengths(p, lam)
    s0 = _starts(p.top, lam)
    ends = {s0[a]: k for k, a in enumerate(p.top, 1) if k > 1}
    best = None
    for i, a in enumerate(p.top, 1):
        x = s0[a]
        for m in range(1, depth + 1):
            x = iet_apply(p, lam, x)
            if x in ends:
                if best is None or m < best.m:
                    best = KeaneViolation(i, ends[x], m)
                break
    return best


# --- linear involutions ---------------------------------------------------

def _gen_starts(p: GenPerm, lam):
    """Left ends of each position's interval, 1-based positions."""
    s, out = Fraction(0), {}
    for i in range(1, 2 * p.d + 1):
        if i == p.d0 + 1:
            s = Fraction(0)
        out[i] = s
        s += lam[p[i] - 1]
    return out


def linv_apply(p: GenPerm, lam, x, eps: int) -> tuple[Fraction, int]:
    """T(x, eps) for the linear involution (p, lam)."""
    lam = lengths(lam)
    _check_lengths(p, lam)
    x = Fraction(x)
    L = sum(lam[a - 1] for a in p.top)
    if not 0 < x < L:
        raise ValueError(f"{x} is outside (0, {L})")
    start = _gen_starts(p, lam)
    lo, hi = (1, p.d0) if eps == 0 else (p.d0 + 1, 2 * p.d)
    i = max(k for k in range(lo, hi + 1) if start[k] <= x)
    if x == start[i] and i != lo:
        raise SingularPoint(f"({x}, {eps}) is a singular point")
    delta = x - start[i]
    t = p.twin(i)
    width = lam[p[t] - 1]
    if t <= p.d0:
        y, row = (start[t] + width - delta, 0) if eps == 0 else (start[t] + delta, 0)
    else:
        y, row = (start[t] + delta, 1) if eps == 0 else (start[t] + width - delta, 1)
    return y, 1 - row


def singular_points(p: GenPerm, lam) -> list[tuple[Fraction, int]]:
    """The points where T is undefined."""
    start = _gen_starts(p, lengths(lam))
    return [(start[i], 0 if i <= p.d0 else 1)
            for i in range(1, 2 * p.d + 1) if i not in (1, p.d0 + 1)]


@dataclass(frozen=True)
class Connection:
    start: tuple[Fraction, int]
    steps: int


def find_connection(p: GenPerm, lam, depth: int) -> Connection | None:
    """A singularity of T^-1 whose orbit reaches a singularity of T within
    ``depth`` steps."""
    lam = lengths(lam)
    sing = set(singular_points(p, lam))
    best = None
    for x, e in sing:
        pt = (x, 1 - e)
        for r in range(depth + 1):
            if pt in sing:
                if best is None or r < best.steps:
                    best = Connection((x, 1 - e), r)
                break
            pt = linv_apply(p, lam, *pt)
    return best


def gen_rv_step(p: GenPerm, lam) -> tuple[GenPerm, tuple[Fraction, ...]]:
    """One induction step on the linear involution (p, lam)."""
    q, lam2, _ = _gen_rv(p, lengths(lam), None)
    return q, lam2


def gen_rv_step_suspension(p: GenPerm, lam, tau):
    lam, tau = lengths(lam), _heights(tau)
    cone_violation(p, tau, raise_=True)
    return _gen_rv(p, lam, tau)


def _gen_rv(p: GenPerm, lam, tau):
    _check_lengths(p, lam)
    eps = induction_type(p, lam)
    top, bot = _rows(p)
    winner, loser = (top[-1], bot[-1]) if eps == 0 else (bot[-1], top[-1])
    w, d0 = _raw_move(p, eps)
    if d0 in (0, len(w)) or not is_proper(GenPerm.from_rows(w[:d0], w[d0:])):
        raise AssertionError(f"move {eps} on {p} is undefined for admissible lengths")
    q = GenPerm.from_rows(w[:d0], w[d0:])
    mapping, nxt = {}, 1
    for a in w:
        if a not in mapping:
            mapping[a] = nxt
            nxt += 1
    lam2 = _relabel(_cut(lam, winner, loser), mapping)
    tau2 = None if tau is None else _relabel(_cut(tau, winner, loser), mapping)
    return q, lam2, tau2


def gen_induction_depth(p: GenPerm, lam, max_steps: int) -> int | None:
    lam = lengths(lam)
    for n in range(max_steps):
        try:
            p, lam = gen_rv_step(p, lam)
        except InductionUndefined:
            return n
    return None


# --- suspensions ----------------------------------------------------------

def cone_violation(p: Host, tau, raise_: bool = False) -> tuple[int, int] | None:
    """First (row, prefix length) where tau leaves the cone, else None.
    Prefix length 0 on row 1 reports unequal row totals."""
    tau = _heights(tau)
    if len(tau) != p.d:
        raise ValueError(f"expected {p.d} heights, got {len(tau)}")
    top, bot = _rows(p)
    bad = None
    for row, seq, sign in ((0, top, 1), (1, bot, -1)):
        s = Fraction(0)
        for k, a in enumerate(seq[:-1], 1):
            s += tau[a - 1]
            if sign * s <= 0:
                bad = (row, k)
                break
        if bad:
            break
    if bad is None and sum(tau[a - 1] for a in top) != sum(tau[a - 1] for a in bot):
        bad = (1, 0)
    if bad and raise_:
        raise ConeError(*bad)
    return bad


@dataclass(frozen=True)
class Polygon:
    top: tuple[tuple[Fraction, Fraction], ...]
    bottom: tuple[tuple[Fraction, Fraction], ...]
    top_labels: tuple[int, ...]
    bottom_labels: tuple[int, ...]

    def vertices(self) -> set:
        return set(self.top) | set(self.bottom)

    def area(self) -> Fraction:
        """Shoelace area of the region between the two chains."""
        ring = list(self.top) + list(reversed(self.bottom))[1:-1]
        a = Fraction(0)
        for (x1, y1), (x2, y2) in zip(ring, ring[1:] + ring[:1]):
            a += x1 * y2 - x2 * y1
        return abs(a) / 2


@dataclass(frozen=True)
class Suspension:
    perm: Host
    lam: tuple
    tau: tuple

    def polygon(self) -> Polygon:
        return suspension_polygon(self.perm, self.lam, self.tau)


def _chain(row, lam, tau):
    pts = [(Fraction(0), Fraction(0))]
    for a in row:
        x, y = pts[-1]
        pts.append((x + lam[a - 1], y + tau[a - 1]))
    return tuple(pts)


def suspension_polygon(p: Host, lam, tau) -> Polygon:
    lam, tau = lengths(lam), _heights(tau)
    _check_lengths(p, lam)
    cone_violation(p, tau, raise_=True)
    top, bot = _rows(p)
    return Polygon(_chain(top, lam, tau), _chain(bot, lam, tau), top, bot)


def unit_suspension(p: Permutation) -> Suspension:
    """lam = 1 and tau = (1, 0, ..., 0, -1)."""
    lam = (Fraction(1),) * p.d
    tau = (Fraction(1),) + (Fraction(0),) * (p.d - 2) + (Fraction(-1),)
    cone_violation(p, tau, raise_=True)
    return Suspension(p, lam, tau)


def export_svg(poly: Polygon, scale: float = 60.0) -> bytes:
    pts = list(poly.top) + list(reversed(poly.bottom))[1:-1]
    xs = [float(x) for x, _ in pts]
    ys = [float(y) for _, y in pts]
    pad = 0.5
    minx, maxx, miny, maxy = min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad
    w, h = (maxx - minx) * scale, (maxy - miny) * scale

    def sx(x):
        return f"{(float(x) - minx) * scale:.3f}"

    def sy(y):
        return f"{(maxy - float(y)) * scale:.3f}"

    path = " ".join(f"{sx(x)},{sy(y)}" for x, y in pts)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3f}" height="{h:.3f}">',
        f'<polygon points="{path}" fill="#dde8f5" stroke="#223" stroke-width="1.5"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(poly.top[-1][0])}" y2="{sy(0)}" '
        'stroke="#a33" stroke-dasharray="4 3"/>',
    ]
    for chain, labels, dy in ((poly.top, poly.top_labels, -6), (poly.bottom, poly.bottom_labels, 14)):
        for (x1, y1), (x2, y2), a in zip(chain, chain[1:], labels):
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            lines.append(f'<text x="{sx(mx)}" y="{float(sy(my)) + dy:.3f}" font-size="12" '
                         f'text-anchor="middle">{a}</text>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode()


def induct_once(p: Host, lam, tau=None):
    """One induction step on either kind of host; returns (p', lam', tau')."""
    step = _gen_rv if isinstance(p, GenPerm) else _rv
    return step(p, lengths(lam), None if tau is None else _heights(tau))
