"""Brute-force oracle for the frozen values in this directory.

Self-contained on purpose: nothing from the ``rauzy`` package is imported, so
the golden files are an independent check on it. Moves are applied to rows of
letters, irreducibility of generalized permutations is decided by linear
programming (the height cone is nonempty exactly for irreducible ones) and
singularities come from a separate union-find over segment endpoints.

Run from the repository root::

    python3 golden/oracle.py

It rewrites ``rauzy_classes.json`` and ``gen_classes.json``. The atlas file
``atlas_d4.jsonl`` is the output of ``rauzy atlas --d 4`` frozen as a
regression value; its class sizes are checked against ``rauzy_classes.json``.
"""

from __future__ import annotations

import json
from collections import deque
from itertools import permutations
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

HERE = Path(__file__).resolve().parent
MAX_TRUE_D = 7
MAX_GEN_D = 4


# --- true permutations ------------------------------------------------------

def canon(top, bottom):
    label = {a: k for k, a in enumerate(top, 1)}
    return tuple(label[a] for a in bottom)


def irreducible(line):
    return all(set(line[:k]) != set(range(1, k + 1)) for k in range(1, len(line)))


def move(line, eps):
    top, bottom = list(range(1, len(line) + 1)), list(line)
    if eps == 1:
        top, bottom = bottom, top
    winner, loser = top[-1], bottom.pop()
    bottom.insert(bottom.index(winner) + 1, loser)
    if eps == 1:
        top, bottom = bottom, top
    return canon(top, bottom)


def true_classes(d):
    todo = {p for p in permutations(range(1, d + 1)) if irreducible(p)}
    classes = []
    while todo:
        seed = min(todo)
        seen, queue, edges = {seed}, deque([seed]), []
        while queue:
            p = queue.popleft()
            for e in (0, 1):
                q = move(p, e)
                edges.append((p, q, e))
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        todo -= seen
        classes.append((sorted(seen), sorted(edges)))
    return classes


# --- generalized permutations -------------------------------------------------

def gcanon(top, bottom):
    label = {}
    for a in list(top) + list(bottom):
        label.setdefault(a, len(label) + 1)
    return tuple(label[a] for a in top), tuple(label[a] for a in bottom)


def proper(top, bottom):
    both_top = any(top.count(a) == 2 for a in set(top))
    both_bottom = any(bottom.count(a) == 2 for a in set(bottom))
    return both_top == both_bottom


def cone_nonempty(top, bottom):
    d = (len(top) + len(bottom)) // 2
    A, b = [], []
    for k in range(1, len(top)):
        row = np.zeros(d)
        for a in top[:k]:
            row[a - 1] += 1
        A.append(-row)
        b.append(-1.0)
    for k in range(1, len(bottom)):
        row = np.zeros(d)
        for a in bottom[:k]:
            row[a - 1] += 1
        A.append(row)
        b.append(-1.0)
    eq = np.zeros(d)
    for a in top:
        eq[a - 1] += 1
    for a in bottom:
        eq[a - 1] -= 1
    res = linprog(np.zeros(d), A_ub=np.array(A) if A else None, b_ub=np.array(b) if b else None,
                  A_eq=eq[None, :], b_eq=[0.0], bounds=[(None, None)] * d, method="highs")
    return res.status == 0


def gmove(top, bottom, eps):
    """Rows after a move; the loser lands right after the winner's twin when
    that twin is in the loser's row, and right before it otherwise."""
    top, bottom = list(top), list(bottom)
    if eps == 1:
        top, bottom = bottom, top
    winner, loser = top[-1], bottom.pop()
    if winner in bottom:
        bottom.insert(bottom.index(winner) + 1, loser)
    else:
        top.insert(top.index(winner), loser)
    if eps == 1:
        top, bottom = bottom, top
    if not top or not bottom or not proper(top, bottom):
        return None
    return gcanon(top, bottom)


def gen_words(d):
    def rec(word, nxt):
        if len(word) == 2 * d:
            yield tuple(word)
            return
        for a in range(1, nxt + 1):
            if a > d or word.count(a) == 2:
                continue
            yield from rec(word + [a], nxt + 1 if a == nxt else nxt)
    yield from rec([], 1)


def orders(top, bottom):
    """Singularity orders, marked one first, from endpoint identifications."""
    n0 = len(top)
    word = list(top) + list(bottom)
    n = len(word)
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for i in range(1, n):
        if i != n0:
            union((i, "R"), (i + 1, "L"))
    union((1, "L"), (n0 + 1, "L"))
    union((n0, "R"), (n, "R"))
    for i in range(1, n + 1):
        j = next(k for k in range(1, n + 1) if k != i and word[k - 1] == word[i - 1])
        same_row = (i <= n0) == (j <= n0)
        for side in "LR":
            other = ("R" if side == "L" else "L") if same_row else side
            union((i, side), (j, other))
    count = {}
    for i in range(1, n + 1):
        if i in (1, n0 + 1):
            continue
        r = find((i, "L"))
        count[r] = count.get(r, 0) + 1
    for x in [(1, "L"), (n0, "R")]:
        count.setdefault(find(x), 0)
    marked = find((1, "L"))
    rest = sorted((c - 2 for r, c in count.items() if r != marked), reverse=True)
    return [count[marked] - 2] + rest


def gen_classes(d):
    todo = set()
    for w in gen_words(d):
        for d0 in range(1, 2 * d):
            top, bottom = w[:d0], w[d0:]
            key = gcanon(top, bottom)
            if key == (top, bottom) and proper(top, bottom) and cone_nonempty(top, bottom):
                todo.add(key)
    out = []
    while todo:
        seed = min(todo)
        seen, queue, edges = {seed}, deque([seed]), []
        while queue:
            p = queue.popleft()
            for e in (0, 1):
                q = gmove(*p, e)
                if q is None:
                    continue
                edges.append((p, q, e))
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        todo -= seen
        out.append((sorted(seen), sorted(edges)))
    return out


def fmt(p):
    return " ".join(map(str, p[0])) + " / " + " ".join(map(str, p[1]))


def main():
    true = {}
    for d in range(2, MAX_TRUE_D + 1):
        cls = true_classes(d)
        true[str(d)] = {
            "classes": len(cls),
            "sizes": sorted(len(v) for v, _ in cls),
            "irreducible": sum(len(v) for v, _ in cls),
        }
    (v321, e321), = [c for c in true_classes(3) if (3, 2, 1) in c[0]]
    true["graph_321"] = {
        "vertices": [list(v) for v in v321],
        "edges": [[list(s), list(t), e] for s, t, e in e321],
    }
    (HERE / "rauzy_classes.json").write_text(json.dumps(true, indent=1, sort_keys=True) + "\n")

    gen = {}
    for d in range(2, MAX_GEN_D + 1):
        rows = []
        for verts, edges in gen_classes(d):
            o = orders(*verts[0])
            rows.append({
                "size": len(verts),
                "orders": o,
                "has_self_inverse": any(gcanon(b, t) == (t, b) for t, b in verts),
                "representative": fmt(verts[0]),
                "constant_orders": all(sorted(orders(*v)[1:]) == sorted(o[1:]) and orders(*v)[0] == o[0]
                                       for v in verts),
            })
        gen[str(d)] = sorted(rows, key=lambda r: (r["size"], r["representative"]))
    small = gcanon((1, 2, 2), (3, 3, 1))
    for verts, edges in gen_classes(3):
        if small in verts:
            gen["class_122_331"] = {
                "vertices": [fmt(v) for v in verts],
                "edges": [[fmt(s), fmt(t), e] for s, t, e in edges],
            }
    (HERE / "gen_classes.json").write_text(json.dumps(gen, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
