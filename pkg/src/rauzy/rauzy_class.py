"""Rauzy classes as typed directed graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .perm_core import Permutation, ReducibleError, is_irreducible, rauzy_move

EXACT_THRESHOLD = 8
DEFAULT_CAP = 1_000_000


class ClassTooLarge(RuntimeError):
    """BFS stopped because the class has more than ``cap`` elements."""

    def __init__(self, cap: int, seen: int):
        super().__init__(f"class exceeds cap of {cap} (visited {seen})")
        self.cap = cap
        self.seen = seen


@dataclass(frozen=True)
class RauzyGraph:
    vertices: tuple[Permutation, ...]
    edges: tuple[tuple[Permutation, Permutation, int], ...]

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, p):
        return p in set(self.vertices)

    def successors(self, p: Permutation) -> dict[int, Permutation]:
        return {t: q for (s, q, t) in self.edges if s == p}


def bfs(seed, step, cap: int):
    """Breadth-first closure; ``step(x)`` yields (type, successor) pairs.

    Returns the visited list and the typed edge list."""
    seen = {seed}
    order, edges = [seed], []
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for t, y in step(x):
            edges.append((x, y, t))
            if y not in seen:
                if len(seen) >= cap:
                    raise ClassTooLarge(cap, len(seen))
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order, edges


def enumerate_class(p: Permutation, cap: int = DEFAULT_CAP) -> RauzyGraph:
    if not is_irreducible(p):
        raise ReducibleError(f"{p} is reducible")
    order, edges = bfs(p, lambda x: ((t, rauzy_move(x, t)) for t in (0, 1)), cap)
    return RauzyGraph(tuple(sorted(order)), tuple(sorted(edges, key=lambda e: (e[0], e[2]))))


def same_class(p: Permutation, q: Permutation, threshold: int = EXACT_THRESHOLD) -> bool:
    if p.d != q.d:
        return False
    if p.d <= threshold:
        return q in enumerate_class(p)
    from .invariants import class_key
    return class_key(p) == class_key(q)


def all_classes(d: int) -> list[RauzyGraph]:
    """Partition the irreducible permutations on d letters into classes."""
    from .perm_core import irreducibles
    done, out = set(), []
    for p in irreducibles(d):
        if p not in done:
            g = enumerate_class(p)
            done.update(g.vertices)
            out.append(g)
    return out


def to_dot(g: RauzyGraph, name: str = "rauzy") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for s, t, k in g.edges:
        lines.append(f'  "{s}" -> "{t}" [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_jsonl(g: RauzyGraph) -> str:
    out = []
    for v in g.vertices:
        succ = g.successors(v)
        out.append(json.dumps({"perm": list(v.line),
                               "edges": {str(t): list(succ[t].line) for t in sorted(succ)}}))
    return "\n".join(out) + "\n"


def from_jsonl(text: str) -> RauzyGraph:
    vertices, edges = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        v = Permutation(tuple(rec["perm"]))
        vertices.append(v)
        for t, w in rec["edges"].items():
            edges.append((v, Permutation(tuple(w)), int(t)))
    return RauzyGraph(tuple(sorted(vertices)), tuple(sorted(edges, key=lambda e: (e[0], e[2]))))


def export_graph(g: RauzyGraph, fmt: str = "dot") -> bytes:
    if fmt == "dot":
        return to_dot(g).encode()
    if fmt == "jsonl":
        return to_jsonl(g).encode()
    raise ValueError(f"unknown format {fmt!r}")
