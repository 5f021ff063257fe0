"""Enumeration of proper 4-colourings up to colour permutation.

Two colourings are the same here when they induce the same partition into
colour classes.  Each partition is produced exactly once, as the labelling in
which colours are numbered by first use along a fixed vertex order.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .plane_graph import MarkedNearTriangulation, PlaneGraph

Coloring = tuple[int, ...]
"""``c[v]`` is the colour (1..4) of vertex ``v``."""

NUM_COLORS = 4


def coloring_order(adj: Sequence[frozenset[int]], first: Sequence[int]) -> list[int]:
    """Static backtracking order: ``first`` vertices up front, then greedily the
    vertex with most already-placed neighbours (ties: higher degree, lower id)."""
    n = len(adj)
    placed = [False] * n
    order = []
    hits = [0] * n
    for v in first:
        if not placed[v]:
            placed[v] = True
            order.append(v)
            for w in adj[v]:
                hits[w] += 1
    while len(order) < n:
        best = -1
        best_key = None
        for v in range(n):
            if placed[v]:
                continue
            key = (hits[v], len(adj[v]), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        placed[best] = True
        order.append(best)
        for w in adj[best]:
            hits[w] += 1
    return order


def _search(adj: Sequence[frozenset[int]], identify: tuple[int, int] | None) -> Iterator[list[int]]:
    """Core backtracking; yields the live colour array (copy it before keeping)."""
    n = len(adj)
    if n == 0:
        yield []
        return
    if identify is not None:
        x, y = identify
        order = coloring_order(adj, (x, y))
        slots = [[x, y]] + [[v] for v in order[2:]]
    else:
        order = coloring_order(adj, ())
        slots = [[v] for v in order]
    slot_of = [0] * n
    for i, members in enumerate(slots):
        for v in members:
            slot_of[v] = i
    m = len(slots)
    earlier = []
    for i, members in enumerate(slots):
        prev = set()
        for v in members:
            for w in adj[v]:
                j = slot_of[w]
                if j == i:
                    return  # identified vertices are adjacent: no colouring
                if j < i:
                    prev.add(j)
        earlier.append(sorted(prev))
    col = [0] * m
    top = [0] * (m + 1)  # top[i] = highest colour used by slots < i
    color = [0] * n
    i = 0
    while i >= 0:
        c = col[i] + 1
        limit = top[i] + 1
        if limit > NUM_COLORS:
            limit = NUM_COLORS
        nb = earlier[i]
        while c <= limit:
            for j in nb:
                if col[j] == c:
                    break
            else:
                break
            c += 1
        if c > limit:
            col[i] = 0
            i -= 1
            continue
        col[i] = c
        if i == m - 1:
            for k in range(m):
                for v in slots[k]:
                    color[v] = col[k]
            yield color
            continue
        top[i + 1] = c if c > top[i] else top[i]
        i += 1
        col[i] = 0


def enumerate_identified(g: MarkedNearTriangulation) -> Iterator[Coloring]:
    """One colouring per colour-class partition of ``G_xy`` with ``x`` and ``y`` equal.

    ``x`` always receives colour 1.  The order is deterministic.
    """
    for c in _search(g.adj, (g.x, g.y)):
        yield tuple(c)


def enumerate_colorings(g: PlaneGraph, identify: tuple[int, int] | None = None) -> Iterator[Coloring]:
    for c in _search(g.adj, identify):
        yield tuple(c)


def count_distinct(g: PlaneGraph, identify: tuple[int, int] | None = None) -> int:
    return sum(1 for _ in _search(g.adj, identify))


def is_proper(g: PlaneGraph, c: Sequence[int]) -> bool:
    return all(c[a] != c[b] for a, b in g.edges())


def partition(c: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Colour classes as sorted vertex tuples, ordered by least vertex."""
    classes: dict[int, list[int]] = {}
    for v, col in enumerate(c):
        classes.setdefault(col, []).append(v)
    return tuple(sorted(tuple(cls) for cls in classes.values()))


def relabel_colors(c: Sequence[int], pinned: dict[int, int]) -> Coloring:
    """Permute colour names so that each vertex in ``pinned`` gets the given colour.

    Raises ``ValueError`` if the pins are inconsistent with the partition.
    """
    perm: dict[int, int] = {}
    for v, want in pinned.items():
        have = c[v]
        if perm.get(have, want) != want:
            raise ValueError(f"vertex {v} cannot be recoloured {want}")
        perm[have] = want
    if len(set(perm.values())) != len(perm):
        raise ValueError("pins map two colour classes to one colour")
    free = iter(sorted(set(range(1, NUM_COLORS + 1)) - set(perm.values())))
    for col in sorted(set(c)):
        if col not in perm:
            perm[col] = next(free)
    return tuple(perm[col] for col in c)
