"""Exact 3/4/5-connectivity of plane triangulations via separating short cycles."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionViolated, TooSmall
from .plane_graph import PlaneGraph, PlaneTriangulation


@dataclass(frozen=True)
class ConnectivityClass:
    level: int
    witnesses: tuple[tuple[int, ...], ...] = field(default=())


def has_separating_triangle(t: PlaneGraph) -> bool:
    """Fast check: some vertex has two adjacent neighbours that are not consecutive around it."""
    rotation, adj = t.rotation, t.adj
    for v in range(t.n):
        nbrs = rotation[v]
        d = len(nbrs)
        if d <= 3:
            # K4 aside, a degree-3 vertex sits inside a separating triangle
            if t.n > 4:
                return True
            continue
        for i in range(d):
            ai = adj[nbrs[i]]
            for j in range(i + 2, d if i else d - 1):
                if nbrs[j] in ai:
                    return True
    return False


def separating_triangles(t: PlaneTriangulation) -> list[tuple[int, int, int]]:
    """All non-facial triangles, each as a sorted vertex triple."""
    facial = {tuple(sorted(f)) for f in t.faces()}
    out = []
    adj = t.adj
    for a in range(t.n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c > b and (a, b, c) not in facial:
                    out.append((a, b, c))
    return sorted(out)


def _components_without(t: PlaneGraph, removed: set[int]) -> int:
    seen = set(removed)
    comps = 0
    for s in range(t.n):
        if s in seen:
            continue
        comps += 1
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for w in t.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return comps


def _normal_cycle(c: tuple[int, ...]) -> tuple[int, ...]:
    k = len(c)
    forms = []
    for seq in (c, c[::-1]):
        for i in range(k):
            forms.append(seq[i:] + seq[:i])
    return min(forms)


def four_cycles(t: PlaneGraph) -> list[tuple[int, int, int, int]]:
    """Every 4-cycle once, in normal form (least rotation/reflection)."""
    out = set()
    adj = t.adj
    for a in range(t.n):
        for c in range(a + 1, t.n):
            common = sorted(w for w in adj[a] & adj[c])
            for i, b in enumerate(common):
                for d in common[i + 1:]:
                    out.add(_normal_cycle((a, b, c, d)))
    return sorted(out)


def separating_quads(t: PlaneTriangulation) -> list[tuple[int, int, int, int]]:
    """4-cycles with vertices strictly on both sides."""
    if has_separating_triangle(t):
        raise PreconditionViolated("triangulation has a separating triangle")
    out = []
    for cyc in four_cycles(t):
        a, b, c, d = cyc
        # a chord splits the cycle into two facial triangles on one side
        if c in t.adj[a] or d in t.adj[b]:
            continue
        if _components_without(t, set(cyc)) > 1:
            out.append(cyc)
    return out


def has_separating_quad(t: PlaneGraph) -> bool:
    adj = t.adj
    n = t.n
    for a in range(n):
        for c in range(a + 1, n):
            if c in adj[a]:
                continue
            common = sorted(adj[a] & adj[c])
            for i, b in enumerate(common):
                for d in common[i + 1:]:
                    if d not in adj[b] and _components_without(t, {a, b, c, d}) > 1:
                        return True
    return False


def connectivity_level(t: PlaneTriangulation) -> int:
    """3, 4 or 5; requires n >= 5."""
    if t.n < 5:
        raise TooSmall(f"order {t.n} < 5")
    if has_separating_triangle(t):
        return 3
    if has_separating_quad(t):
        return 4
    return 5


def classify(t: PlaneTriangulation) -> ConnectivityClass:
    if t.n < 5:
        raise TooSmall(f"order {t.n} < 5")
    tris = separating_triangles(t)
    if tris:
        return ConnectivityClass(3, tuple(tris))
    quads = separating_quads(t)
    if quads:
        return ConnectivityClass(4, tuple(quads))
    return ConnectivityClass(5)
