"""Kempe chains, interchanges and the per-edge Kempe-locking decision."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .coloring import Coloring, _search
from .errors import BadColors, ColorMismatch
from .plane_graph import MarkedNearTriangulation, PlaneGraph, PlaneTriangulation, delete_edge


@dataclass(frozen=True)
class KempeChain:
    colors: frozenset[int]
    vertices: frozenset[int]
    anchor: int

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


def _component(adj: Sequence[frozenset[int]], c: Sequence[int], v: int, i: int, j: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                cb = c[b]
                if cb == i or cb == j:
                    seen.add(b)
                    stack.append(b)
    return seen


def chain_at(g: PlaneGraph, c: Sequence[int], v: int, pair) -> KempeChain:
    """The maximal connected ``{i, j}``-coloured vertex set containing ``v``."""
    i, j = sorted(pair)
    if c[v] not in (i, j):
        raise ColorMismatch(f"vertex {v} has colour {c[v]}, not in {{{i}, {j}}}")
    return KempeChain(frozenset((i, j)), frozenset(_component(g.adj, c, v, i, j)), v)


def kempe_chains(g: PlaneGraph, c: Sequence[int], pair) -> list[KempeChain]:
    """Every ``{i, j}`` chain of the colouring, ordered by least vertex."""
    i, j = sorted(pair)
    out = []
    seen: set[int] = set()
    for v in range(g.n):
        if v not in seen and c[v] in (i, j):
            comp = _component(g.adj, c, v, i, j)
            seen |= comp
            out.append(KempeChain(frozenset((i, j)), frozenset(comp), v))
    return out


def interchange(c: Sequence[int], chain: KempeChain) -> Coloring:
    i, j = sorted(chain.colors)
    out = list(c)
    for v in chain.vertices:
        out[v] = j if c[v] == i else i
    return tuple(out)


class Verdict(enum.Enum):
    LOCKED = "locked"
    NOT_LOCKED = "not_locked"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class LockResult:
    """Outcome of a locking test at edge ``xy``.

    For ``NOT_LOCKED`` the witness colouring and the chain through ``x`` that
    misses ``y`` are attached; ``colorings_checked`` counts identified
    colourings examined (all of them unless the test exited early).
    """

    verdict: Verdict
    edge: tuple[int, int]
    colorings_checked: int
    witness: Coloring | None = None
    chain: KempeChain | None = None

    @property
    def locked(self) -> bool:
        return self.verdict is Verdict.LOCKED


def escaping_chain(g: MarkedNearTriangulation, c: Sequence[int]) -> KempeChain | None:
    """First chain through ``x`` (pairs ``{k, j}`` by increasing ``j``) that misses ``y``."""
    x, y = g.x, g.y
    adj = g.adj
    k = c[x]
    for j in range(1, 5):
        if j == k:
            continue
        comp = _component(adj, c, x, k, j)
        if y not in comp:
            return KempeChain(frozenset((k, j)), frozenset(comp), x)
    return None


def locking_test(g: MarkedNearTriangulation) -> LockResult:
    """Decide locking on an already-built ``G_xy``."""
    x, y = g.x, g.y
    adj = g.adj
    checked = 0
    for col in _search(adj, (x, y)):
        checked += 1
        # inline of escaping_chain on the live array; x always has colour 1
        for j in (2, 3, 4):
            seen = {x}
            stack = [x]
            found = False
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if b not in seen:
                        cb = col[b]
                        if cb == 1 or cb == j:
                            if b == y:
                                found = True
                                break
                            seen.add(b)
                            stack.append(b)
                if found:
                    break
            if not found:
                c = tuple(col)
                return LockResult(Verdict.NOT_LOCKED, (x, y), checked, c,
                                  KempeChain(frozenset((1, j)), frozenset(_component(adj, c, x, 1, j)), x))
    if checked == 0:
        return LockResult(Verdict.VACUOUS, (x, y), 0)
    return LockResult(Verdict.LOCKED, (x, y), checked)


def is_kempe_locked(t: PlaneTriangulation, e: tuple[int, int]) -> LockResult:
    """Every identified colouring of ``G_xy`` has all three chains from ``x`` reaching ``y``."""
    return locking_test(delete_edge(t, e))


def two_color_path_blocked(g: MarkedNearTriangulation, c: Sequence[int], pair) -> bool:
    """True iff no ``{i, j}`` path joins ``v`` and ``u`` (``x``'s colour excluded)."""
    i, j = sorted(pair)
    k = c[g.x]
    if k in (i, j) or i == j:
        raise BadColors(f"pair {{{i}, {j}}} must avoid the endpoint colour {k}")
    if c[g.u] not in (i, j) or c[g.v] not in (i, j):
        return True
    return g.u not in _component(g.adj, c, g.v, i, j)


def blocking_mode(g: MarkedNearTriangulation, c: Sequence[int], pair) -> int | None:
    """1 if the path is stopped between ``v`` and ``u``, 2 if an end colour is
    excluded, ``None`` when a path gets through.  Informational only."""
    i, j = sorted(pair)
    if c[g.u] not in (i, j) or c[g.v] not in (i, j):
        return 2
    return 1 if two_color_path_blocked(g, c, pair) else None
