"""Rotation-system plane graphs: triangulations, marked near-triangulations, surgery, canonical codes.

Vertices are the dense integers ``0..n-1``.  A rotation system lists, for
every vertex, its neighbours in one fixed cyclic orientation (counterclockwise
by convention); faces are traced from it, so no separate planarity test is
ever needed.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    DegenerateFlank,
    Disconnected,
    EulerViolation,
    InvalidGraph,
    NoSuchEdge,
    NotContractible,
    NotSimple,
    NotTriangulation,
    WrongVertices,
)

Rotation = tuple[tuple[int, ...], ...]
EdgeRef = tuple[int, int]


def edge_ref(a: int, b: int) -> EdgeRef:
    """Normalised unordered edge ``(min, max)``."""
    if a == b:
        raise NoSuchEdge(f"loop ({a}, {b}) is not an edge")
    return (a, b) if a < b else (b, a)


class PlaneGraph:
    """A simple plane graph given by its rotation system.

    ``labels`` optionally records, for each vertex, the id it had in the graph
    this one was cut out of.
    """

    __slots__ = ("n", "rotation", "adj", "_pos", "labels")

    def __init__(self, rotation: Iterable[Sequence[int]], labels: Sequence[int] | None = None):
        rot = tuple(tuple(int(w) for w in nbrs) for nbrs in rotation)
        n = len(rot)
        for v, nbrs in enumerate(rot):
            for w in nbrs:
                if not 0 <= w < n:
                    raise InvalidGraph(f"vertex {v} lists out-of-range neighbour {w}")
                if w == v:
                    raise NotSimple(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise NotSimple(f"parallel edges at vertex {v}")
        adj = tuple(frozenset(nbrs) for nbrs in rot)
        for v in range(n):
            for w in adj[v]:
                if v not in adj[w]:
                    raise NotSimple(f"adjacency not symmetric: {v}->{w}")
        self.n = n
        self.rotation: Rotation = rot
        self.adj = adj
        self._pos = tuple({w: i for i, w in enumerate(nbrs)} for nbrs in rot)
        self.labels = tuple(labels) if labels is not None else None

    # -- basic queries ---------------------------------------------------

    @property
    def order(self) -> int:
        return self.n

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.rotation]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def edges(self) -> list[EdgeRef]:
        return [(v, w) for v in range(self.n) for w in self.rotation[v] if v < w]

    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def succ(self, v: int, w: int) -> int:
        """Neighbour of ``v`` following ``w`` in the rotation."""
        nbrs = self.rotation[v]
        return nbrs[(self._pos[v][w] + 1) % len(nbrs)]

    def pred(self, v: int, w: int) -> int:
        nbrs = self.rotation[v]
        return nbrs[(self._pos[v][w] - 1) % len(nbrs)]

    def faces(self) -> list[tuple[int, ...]]:
        """Trace every face; each face is listed once as its vertex cycle."""
        seen: set[tuple[int, int]] = set()
        faces = []
        for v in range(self.n):
            for w in self.rotation[v]:
                if (v, w) in seen:
                    continue
                face = []
                a, b = v, w
                while (a, b) not in seen:
                    seen.add((a, b))
                    face.append(a)
                    a, b = b, self.succ(b, a)
                faces.append(tuple(face))
        return faces

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.rotation[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def reflected(self):
        """The mirror image: every rotation reversed."""
        return type(self)(tuple(tuple(reversed(r)) for r in self.rotation))

    def relabeled(self, perm: Sequence[int]):
        """Copy with vertex ``v`` renamed ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.n
        for v, nbrs in enumerate(self.rotation):
            rot[perm[v]] = tuple(perm[w] for w in nbrs)
        return type(self)(rot)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other):
        return type(self) is type(other) and self.rotation == other.rotation

    def __hash__(self):
        return hash(self.rotation)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, edges={self.edge_count()})"


class PlaneTriangulation(PlaneGraph):
    """A simple plane graph all of whose faces are triangles (n >= 4).

    Construction validates every invariant and raises on the first failure.
    """

    __slots__ = ()

    def __init__(self, rotation: Iterable[Sequence[int]]):
        super().__init__(rotation)
        n = self.n
        if n < 4:
            raise NotTriangulation(f"order {n} < 4")
        if not self.is_connected():
            raise Disconnected("rotation system is not connected")
        faces = self.faces()
        for f in faces:
            if len(f) != 3:
                raise NotTriangulation(f"face {f} has length {len(f)}")
        e = self.edge_count()
        if e != 3 * n - 6 or len(faces) != 2 * n - 4 or n - e + len(faces) != 2:
            raise EulerViolation(f"V={n} E={e} F={len(faces)}")

    @classmethod
    def trusted(cls, rotation: Sequence[Sequence[int]]) -> "PlaneTriangulation":
        """Skip validation; for rotations produced by this package's own surgery."""
        self = object.__new__(cls)
        rot = tuple(tuple(r) for r in rotation)
        self.n = len(rot)
        self.rotation = rot
        self.adj = tuple(frozenset(r) for r in rot)
        self._pos = tuple({w: i for i, w in enumerate(r)} for r in rot)
        self.labels = None
        return self

    def flank(self, x: int, y: int) -> tuple[int, int]:
        """Apexes of the two triangles on edge ``xy``: ``(succ(x, y), pred(x, y))``."""
        if y not in self.adj[x]:
            raise NoSuchEdge(f"({x}, {y}) is not an edge")
        return self.succ(x, y), self.pred(x, y)


def build_triangulation(rotation: Iterable[Sequence[int]]) -> PlaneTriangulation:
    return PlaneTriangulation(rotation)


def degree(g: PlaneGraph, v: int) -> int:
    return g.degree(v)


def triangulation_from_edges(edges: Iterable[tuple[int, int]], n: int | None = None) -> PlaneTriangulation:
    """Embed a maximal planar graph given as an edge list.

    Triangulations are 3-connected, so the embedding networkx finds is the
    unique one up to reflection.
    """
    import networkx as nx

    g = nx.Graph()
    g.add_edges_from(edges)
    if n is None:
        n = g.number_of_nodes()
    g.add_nodes_from(range(n))
    if sorted(g.nodes) != list(range(n)):
        raise InvalidGraph("vertex ids must be 0..n-1")
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NotTriangulation("graph is not planar")
    return PlaneTriangulation([list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(n)])


class MarkedNearTriangulation(PlaneGraph):
    """``T`` with edge ``xy`` deleted; the single quadrilateral face is ``u x v y``."""

    __slots__ = ("boundary",)

    def __init__(self, rotation: Iterable[Sequence[int]], boundary: tuple[int, int, int, int]):
        super().__init__(rotation)
        u, x, v, y = boundary
        self.boundary = (u, x, v, y)
        if x in self.adj[y]:
            raise InvalidGraph("endpoints x, y must be non-adjacent")
        for a, b in ((u, x), (x, v), (v, y), (y, u)):
            if b not in self.adj[a]:
                raise InvalidGraph(f"boundary edge ({a}, {b}) missing")
        if self.edge_count() != 3 * self.n - 7:
            raise InvalidGraph("near-triangulation must have 3n-7 edges")

    @property
    def x(self) -> int:
        return self.boundary[1]

    @property
    def y(self) -> int:
        return self.boundary[3]

    @property
    def u(self) -> int:
        return self.boundary[0]

    @property
    def v(self) -> int:
        return self.boundary[2]

    def restore(self) -> PlaneTriangulation:
        """Re-insert edge ``xy`` inside the marked face."""
        u, x, v, y = self.boundary
        rx, ry = self.rotation[x], self.rotation[y]
        # a degree-2 endpoint has two (u, v) angles; only one is the marked face
        for i in range(len(rx)):
            p, q = rx[i], rx[(i + 1) % len(rx)]
            if {p, q} != {u, v}:
                continue
            # x sees (p, y, q) exactly when y sees (q, x, p)
            for j in range(len(ry)):
                if ry[j] != q or ry[(j + 1) % len(ry)] != p:
                    continue
                rot = [list(r) for r in self.rotation]
                rot[x].insert(i + 1, y)
                rot[y].insert(j + 1, x)
                try:
                    return PlaneTriangulation(rot)
                except InvalidGraph:
                    continue
        raise InvalidGraph("marked face not found around x and y")

    def __eq__(self, other):
        return super().__eq__(other) and self.boundary == other.boundary

    def __hash__(self):
        return hash((self.rotation, self.boundary))


def delete_edge(t: PlaneTriangulation, e: tuple[int, int]) -> MarkedNearTriangulation:
    """Delete edge ``xy``; the two flanking triangles merge into the marked face."""
    x, y = e
    if x == y or y not in t.adj[x]:
        raise NoSuchEdge(f"({x}, {y}) is not an edge")
    a, b = t.flank(x, y)
    if a == b:
        raise DegenerateFlank(f"edge ({x}, {y}) has both flanks at {a}")
    rot = list(t.rotation)
    rot[x] = tuple(w for w in rot[x] if w != y)
    rot[y] = tuple(w for w in rot[y] if w != x)
    # u below, v above: a = succ(x, y) is drawn as v
    return MarkedNearTriangulation(rot, (b, x, a, y))


def contract_edge(t: PlaneTriangulation, e: tuple[int, int]) -> PlaneTriangulation:
    """Coalesce ``x`` and ``y``; the merged vertex keeps id ``min(x, y)`` after relabelling."""
    x, y = e
    if x == y or y not in t.adj[x]:
        raise NoSuchEdge(f"({x}, {y}) is not an edge")
    a, b = t.flank(x, y)
    if (t.adj[x] & t.adj[y]) != {a, b} or a == b:
        raise NotContractible(f"edge ({x}, {y}) lies on a separating triangle")
    if x > y:
        x, y = y, x
        a, b = b, a
    rx, ry = t.rotation[x], t.rotation[y]
    i, j = t._pos[x][y], t._pos[y][x]
    dx, dy = len(rx), len(ry)
    after_y = [rx[(i + k) % dx] for k in range(1, dx)]
    after_x = [ry[(j + k) % dy] for k in range(1, dy)]
    merged = after_y + after_x[1:-1]
    rot = [list(r) for r in t.rotation]
    rot[x] = merged
    rot[a] = [w for w in rot[a] if w != y]
    rot[b] = [w for w in rot[b] if w != y]
    for p in after_x[1:-1]:
        rot[p] = [x if w == y else w for w in rot[p]]
    del rot[y]
    rot = [[w - 1 if w > y else w for w in r] for r in rot]
    if len(rot) < 4:
        raise NotContractible("contraction leaves fewer than 4 vertices")
    return PlaneTriangulation(rot)


def delete_vertices(g: MarkedNearTriangulation, vs: Iterable[int]) -> PlaneGraph:
    """Remove the boundary pair ``{u, v}``; the result remembers original ids in ``labels``."""
    vs = set(vs)
    if vs != {g.u, g.v}:
        raise WrongVertices(f"expected {{u, v}} = {{{g.u}, {g.v}}}, got {sorted(vs)}")
    keep = [w for w in range(g.n) if w not in vs]
    new = {w: i for i, w in enumerate(keep)}
    rot = [tuple(new[w] for w in g.rotation[old] if w not in vs) for old in keep]
    return PlaneGraph(rot, labels=keep)


# -- canonical codes ------------------------------------------------------


def _root_candidates(g: PlaneGraph) -> list[tuple[int, int]]:
    """Directed edges minimising (deg tail, deg head); the code begins with these degrees."""
    deg = [len(r) for r in g.rotation]
    best = None
    roots: list[tuple[int, int]] = []
    for v in range(g.n):
        dv = deg[v]
        if best is not None and dv > best[0]:
            continue
        for w in g.rotation[v]:
            key = (dv, deg[w])
            if best is None or key < best:
                best = key
                roots = [(v, w)]
            elif key == best:
                roots.append((v, w))
    return roots


def _bfs_code(g: PlaneGraph, v0: int, w0: int, step: int, best: list[int] | None):
    """Code of the rooted traversal, or ``None`` as soon as it exceeds ``best``.

    Each vertex contributes its degree followed by the labels of its
    neighbours read from the edge it was discovered along; labels start at 1.
    Returns ``(code, order, cmp)`` where ``cmp`` is -1, 0 or 1 against ``best``.
    """
    rotation, pos = g.rotation, g._pos
    n = g.n
    label = [0] * n
    label[v0] = 1
    order = [v0]
    parent = [0] * n
    parent[v0] = w0
    code: list[int] = []
    cmp = 0 if best is not None else -1
    nxt = 2
    idx = 0
    i = 0
    while i < len(order):
        v = order[i]
        nbrs = rotation[v]
        d = len(nbrs)
        start = pos[v][parent[v]]
        if cmp == 0:
            b = best[idx]
            if d != b:
                if d > b:
                    return None, None, 1
                cmp = -1
        code.append(d)
        idx += 1
        for t in range(d):
            w = nbrs[(start + step * t) % d]
            lw = label[w]
            if lw == 0:
                lw = label[w] = nxt
                nxt += 1
                order.append(w)
                parent[w] = v
            if cmp == 0:
                b = best[idx]
                if lw != b:
                    if lw > b:
                        return None, None, 1
                    cmp = -1
            code.append(lw)
            idx += 1
        i += 1
    return code, order, cmp


def canonical_form(g: PlaneGraph) -> tuple[bytes, list[list[int]]]:
    """Lexicographically least rooted code and the vertex orders of every root achieving it.

    For a 3-connected plane graph the orders pairwise differ by an
    automorphism, and every automorphism (including reflections) arises.
    """
    best: list[int] | None = None
    orders: list[list[int]] = []
    for v0, w0 in _root_candidates(g):
        for step in (1, -1):
            code, order, cmp = _bfs_code(g, v0, w0, step, best)
            if cmp < 0:
                best = code
                orders = [order]
            elif cmp == 0:
                orders.append(order)
    return bytes(best), orders


def canonical_code(g: PlaneGraph) -> bytes:
    return canonical_form(g)[0]


def automorphisms(g: PlaneGraph) -> list[tuple[int, ...]]:
    """All automorphisms as vertex permutations; the identity comes first."""
    _, orders = canonical_form(g)
    base = orders[0]
    out = []
    for order in orders:
        perm = [0] * g.n
        for a, b in zip(base, order):
            perm[a] = b
        out.append(tuple(perm))
    ident = tuple(range(g.n))
    out.sort(key=lambda p: p != ident)
    return out


def edge_orbits(g: PlaneGraph) -> list[list[EdgeRef]]:
    """Edges grouped by automorphism orbit; orbits and members sorted."""
    perms = automorphisms(g)
    seen: set[EdgeRef] = set()
    orbits = []
    for e in g.edges():
        if e in seen:
            continue
        orbit = sorted({edge_ref(p[e[0]], p[e[1]]) for p in perms})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def decode_code(code: bytes) -> Rotation:
    """Rotation system (ids = label - 1) read back from a canonical code."""
    rot = []
    i = 0
    while i < len(code):
        d = code[i]
        rot.append(tuple(c - 1 for c in code[i + 1:i + 1 + d]))
        i += d + 1
    return tuple(rot)


def from_code(code: bytes) -> PlaneTriangulation:
    return PlaneTriangulation(decode_code(code))
