"""Configurations, the Birkhoff diamond, appearance detection and K_xy extraction.

A configuration appears in a host when there is an injective, edge-preserving
map sending every interior vertex to a host vertex of exactly its pinned
degree.  Since an interior vertex's configuration degree equals its pinned
degree, its whole host neighbourhood then lies inside the image.  Ring
vertices may have arbitrary further neighbours, and extra host edges between
image vertices are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import NotLockedInput
from .kempe import LockResult, locking_test
from .plane_graph import PlaneGraph, PlaneTriangulation, delete_edge, delete_vertices

CONFIGURATION = "configuration"
SUBGRAPH = "subgraph"


@dataclass(frozen=True)
class Configuration:
    """Near-triangulation with a ring, pinned interior degrees and two endpoints.

    Vertices are ``0..order-1``; ``names`` gives display names and
    ``labels`` the host ids a configuration was cut out from (if any).
    """

    order: int
    ring: tuple[int, ...]
    interior: tuple[tuple[int, int], ...]  # (vertex, pinned degree)
    edges: frozenset[tuple[int, int]]
    endpoints: tuple[int, int]
    names: tuple[str, ...] = ()
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.order)]
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return tuple(frozenset(s) for s in nb)

    @property
    def pinned(self) -> dict[int, int]:
        return dict(self.interior)

    def name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def host_degrees(self) -> list[int]:
        """Degrees a host-side search sees: pinned for interior vertices, unknown (-1) on the ring."""
        deg = [-1] * self.order
        for v, d in self.interior:
            deg[v] = d
        return deg


@dataclass(frozen=True)
class Appearance:
    map: tuple[int, ...]  # configuration vertex -> host vertex
    endpoints: tuple[int, int]  # host images of the configuration endpoints

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def key(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.image, frozenset(self.endpoints)

    def as_dict(self, cfg: Configuration) -> dict[str, int]:
        return {cfg.name(c): h for c, h in enumerate(self.map)}


def birkhoff_diamond() -> Configuration:
    """Ring h1..h6 (h1, h4 the endpoints) around four degree-5 vertices d1..d4
    forming the central diamond with diagonal d2d4."""
    names = ("h1", "h2", "h3", "h4", "h5", "h6", "d1", "d2", "d3", "d4")
    ix = {s: i for i, s in enumerate(names)}
    pairs = [
        ("h1", "h2"), ("h2", "h3"), ("h3", "h4"), ("h4", "h5"), ("h5", "h6"), ("h6", "h1"),
        ("d1", "d2"), ("d2", "d3"), ("d3", "d4"), ("d4", "d1"), ("d2", "d4"),
        ("d1", "h6"), ("d1", "h1"), ("d1", "h2"),
        ("d2", "h2"), ("d2", "h3"),
        ("d3", "h3"), ("d3", "h4"), ("d3", "h5"),
        ("d4", "h5"), ("d4", "h6"),
    ]
    edges = frozenset(tuple(sorted((ix[a], ix[b]))) for a, b in pairs)
    return Configuration(
        order=10,
        ring=tuple(range(6)),
        interior=tuple((ix[d], 5) for d in ("d1", "d2", "d3", "d4")),
        edges=edges,
        endpoints=(ix["h1"], ix["h4"]),
        names=names,
    )


def central_diamond_edges(cfg: Configuration) -> list[tuple[int, int]]:
    """Edges joining two interior vertices."""
    inner = cfg.pinned
    return sorted(e for e in cfg.edges if e[0] in inner and e[1] in inner)


def _search_order(cfg: Configuration, adj, first: Sequence[int]) -> list[int]:
    pinned = cfg.pinned
    order = list(first)
    placed = set(order)
    if not order:
        start = max(range(cfg.order), key=lambda c: (c in pinned, sum(w in pinned for w in adj[c]), len(adj[c]), -c))
        order.append(start)
        placed.add(start)
    while len(order) < cfg.order:
        best = max(
            (c for c in range(cfg.order) if c not in placed),
            key=lambda c: (sum(w in placed for w in adj[c]), c in pinned, len(adj[c]), -c),
        )
        order.append(best)
        placed.add(best)
    return order


def _match(cfg: Configuration, host_adj: Sequence[frozenset[int]], host_deg: Sequence[int],
           anchor: tuple[int, int] | None, semantics: str) -> Iterator[tuple[int, ...]]:
    """Every injective edge-preserving map (with degree pins unless ``semantics`` is subgraph)."""
    adj = cfg.adj
    pinned = cfg.pinned if semantics == CONFIGURATION else {}
    nh = len(host_adj)
    if cfg.order > nh:
        return
    ex, ey = cfg.endpoints
    seeds: list[dict[int, int]]
    if anchor is not None:
        x, y = anchor
        seeds = [{ex: x, ey: y}, {ex: y, ey: x}]
        first: Sequence[int] = (ex, ey)
    else:
        seeds = [{}]
        first = ()
    order = _search_order(cfg, adj, first)
    k0 = len(first)
    # for each position: configuration neighbours placed earlier
    back = [[w for w in adj[c] if w in set(order[:i])] for i, c in enumerate(order)]

    for seed in seeds:
        ok = True
        for c, h in seed.items():
            if c in pinned and host_deg[h] != pinned[c]:
                ok = False
        if k0 == 2 and (ey in adj[ex]) and seed[ey] not in host_adj[seed[ex]]:
            ok = False
        if not ok:
            continue
        mapping = dict(seed)
        used = set(seed.values())

        def extend(i: int) -> Iterator[tuple[int, ...]]:
            if i == cfg.order:
                yield tuple(mapping[c] for c in range(cfg.order))
                return
            c = order[i]
            nbrs = back[i]
            if nbrs:
                pivot = min((mapping[w] for w in nbrs), key=lambda h: len(host_adj[h]))
                cands = host_adj[pivot]
            else:
                cands = range(nh)
            want = pinned.get(c)
            for h in cands:
                if h in used:
                    continue
                if want is not None and host_deg[h] != want:
                    continue
                ha = host_adj[h]
                if any(mapping[w] not in ha for w in nbrs):
                    continue
                mapping[c] = h
                used.add(h)
                yield from extend(i + 1)
                used.discard(h)
                del mapping[c]

        yield from extend(k0)


def _dedup(cfg: Configuration, maps: Iterator[tuple[int, ...]]) -> list[Appearance]:
    ex, ey = cfg.endpoints
    seen = set()
    out = []
    for m in maps:
        app = Appearance(m, (m[ex], m[ey]))
        k = app.key()
        if k not in seen:
            seen.add(k)
            out.append(app)
    out.sort(key=lambda a: (sorted(a.image), sorted(a.endpoints), a.map))
    return out


def find_appearances(t: PlaneGraph, cfg: Configuration, anchor: tuple[int, int] | None = None,
                     semantics: str = CONFIGURATION) -> list[Appearance]:
    """All appearances of ``cfg`` in ``t``, one per (image, endpoint pair).

    With ``anchor = (x, y)`` only appearances sending the endpoints onto
    ``{x, y}`` (either way round) are returned.
    """
    if anchor is not None and anchor[0] == anchor[1]:
        raise ValueError("anchor endpoints must differ")
    return _dedup(cfg, _match(cfg, t.adj, t.degrees(), anchor, semantics))


def has_appearance(t: PlaneGraph, cfg: Configuration, anchor: tuple[int, int] | None = None) -> bool:
    return next(_match(cfg, t.adj, t.degrees(), anchor, CONFIGURATION), None) is not None


def check_appearance(t: PlaneGraph, cfg: Configuration, mapping: Sequence[int]) -> list[str]:
    """Reasons ``mapping`` is not an appearance of ``cfg`` in ``t`` (empty if it is)."""
    problems = []
    if len(mapping) != cfg.order:
        return [f"map has {len(mapping)} entries, configuration has {cfg.order}"]
    if any(not 0 <= h < t.n for h in mapping):
        return ["map leaves the host's vertex range"]
    if len(set(mapping)) != len(mapping):
        problems.append("map is not injective")
    for a, b in sorted(cfg.edges):
        if mapping[b] not in t.adj[mapping[a]]:
            problems.append(f"edge {cfg.name(a)}-{cfg.name(b)} not mapped to a host edge")
    image = set(mapping)
    for c, d in cfg.interior:
        h = mapping[c]
        if t.degree(h) != d:
            problems.append(f"{cfg.name(c)} maps to degree-{t.degree(h)} vertex, pinned {d}")
        elif not t.adj[h] <= image:
            problems.append(f"neighbourhood of {cfg.name(c)} leaves the image")
    return problems


def ring_of(g, x: int, y: int, apex: int) -> list[int]:
    """Neighbours of ``apex`` strictly between ``x`` and ``y`` on the side away from edge xy."""
    rot = g.rotation[apex]
    d = len(rot)
    i = rot.index(x)
    step = -1 if rot[(i + 1) % d] == y else 1
    out = []
    k = (i + step) % d
    while rot[k] != y:
        out.append(rot[k])
        k = (k + step) % d
    return out


def locking_configuration(t: PlaneTriangulation, e: tuple[int, int]) -> Configuration:
    """``G_xy`` minus ``u`` and ``v`` as a configuration (no locking check)."""
    g = delete_edge(t, e)
    u, x, v, y = g.boundary
    k = delete_vertices(g, (u, v))
    new = {old: i for i, old in enumerate(k.labels)}
    upper = ring_of(t, x, y, v)
    lower = ring_of(t, y, x, u)
    ring = tuple(new[w] for w in [x, *upper, y, *lower])
    boundary = {x, y, *upper, *lower}
    interior = tuple((new[w], t.degree(w)) for w in k.labels if w not in boundary)
    return Configuration(
        order=k.n,
        ring=ring,
        interior=interior,
        edges=frozenset(k.edges()),
        endpoints=(new[x], new[y]),
        names=tuple(str(w) for w in k.labels),
        labels=k.labels,
    )


def extract_locking_configuration(t: PlaneTriangulation, e: tuple[int, int],
                                  result: LockResult | None = None) -> Configuration:
    if result is None:
        result = locking_test(delete_edge(t, e))
    if not result.locked:
        raise NotLockedInput(f"edge {e} is {result.verdict.value}")
    return locking_configuration(t, e)


def _config_appears_in(small: Configuration, big: Configuration, anchored: bool = True) -> bool:
    anchor = big.endpoints if anchored else None
    return next(_match(small, big.adj, big.host_degrees(), anchor, CONFIGURATION), None) is not None


def endpoint_isomorphic(a: Configuration, b: Configuration) -> bool:
    """Isomorphism sending endpoints to endpoints and interior (with pins) to interior."""
    if a.order != b.order or len(a.edges) != len(b.edges):
        return False
    if sorted(d for _, d in a.interior) != sorted(d for _, d in b.interior):
        return False
    return _config_appears_in(a, b)


def is_fundamental(k: Configuration, catalog: Sequence[Configuration]) -> bool:
    """No strictly smaller catalog member appears in ``k`` endpoints-to-endpoints."""
    return not any(m.order < k.order and _config_appears_in(m, k) for m in catalog)
