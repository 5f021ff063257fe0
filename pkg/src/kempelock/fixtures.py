"""Named triangulations used throughout tests, examples and the CLI."""

from __future__ import annotations

from functools import lru_cache

from .plane_graph import PlaneTriangulation, triangulation_from_edges

# Vertex names of the order-12 Kempe-locked triangulation.  The Birkhoff
# diamond occupies x (= h1), h2, h3, y (= h4), h5, h6 and d1..d4; u and v
# are the apexes flanking the locked edge xy.
T12_NAMES = ("x", "y", "u", "v", "h2", "h3", "h5", "h6", "d1", "d2", "d3", "d4")
T12 = {name: i for i, name in enumerate(T12_NAMES)}

# ring h1..h6 with h1 = x and h4 = y
DIAMOND_RING = ("x", "h2", "h3", "y", "h5", "h6")
DIAMOND_EDGES = (
    ("x", "h2"), ("h2", "h3"), ("h3", "y"), ("y", "h5"), ("h5", "h6"), ("h6", "x"),
    ("d1", "d2"), ("d2", "d3"), ("d3", "d4"), ("d4", "d1"), ("d2", "d4"),
    ("d1", "h6"), ("d1", "x"), ("d1", "h2"),
    ("d2", "h2"), ("d2", "h3"),
    ("d3", "h3"), ("d3", "y"), ("d3", "h5"),
    ("d4", "h5"), ("d4", "h6"),
)
T12_EXTRA_EDGES = (
    ("v", "x"), ("v", "h2"), ("v", "h3"), ("v", "y"),
    ("u", "x"), ("u", "h6"), ("u", "h5"), ("u", "y"),
    ("x", "y"),
)


@lru_cache(maxsize=None)
def k4() -> PlaneTriangulation:
    return PlaneTriangulation([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])


@lru_cache(maxsize=None)
def octahedron() -> PlaneTriangulation:
    import networkx as nx

    return triangulation_from_edges(nx.octahedral_graph().edges())


@lru_cache(maxsize=None)
def icosahedron() -> PlaneTriangulation:
    import networkx as nx

    return triangulation_from_edges(nx.icosahedral_graph().edges())


@lru_cache(maxsize=None)
def stacked_k4() -> PlaneTriangulation:
    """K4 with a degree-3 vertex inserted in one face (the unique order-5 triangulation)."""
    return triangulation_from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (4, 2)])


@lru_cache(maxsize=None)
def t12() -> PlaneTriangulation:
    """The order-12 triangulation Kempe-locked at edge ``(T12['x'], T12['y'])``."""
    edges = [(T12[a], T12[b]) for a, b in DIAMOND_EDGES + T12_EXTRA_EDGES]
    return triangulation_from_edges(edges, n=12)
