"""Isomorph-free generation of plane triangulations by vertex splitting.

Every simple triangulation on n >= 5 vertices contracts, along some edge, to a
triangulation on n - 1 vertices, so closing over all splits of all parents and
rejecting duplicates by canonical code is complete.  The 4-connected family is
grown separately from the octahedron: a 4-connected triangulation other than
the octahedron always has an edge whose contraction stays 4-connected
(Martinov's theorem on 4-contractible edges), so only 4-connected parents and
splits whose new vertices both get degree >= 4 are needed.
"""

from __future__ import annotations

import logging
import random
from typing import Iterator

from .connectivity import connectivity_level, has_separating_quad, has_separating_triangle
from .errors import ExhaustedRetries, InvalidSplit, OrderTooLarge
from .fixtures import k4, octahedron
from .plane_graph import PlaneTriangulation, canonical_code, decode_code

log = logging.getLogger(__name__)

# exhaustive generation bounds (by minimum connectivity) for desk-scale runs
EXHAUSTIVE_BOUND = {3: 12, 4: 17, 5: 17}


def _split_rotation(rotation, v: int, i: int, j: int) -> list[tuple[int, ...]]:
    """Split ``v`` at rotation positions ``i < j``; the new vertex gets id ``n``."""
    n = len(rotation)
    nbrs = rotation[v]
    a, b = nbrs[i], nbrs[j]
    arc_a = nbrs[i + 1:j]
    arc_b = nbrs[j + 1:] + nbrs[:i]
    rot = list(rotation)
    rot[v] = (a,) + arc_a + (b, n)
    rot.append((b,) + arc_b + (a, v))
    ra = rot[a]
    k = ra.index(v)
    rot[a] = ra[:k] + (v, n) + ra[k + 1:]
    rb = rot[b]
    k = rb.index(v)
    rot[b] = rb[:k] + (n, v) + rb[k + 1:]
    for w in arc_b:
        rw = rot[w]
        k = rw.index(v)
        rot[w] = rw[:k] + (n,) + rw[k + 1:]
    return rot


def split_vertex(t: PlaneTriangulation, v: int, a: int, b: int) -> PlaneTriangulation:
    """Replace ``v`` by adjacent ``v`` and ``n``, both adjacent to ``a`` and ``b``.

    ``v`` keeps the neighbours strictly between ``a`` and ``b`` in its
    rotation, the new vertex takes the others.  An empty arc is allowed and
    yields a degree-3 vertex.
    """
    if a == b or a not in t.adj[v] or b not in t.adj[v]:
        raise InvalidSplit(f"({a}, {b}) are not two distinct neighbours of {v}")
    i, j = t._pos[v][a], t._pos[v][b]
    rot = t.rotation
    if i > j:
        # rotate so a comes first without changing the cyclic order
        d = len(rot[v])
        shifted = rot[v][i:] + rot[v][:i]
        rot = list(rot)
        rot[v] = shifted
        i, j = 0, (j - i) % d
    return PlaneTriangulation(_split_rotation(rot, v, i, j))


def _children(rotation, min_arc: int) -> Iterator[list[tuple[int, ...]]]:
    for v, nbrs in enumerate(rotation):
        d = len(nbrs)
        for i in range(d):
            for j in range(i + 1 + min_arc, d):
                if i + d - j - 1 < min_arc:
                    continue
                yield _split_rotation(rotation, v, i, j)


def _next_level(parent_codes, min_arc: int, four_connected: bool) -> list[bytes]:
    seen: set[bytes] = set()
    for code in parent_codes:
        rotation = decode_code(code)
        for rot in _children(rotation, min_arc):
            child = PlaneTriangulation.trusted(rot)
            if four_connected and has_separating_triangle(child):
                continue
            seen.add(canonical_code(child))
    return sorted(seen)


class Generator:
    """Level-by-level closure under vertex splitting, cached per family.

    Levels are kept as sorted lists of canonical codes, which double as a
    compact encoding of the graphs themselves.
    """

    def __init__(self):
        self._levels: dict[str, dict[int, list[bytes]]] = {
            "all": {4: [canonical_code(k4())]},
            "c4": {6: [canonical_code(octahedron())]},
        }

    def codes(self, family: str, n: int) -> list[bytes]:
        levels = self._levels[family]
        base = min(levels)
        if n < base:
            return []
        top = max(k for k in levels if k <= n)
        while top < n:
            log.info("generating %s triangulations of order %d", family, top + 1)
            if family == "c4":
                levels[top + 1] = _next_level(levels[top], 1, True)
            else:
                levels[top + 1] = _next_level(levels[top], 0, False)
            top += 1
        return levels[n]

    def generate(self, order: int, connectivity: int = 3) -> Iterator[PlaneTriangulation]:
        if connectivity <= 3:
            for code in self.codes("all", order):
                yield PlaneTriangulation.trusted(decode_code(code))
            return
        for code in self.codes("c4", order):
            t = PlaneTriangulation.trusted(decode_code(code))
            if connectivity >= 5 and has_separating_quad(t):
                continue
            yield t


_default = Generator()


def generate_all(order: int, connectivity_filter: int = 3, *, max_order: int | None = None,
                 generator: Generator | None = None) -> Iterator[PlaneTriangulation]:
    """One triangulation per isomorphism class of the given order, sorted by canonical code.

    ``connectivity_filter`` is the minimum connectivity (3 = no filter).
    """
    level = max(3, min(connectivity_filter, 5))
    bound = max_order if max_order is not None else EXHAUSTIVE_BOUND[level]
    if order > bound:
        raise OrderTooLarge(f"order {order} exceeds exhaustive bound {bound} at connectivity {level}")
    if order < 4:
        return iter(())
    return (generator or _default).generate(order, level)


def random_split(t: PlaneTriangulation, rng: random.Random, min_arc: int = 0) -> PlaneTriangulation:
    rot = t.rotation
    while True:
        v = rng.randrange(t.n)
        d = len(rot[v])
        i, j = sorted(rng.sample(range(d), 2))
        if j - i - 1 >= min_arc and i + d - j - 1 >= min_arc:
            return PlaneTriangulation.trusted(_split_rotation(rot, v, i, j))


def random_triangulation(order: int, rng: random.Random, connectivity: int = 3) -> PlaneTriangulation:
    """Random walk of splits from K4 (or the octahedron for connectivity >= 4)."""
    if connectivity >= 4:
        if order < 6:
            raise ExhaustedRetries(f"no 4-connected triangulation of order {order}")
        t = octahedron()
        while t.n < order:
            child = random_split(t, rng, 1)
            if not has_separating_triangle(child):
                t = child
        return t
    t = k4()
    while t.n < order:
        t = random_split(t, rng)
    return t


def sample_random(order: int, count: int, seed: int, connectivity: int = 3,
                  max_tries: int | None = None) -> Iterator[PlaneTriangulation]:
    """``count`` pairwise non-isomorphic triangulations; same seed, same stream.

    The distribution over classes is whatever the split walk produces; it is
    not uniform.  Graphs below the requested connectivity are resampled.
    """
    if order < 4 or count < 1:
        raise ValueError("need order >= 4 and count >= 1")
    rng = random.Random(seed)
    tries = max_tries if max_tries is not None else 50 * count + 200
    seen: set[bytes] = set()
    emitted = 0
    for _ in range(tries):
        t = random_triangulation(order, rng, connectivity)
        if connectivity >= 5 and connectivity_level(t) < 5:
            continue
        code = canonical_code(t)
        if code in seen:
            continue
        seen.add(code)
        emitted += 1
        yield PlaneTriangulation(t.rotation)
        if emitted == count:
            return
    raise ExhaustedRetries(f"found only {emitted} of {count} distinct classes in {tries} tries")
