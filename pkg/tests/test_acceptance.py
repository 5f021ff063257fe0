"""Acceptance criteria, one test group per criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.  Orders 16 and 17 (and the 5-connected check on
them) need ``KEMPELOCK_EXTENDED=1`` and ``KEMPELOCK_CORPORA`` pointing at a
directory holding ``c4_16.pc`` and ``c4_17.pc``.
"""

import itertools
import os
import random
import time
from functools import lru_cache
from pathlib import Path

import pytest

from kempelock import fixtures
from kempelock.birkhoff import (
    birkhoff_diamond,
    endpoint_isomorphic,
    find_appearances,
    is_fundamental,
    locking_configuration,
)
from kempelock.census import check_conjecture, census_order, run_census, verify_certificate
from kempelock.coloring import enumerate_colorings, enumerate_identified, is_proper, partition, relabel_colors
from kempelock.connectivity import classify
from kempelock.generator import generate_all, sample_random
from kempelock.kempe import Verdict, chain_at, interchange, is_kempe_locked, two_color_path_blocked
from kempelock.plane_graph import PlaneTriangulation, canonical_code, delete_edge

from oracles import brute_partitions, brute_triangulation_count, flip_closure, vf2_appearances

N = fixtures.T12
CFG = birkhoff_diamond()
LOCKED_EDGES_SEEN = []


def criterion(num, text):
    return pytest.mark.criterion(num, text)


@lru_cache(maxsize=None)
def census(order, connectivity=4):
    start = time.perf_counter()
    (rec,) = run_census([order], connectivity)
    rec.wall = time.perf_counter() - start
    _remember(rec)
    return rec


def _remember(rec):
    for lt in rec.locked_triangulations:
        for c in lt.certificates:
            LOCKED_EDGES_SEEN.append((PlaneTriangulation(c.graph), tuple(c.locked_edge)))


def assert_single_edge_anchored(rec, count):
    assert rec.locked_count == count
    for lt in rec.locked_triangulations:
        assert len(lt.locked_edges) == 1, lt.code
        assert lt.diamond_anchored, lt.code
        for c in lt.certificates:
            assert verify_certificate(c), lt.code
    assert check_conjecture(rec).ok


# -- 1 ------------------------------------------------------------------------

C1 = criterion(1, "order 12: one locked triangulation, one edge, anchored diamond, K_xy = diamond")


@C1
def test_c1_order12():
    rec = census(12)
    assert rec.classes_examined == 87
    assert_single_edge_anchored(rec, 1)
    lt = rec.locked_triangulations[0]
    t = PlaneTriangulation(lt.certificates[0].graph)
    assert canonical_code(t) == canonical_code(fixtures.t12())
    k = locking_configuration(t, lt.locked_edges[0])
    assert k.order == 10 and endpoint_isomorphic(k, CFG)
    assert rec.wall <= 30 * 60


# -- 2 ------------------------------------------------------------------------

C2 = criterion(2, "orders 6-11 and 13: zero locked triangulations")


@C2
@pytest.mark.parametrize("order", [6, 7, 8, 9, 10, 11, 13])
def test_c2_none_below_12_or_at_13(order):
    rec = census(order)
    assert rec.classes_examined > 0
    assert rec.locked_count == 0
    assert rec.wall <= 60 * 60


# -- 3 ------------------------------------------------------------------------

C3 = criterion(3, "order 14: one locked triangulation, single edge, anchored")


@C3
def test_c3_order14():
    rec = census(14)
    assert rec.classes_examined == 1357
    assert_single_edge_anchored(rec, 1)
    assert rec.wall <= 4 * 3600


# -- 4 ------------------------------------------------------------------------

C4 = criterion(4, "T12 G_xy: 6 identified colourings, all three chains each, one with v=2 and 1-3-4-1")


@C4
def test_c4_six_colourings():
    t = fixtures.t12()
    g = delete_edge(t, (N["x"], N["y"]))
    cols = list(enumerate_identified(g))
    assert len(cols) == 6
    assert len({partition(c) for c in cols}) == 6
    assert {partition(c) for c in cols} == brute_partitions(g.n, g.edges(), (g.x, g.y))
    shaped = 0
    for c in cols:
        assert is_proper(g, c) and c[g.x] == c[g.y]
        k = c[g.x]
        for j in range(1, 5):
            if j != k:
                assert g.y in chain_at(g, c, g.x, (k, j))
        try:
            r = relabel_colors(c, {N["x"]: 1, N["v"]: 2, N["h2"]: 3, N["h3"]: 4})
        except ValueError:
            continue
        if [r[N[s]] for s in ("v", "x", "h2", "h3", "y")] == [2, 1, 3, 4, 1]:
            shaped += 1
    assert shaped >= 1


# -- 5 ------------------------------------------------------------------------

C5 = criterion(5, "icosahedron: 5-connected, 30 Birkhoff appearances, no locked edge")


@C5
def test_c5_icosahedron():
    t = fixtures.icosahedron()
    assert classify(t).level == 5
    assert len(find_appearances(t, CFG)) == 30
    assert len(vf2_appearances(t.to_networkx(), CFG)) == 30
    assert all(is_kempe_locked(t, e).verdict is Verdict.NOT_LOCKED for e in t.edges())
    rec = census_order(12, [t], 5, {"kind": "exhaustive"}, [CFG])
    rep = check_conjecture(rec)
    assert rep.ok and rep.locked_edges == 0 and rep.non_sufficiency_witnesses == 30


# -- 6 ------------------------------------------------------------------------

C6 = criterion(6, "orders 15-17: 1, 8, 14 locked, single-edge, anchored; orders 6-15 total 8044 classes")


@C6
def test_c6_order15_builtin():
    rec = census(15)
    assert rec.classes_examined == 6244
    assert_single_edge_anchored(rec, 1)


@C6
def test_c6_total_8044():
    total = sum(census(n).classes_examined for n in range(6, 16))
    assert total == 8044


def _corpus(name):
    root = os.environ.get("KEMPELOCK_CORPORA")
    if not root or not (Path(root) / name).exists():
        pytest.fail(f"extended tier needs KEMPELOCK_CORPORA with {name}")
    return Path(root) / name


@C6
@pytest.mark.extended
@pytest.mark.parametrize("order,classes,locked", [(16, 30926, 8), (17, 158428, 14)])
def test_c6_ingested(order, classes, locked):
    src = _corpus(f"c4_{order}.pc")
    (rec,) = run_census([order], 4, source=src, out_dir=src.parent / "results")
    _remember(rec)
    assert rec.mode["kind"] == "ingested"
    assert rec.classes_examined == classes
    assert_single_edge_anchored(rec, locked)
    for lt in rec.locked_triangulations:
        k = locking_configuration(PlaneTriangulation(lt.certificates[0].graph), lt.locked_edges[0])
        assert k.order == order - 2
    if order == 16:
        # a K_xy that is not fundamental because the diamond sits inside it
        assert any(not lt.fundamental for lt in rec.locked_triangulations)
        for lt in rec.locked_triangulations:
            k = locking_configuration(PlaneTriangulation(lt.certificates[0].graph), lt.locked_edges[0])
            assert lt.fundamental == is_fundamental(k, [CFG])


# -- 7 ------------------------------------------------------------------------

C7 = criterion(7, "5-connected census: zero locked edges")


@C7
@pytest.mark.parametrize("order,classes", [(12, 1), (13, 0), (14, 1), (15, 1)])
def test_c7_five_connected(order, classes):
    rec = census(order, 5)
    assert rec.classes_examined == classes
    assert rec.locked_count == 0
    assert check_conjecture(rec).locked_edges == 0


@C7
@pytest.mark.extended
@pytest.mark.parametrize("order", [16, 17])
def test_c7_five_connected_ingested(order):
    src = _corpus(f"c4_{order}.pc")
    (rec,) = run_census([order], 5, source=src, out_dir=src.parent / "results")
    assert rec.classes_examined > 0
    assert rec.locked_count == 0


# -- 8 ------------------------------------------------------------------------

C8 = criterion(8, "property suites: oracles, interchanges, appearances, canonical codes, counts, locked-edge checks")


@C8
def test_c8_coloring_oracle():
    mismatches = 0
    for n in range(4, 9):
        for t in generate_all(n):
            if {partition(c) for c in enumerate_colorings(t)} != brute_partitions(n, t.edges()):
                mismatches += 1
            for e in t.edges():
                g = delete_edge(t, e)
                got = [partition(c) for c in enumerate_identified(g)]
                if len(got) != len(set(got)) or set(got) != brute_partitions(n, g.edges(), (g.x, g.y)):
                    mismatches += 1
    assert mismatches == 0


@C8
def test_c8_interchanges():
    rng = random.Random(8)
    pool = []
    for n in range(6, 10):
        for t in generate_all(n):
            g = delete_edge(t, t.edges()[0])
            pool.append((g, list(itertools.islice(enumerate_identified(g), 20))))
            pool.append((t, list(itertools.islice(enumerate_colorings(t), 20))))
    failures = 0
    for _ in range(10_000):
        g, cs = rng.choice(pool)
        c = rng.choice(cs)
        v = rng.randrange(g.n)
        j = rng.choice([k for k in range(1, 5) if k != c[v]])
        ch = chain_at(g, c, v, (c[v], j))
        out = interchange(c, ch)
        if any(out[a] == out[b] for a, b in g.edges()) or interchange(out, ch) != tuple(c):
            failures += 1
    assert failures == 0


@C8
def test_c8_appearance_oracle():
    mismatches = 0
    for name in ("k4", "stacked_k4", "octahedron", "icosahedron", "t12"):
        t = getattr(fixtures, name)()
        got = {a.key() for a in find_appearances(t, CFG)}
        if got != vf2_appearances(t.to_networkx(), CFG):
            mismatches += 1
    assert mismatches == 0


@C8
def test_c8_canonical_code():
    failures = 0
    for name in ("k4", "stacked_k4", "octahedron", "icosahedron", "t12"):
        t = getattr(fixtures, name)()
        code = canonical_code(t)
        rng = random.Random(name)
        failures += canonical_code(t.reflected()) != code
        for _ in range(100):
            perm = list(range(t.n))
            rng.shuffle(perm)
            failures += canonical_code(t.relabeled(perm)) != code
    assert failures == 0


@C8
def test_c8_generator_counts():
    counts = [len(list(generate_all(n))) for n in range(4, 9)]
    assert counts == [1, 1, 2, 5, 14]
    assert counts == [len(flip_closure(n)) for n in range(4, 9)]
    assert counts[:3] == [brute_triangulation_count(n) for n in range(4, 7)]


@C8
def test_c8_locked_edge_invariants():
    for order in (12, 14, 15):
        census(order)
    assert LOCKED_EDGES_SEEN
    failures = 0
    for t, e in LOCKED_EDGES_SEEN:
        g = delete_edge(t, e)
        failures += t.degree(g.x) < 6 or t.degree(g.y) < 6
        for c in enumerate_identified(g):
            k = c[g.x]
            for pair in itertools.combinations([j for j in range(1, 5) if j != k], 2):
                failures += not two_color_path_blocked(g, c, pair)
    assert failures == 0


@C8
def test_c8_reinsertion():
    rng = random.Random(88)
    graphs = [t for n in range(6, 13) for t in generate_all(n, 4)]
    graphs += rng.sample(list(generate_all(14, 4)), 100)
    checked = failures = 0
    for t in graphs:
        for e in t.edges():
            res = is_kempe_locked(t, e)
            if res.verdict is not Verdict.NOT_LOCKED:
                continue
            g = delete_edge(t, e)
            d = interchange(res.witness, res.chain)
            if d[g.x] == d[g.y] or any(d[a] == d[b] for a, b in t.edges()):
                failures += 1
            checked += 1
    assert checked > 5000 and failures == 0


# -- 9 ------------------------------------------------------------------------

C9 = criterion(9, "seeded samples at orders 18-20: every lock anchored, zero conjecture violations")


@C9
@pytest.mark.parametrize("order", [18, 19, 20])
def test_c9_samples(order):
    graphs = list(sample_random(order, 1000, seed=order, connectivity=4))
    again = [canonical_code(t) for t in sample_random(order, 1000, seed=order, connectivity=4)]
    assert [canonical_code(t) for t in graphs] == again
    rec = census_order(order, graphs, 4, {"kind": "sampled", "seed": order, "count": 1000}, [CFG])
    _remember(rec)
    assert rec.classes_examined == 1000
    rep = check_conjecture(rec)
    assert rep.ok and rep.violations == []
    for lt in rec.locked_triangulations:
        assert lt.diamond_anchored
        assert all(verify_certificate(c) for c in lt.certificates)

