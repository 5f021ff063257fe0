import random

import networkx as nx
import pytest

from kempelock import fixtures
from kempelock.connectivity import connectivity_level
from kempelock.errors import ExhaustedRetries, InvalidSplit, OrderTooLarge
from kempelock.generator import EXHAUSTIVE_BOUND, generate_all, sample_random, split_vertex
from kempelock.plane_graph import canonical_code, contract_edge

from oracles import brute_triangulation_count, flip_closure

UNFILTERED = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14, 9: 50, 10: 233}
FOUR_CONNECTED = {6: 1, 7: 1, 8: 2, 9: 4, 10: 10, 11: 25, 12: 87, 13: 313, 14: 1357}


def test_split_k4(k4):
    target = canonical_code(fixtures.stacked_k4())
    for v in range(4):
        for a in k4.rotation[v]:
            for b in k4.rotation[v]:
                if a != b:
                    assert canonical_code(split_vertex(k4, v, a, b)) == target


def test_split_octahedron_valid(octa):
    for v in range(octa.n):
        rot = octa.rotation[v]
        for a in rot:
            for b in rot:
                if a == b:
                    continue
                t = split_vertex(octa, v, a, b)
                assert t.n == 7
                # rebuild independently from the edge set
                g = t.to_networkx()
                assert g.number_of_edges() == 15 and nx.check_planarity(g)[0]


def test_split_then_contract_roundtrip(t12):
    code = canonical_code(t12)
    rng = random.Random(0)
    for _ in range(50):
        v = rng.randrange(12)
        a, b = rng.sample(list(t12.rotation[v]), 2)
        s = split_vertex(t12, v, a, b)
        new = s.n - 1
        assert s.has_edge(v, new)
        assert canonical_code(contract_edge(s, (v, new))) == code


def test_split_invalid(t12):
    with pytest.raises(InvalidSplit):
        split_vertex(t12, 0, 2, 2)
    far = next(w for w in range(12) if w != 0 and not t12.has_edge(0, w))
    with pytest.raises(InvalidSplit):
        split_vertex(t12, 0, far, t12.rotation[0][0])


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_counts_vs_flip_closure(n):
    assert len(list(generate_all(n))) == UNFILTERED[n] == len(flip_closure(n))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_counts_vs_edge_subset_scan(n):
    assert len(list(generate_all(n))) == brute_triangulation_count(n)


def test_counts_9_10_vs_flip_closure():
    assert len(list(generate_all(9))) == 50 == len(flip_closure(9))
    assert len(list(generate_all(10))) == 233


def test_order_6_filters():
    assert len(list(generate_all(6, 4))) == 1
    assert canonical_code(next(generate_all(6, 4))) == canonical_code(fixtures.octahedron())


def test_icosahedron_unique_5_connected():
    out = list(generate_all(12, 5))
    assert len(out) == 1
    assert canonical_code(out[0]) == canonical_code(fixtures.icosahedron())


@pytest.mark.parametrize("n", range(6, 13))
def test_four_connected_counts(n):
    assert len(list(generate_all(n, 4))) == FOUR_CONNECTED[n]


def test_four_connected_family_matches_filtered_full():
    # the 4-connected family is grown separately; it must equal the filtered full list
    for n in range(6, 11):
        full = sorted(canonical_code(t) for t in generate_all(n) if connectivity_level(t) >= 4)
        fast = [canonical_code(t) for t in generate_all(n, 4)]
        assert full == fast


def test_emitted_graphs_valid_and_distinct():
    for n in range(5, 11):
        codes = []
        for t in generate_all(n, 4 if n >= 6 else 3):
            assert t.edge_count() == 3 * n - 6
            assert all(len(f) == 3 for f in t.faces())
            if n >= 6:
                assert connectivity_level(t) >= 4
            codes.append(canonical_code(t))
        assert codes == sorted(set(codes))


def test_order_too_large():
    with pytest.raises(OrderTooLarge):
        next(generate_all(EXHAUSTIVE_BOUND[3] + 1))


def test_sample_k4():
    assert canonical_code(next(sample_random(4, 1, seed=11))) == canonical_code(fixtures.k4())


def test_sample_exhausted():
    with pytest.raises(ExhaustedRetries):
        list(sample_random(4, 2, seed=0))


def test_sample_deterministic():
    a = [canonical_code(t) for t in sample_random(14, 100, seed=7)]
    b = [canonical_code(t) for t in sample_random(14, 100, seed=7)]
    assert a == b
    assert len(set(a)) == 100


def test_sample_respects_connectivity():
    for t in sample_random(13, 20, seed=5, connectivity=4):
        assert connectivity_level(t) >= 4
