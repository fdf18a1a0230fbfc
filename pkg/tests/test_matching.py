"""Greedy reductions, contraction replay, blossom augmentation."""

import itertools
import random

import pytest

from oracles import (
    complete_graph,
    cube_graph,
    dual_by_shared_vertices,
    max_matching_size,
    path_graph,
    petersen_graph,
    unmatched_cycles,
)
from singlestrip.boundary import gen_mk
from singlestrip.generators import octahedron, tetrahedron, torus
from singlestrip.matching import (
    MatchingError,
    blossom_maximum_matching,
    greedy_reduce,
    perfect_match_dual,
    replay_reductions,
    validate_matching,
    _greedy_consume,
    _adjacency,
)
from singlestrip.mesh import build_dual


def test_greedy_reduce_path4_all_forced():
    reduced, partner, log = greedy_reduce(path_graph(4))
    assert reduced == {}
    assert partner == {0: 1, 1: 0, 2: 3, 3: 2}


def test_greedy_reduce_m2_dual_tree_is_maximum():
    mesh = gen_mk(2)
    dual = build_dual(mesh)
    reduced, partner, log = greedy_reduce(dual)
    assert reduced == {}
    full = replay_reductions(partner, log)
    validate_matching(dual, full)
    assert len(full) // 2 == max_matching_size(dual_by_shared_vertices(mesh))


def test_greedy_reduce_cube_graph_no_move():
    reduced, partner, log = greedy_reduce(cube_graph())
    assert {v: set(ns) for v, ns in reduced.items()} == cube_graph()
    assert partner == {}
    assert log == []


def test_greedy_reduce_postcondition_random():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(2, 12)
        adj = {i: set() for i in range(n)}
        for i, j in itertools.combinations(range(n), 2):
            if rng.random() < 0.3:
                adj[i].add(j)
                adj[j].add(i)
        reduced, partner, log = greedy_reduce(adj)
        assert all(len(ns) >= 3 for ns in reduced.values())
        # replay must lift any maximum matching of the reduced graph to a
        # valid matching of the input of the same total size
        sub = blossom_maximum_matching(reduced) if reduced else {}
        lifted = replay_reductions({**partner, **sub}, log)
        validate_matching(adj, lifted)
        assert len(lifted) // 2 == max_matching_size(adj)


@pytest.mark.parametrize(
    "graph,size",
    [
        (complete_graph(4), 2),
        (petersen_graph(), 5),
        (cube_graph(), 4),
    ],
)
def test_blossom_from_empty_matches_bruteforce(graph, size):
    assert max_matching_size(graph) == size  # freeze the oracle value
    match = blossom_maximum_matching(graph)
    validate_matching(graph, match)
    assert len(match) // 2 == size


def test_blossom_oracle_equivalence_random_graphs():
    rng = random.Random(23)
    for _ in range(250):
        n = rng.randint(2, 12)
        adj = {i: set() for i in range(n)}
        for i, j in itertools.combinations(range(n), 2):
            if rng.random() < rng.choice((0.15, 0.3, 0.6)):
                adj[i].add(j)
                adj[j].add(i)
        match = blossom_maximum_matching(adj)
        validate_matching(adj, match)
        assert len(match) // 2 == max_matching_size(adj)


def test_blossom_respects_seed():
    graph = cube_graph()
    seed = {0: 1, 1: 0}
    match = blossom_maximum_matching(graph, seed)
    assert match[0] == 1
    assert len(match) // 2 == 4


def test_blossom_rejects_invalid_seed():
    with pytest.raises(MatchingError):
        blossom_maximum_matching(path_graph(4), {0: 2, 2: 0})


def test_greedy_consume_is_maximal():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(2, 14)
        adj = {i: set() for i in range(n)}
        for i, j in itertools.combinations(range(n), 2):
            if rng.random() < 0.35:
                adj[i].add(j)
                adj[j].add(i)
        partner, log, _picks = _greedy_consume({v: set(ns) for v, ns in adj.items()})
        lifted = replay_reductions(partner, log)
        validate_matching(adj, lifted)
        # maximal: no edge joins two unmatched nodes
        unmatched = set(adj) - set(lifted)
        for v in unmatched:
            assert not (adj[v] & unmatched)


def test_perfect_match_tetra_leaves_one_4cycle(tetra):
    dual = build_dual(tetra)
    state = perfect_match_dual(dual)
    assert state.partner.keys() == set(dual.nodes())
    cycles = unmatched_cycles({t: set(dual.neighbors(t)) for t in dual.nodes()}, state.partner)
    assert [len(c) for c in cycles] == [4]


def test_k4_every_perfect_matching_leaves_a_4cycle():
    from oracles import all_perfect_matchings

    k4 = complete_graph(4)
    matchings = all_perfect_matchings(k4)
    assert len(matchings) == 3
    for partner in matchings:
        cycles = unmatched_cycles(k4, partner)
        assert [len(c) for c in cycles] == [4]


def test_perfect_match_octahedron(octa):
    state = perfect_match_dual(build_dual(octa))
    assert state.size == 4


def test_perfect_match_torus400(torus400):
    dual = build_dual(torus400)
    state = perfect_match_dual(dual)
    assert state.size == 200
    validate_matching(dual, state.partner)


def test_perfect_match_rejects_tree_dual():
    dual = build_dual(gen_mk(2))
    with pytest.raises(MatchingError) as info:
        perfect_match_dual(dual)
    assert info.value.unmatched


def test_augmentation_accounting():
    mesh = torus(12, 9)
    dual = build_dual(mesh)
    state = perfect_match_dual(dual)
    assert state.augmentations == (dual.n - state.greedy_matched) // 2


def test_greedy_coverage_on_large_torus():
    mesh = torus(100, 60)  # 12000 triangles
    dual = build_dual(mesh)
    state = perfect_match_dual(dual)
    coverage = state.greedy_matched / dual.n
    assert coverage >= 0.95
    print(f"greedy coverage on torus(100,60): {coverage:.4f}")


def test_determinism():
    dual = build_dual(torus(10, 8))
    a = perfect_match_dual(dual).partner
    b = perfect_match_dual(build_dual(torus(10, 8))).partner
    assert a == b
