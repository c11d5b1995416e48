import random

import pytest

from graphbase.analysis import is_acyclic
from graphbase.analysis.components import connected_components
from graphbase.errors import FilterExhausted
from graphbase.generators import (MutationConfig, SuitabilityFilter,
                                  connect_randomly, dedup_labeled,
                                  eliminate_cycles, mutate_rome,
                                  sanitize_north)
from graphbase.model import build_graph, labeled_signature, structurally_equal

from corpus import random_digraph
from oracles import brute_force_min_inversions


def cycle_graph(n):
    ids = [str(i + 1) for i in range(n)]
    return build_graph(False, ids,
                       [(ids[i], ids[(i + 1) % n]) for i in range(n)])


def directed_cycle(ids):
    return build_graph(True, ids,
                       [(ids[i], ids[(i + 1) % len(ids)])
                        for i in range(len(ids))])


# --- mutation generator ------------------------------------------------------

def test_mutate_outputs_connected_and_within_bounds():
    cfg = MutationConfig(rounds=50, ops_per_round=6, rng_seed=7,
                         size_bounds=(10, 100))
    outputs = mutate_rome(cycle_graph(10), cfg)
    assert len(outputs) == 50
    for g in outputs:
        assert 10 <= g.node_count <= 100
        assert len(connected_components(g)) == 1


def test_mutate_zero_ops_is_identity():
    seed = cycle_graph(10)
    cfg = MutationConfig(rounds=3, ops_per_round=0, rng_seed=1)
    for g in mutate_rome(seed, cfg):
        assert structurally_equal(g, seed)


def test_mutate_deterministic():
    cfg = MutationConfig(rounds=20, ops_per_round=5, rng_seed=99)
    a = mutate_rome(cycle_graph(12), cfg)
    b = mutate_rome(cycle_graph(12), cfg)
    assert [labeled_signature(g) for g in a] == \
        [labeled_signature(g) for g in b]
    assert all(structurally_equal(x, y) for x, y in zip(a, b))


def test_mutate_filter_exhausted():
    # impossible size window below the seed size with removal disabled
    cfg = MutationConfig(rounds=1, ops_per_round=1, rng_seed=0,
                         size_bounds=(20, 100), max_retries=5,
                         op_probabilities=(1.0, 0.0, 0.0, 0.0, 0.0))
    with pytest.raises(FilterExhausted):
        mutate_rome(cycle_graph(10), cfg)


def test_mutate_respects_own_filter():
    filt = SuitabilityFilter(require_connected=True,
                             density_bounds=(0.0, 0.5),
                             max_degree_seq_distance=1.5)
    cfg = MutationConfig(rounds=30, ops_per_round=4, rng_seed=3,
                         size_bounds=(8, 40), filter=filt)
    for g in mutate_rome(cycle_graph(10), cfg):
        n, m = g.node_count, len(g.simple_undirected_edges())
        assert 2 * m / (n * (n - 1)) <= 0.5


def test_mutate_rejects_directed_or_disconnected_seed():
    with pytest.raises(ValueError):
        mutate_rome(build_graph(True, ["a", "b"], [("a", "b")]),
                    MutationConfig())
    with pytest.raises(ValueError):
        mutate_rome(build_graph(False, ["a", "b"], []), MutationConfig())


# --- dedup ---------------------------------------------------------------

def test_dedup_keeps_first_of_permuted_pair():
    g = build_graph(False, [("1", "a"), ("2", "b"), ("3", "c")],
                    [("1", "2"), ("2", "3")])
    permuted = build_graph(False, [("3", "c"), ("1", "a"), ("2", "b")],
                           [("2", "3"), ("1", "2")])
    kept = dedup_labeled([g, permuted])
    assert kept == [g]


def test_dedup_empty_and_distinct():
    assert dedup_labeled([]) == []
    graphs = [cycle_graph(3), cycle_graph(4), cycle_graph(5)]
    assert dedup_labeled(graphs) == graphs


# --- connect_randomly -------------------------------------------------------

def test_connect_already_connected_adds_nothing():
    g = cycle_graph(5)
    out, added = connect_randomly(g, 1)
    assert added == []
    assert out is g


def test_connect_three_isolated_nodes():
    g = build_graph(False, ["a", "b", "c"], [])
    out, added = connect_randomly(g, 5)
    assert len(added) == 2
    assert len(connected_components(out)) == 1


def test_connect_two_components_endpoints_cross():
    comp_a = [f"a{i}" for i in range(5)]
    comp_b = [f"b{i}" for i in range(3)]
    edges = list(zip(comp_a, comp_a[1:])) + list(zip(comp_b, comp_b[1:]))
    g = build_graph(False, comp_a + comp_b, edges)
    out, added = connect_randomly(g, 9)
    assert len(added) == 1
    (u, v), = added
    assert (u in comp_a) != (v in comp_a)


def test_connect_deterministic_and_minimal():
    rng = random.Random(31)
    for _ in range(20):
        g = random_digraph(rng, 5, 40)
        before = len(connected_components(g))
        out1, added1 = connect_randomly(g, 77)
        out2, added2 = connect_randomly(g, 77)
        assert added1 == added2
        assert len(added1) == before - 1
        assert len(connected_components(out1)) == 1


# --- eliminate_cycles ----------------------------------------------------------

def test_eliminate_on_dag_is_noop():
    dag = build_graph(True, ["a", "b", "c"], [("a", "b"), ("a", "c"),
                                              ("b", "c")])
    out, inverted = eliminate_cycles(dag)
    assert inverted == []
    assert structurally_equal(out, dag)


def test_eliminate_three_cycle_single_inversion():
    g = directed_cycle(["a", "b", "c"])
    out, inverted = eliminate_cycles(g)
    assert len(inverted) == 1
    assert is_acyclic(out)
    assert brute_force_min_inversions(3, [(0, 1), (1, 2), (2, 0)]) == 1


def test_eliminate_two_disjoint_three_cycles():
    ids = ["a", "b", "c", "d", "e", "f"]
    arcs = [("a", "b"), ("b", "c"), ("c", "a"),
            ("d", "e"), ("e", "f"), ("f", "d")]
    g = build_graph(True, ids, arcs)
    out, inverted = eliminate_cycles(g)
    assert len(inverted) == 2
    assert is_acyclic(out)
    index = {v: i for i, v in enumerate(ids)}
    assert brute_force_min_inversions(
        6, [(index[u], index[v]) for u, v in arcs]) == 2


def test_eliminate_preserves_underlying_undirected_multiset():
    rng = random.Random(13)
    for _ in range(30):
        g = random_digraph(rng, 5, 60)
        out, inverted = eliminate_cycles(g)
        assert is_acyclic(out)
        before = sorted(e.key(False) for e in g.edges)
        after = sorted(e.key(False) for e in out.edges)
        assert before == after  # corpus has no self-loops


def test_eliminate_drops_self_loops():
    g = build_graph(True, ["a", "b"], [("a", "a"), ("a", "b")])
    out, inverted = eliminate_cycles(g)
    assert out.edge_count == 1
    assert is_acyclic(out)


# --- sanitize_north -------------------------------------------------------------

def test_sanitize_composition_merges_duplicates():
    c = directed_cycle(["1", "2", "3"])
    permuted = build_graph(True, ["3", "1", "2"],
                           [("3", "1"), ("1", "2"), ("2", "3")])
    out = sanitize_north([c, permuted], rng_seed=4)
    assert len(out) == 1
    assert is_acyclic(out[0])
    assert len(connected_components(out[0])) == 1


def test_sanitize_empty():
    assert sanitize_north([], rng_seed=0) == []


def test_sanitize_random_digraphs_all_acyclic_connected_unique():
    rng = random.Random(2)
    graphs = [random_digraph(rng) for _ in range(40)]
    out = sanitize_north(graphs, rng_seed=11)
    sigs = [labeled_signature(g) for g in out]
    assert len(set(sigs)) == len(sigs)
    for g in out:
        assert is_acyclic(g)
        assert len(connected_components(g)) == 1
