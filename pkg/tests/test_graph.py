# -*- coding: utf-8 -*-
#
# test_graph.py
# Description: tests of affinity graphs, their builders and neighborhood sampling
# -----------------------------------------------------------------------------

"""
tests of affinity graphs, their builders and neighborhood sampling
"""

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from cnngat import cnngaterrors
from cnngat import graph


def brute_force(num_vertices, connected):
    """return the set of edges (i, j), i < j, of all pairs satisfying connected"""

    return {(i, j) for i, j in itertools.combinations(range(num_vertices), 2) if connected(i, j)}


def edge_set(affinity):
    """return the edges of a graph as a set of pairs"""

    return set(map(tuple, affinity.get_edges().tolist()))


# -- AffinityGraph

def test_from_edges_is_symmetric(ring):
    assert ring.is_symmetric()
    assert ring.get_num_edges() == 13
    assert ring.has_edge(6, 0) and ring.has_edge(0, 6)
    assert list(ring.get_neighbors(0)) == [1, 6, 11]


def test_from_edges_drops_self_loops():
    affinity = graph.AffinityGraph.from_edges(3, [(0, 0), (0, 1)])
    assert affinity.get_num_edges() == 1
    assert not affinity.has_edge(0, 0)


def test_asymmetric_adjacency_is_rejected():
    with pytest.raises(cnngaterrors.DataError):
        graph.AffinityGraph(2, [[1], []])


def test_neighbor_out_of_range_is_rejected():
    with pytest.raises(cnngaterrors.VertexIndexError):
        graph.AffinityGraph(2, [[2], []])


def test_unknown_vertex():
    with pytest.raises(cnngaterrors.VertexIndexError):
        graph.AffinityGraph.from_edges(3, []).get_neighbors(3)


def test_save_and_load(tmp_path, ring):
    filename = str(tmp_path / "ring.edges")
    ring.save(filename)
    with open(filename) as stream:
        assert stream.readline() == "vertices 12\n"
    loaded = graph.AffinityGraph.load(filename)
    assert loaded.get_num_vertices() == 12
    assert edge_set(loaded) == edge_set(ring)


def test_load_graph_without_edges(tmp_path):
    filename = str(tmp_path / "empty.edges")
    graph.AffinityGraph.from_edges(5, []).save(filename)
    loaded = graph.AffinityGraph.load(filename)
    assert loaded.get_num_vertices() == 5 and loaded.get_num_edges() == 0


@pytest.mark.parametrize("contents", [
    "nodes 3\n0 1\n",
    "vertices 3\n1 0\n",
    "vertices 3\n0 3\n",
    "vertices 3\n0 1\n0 1\n",
    "vertices 3\n0 x\n"])
def test_load_rejects_illegal_files(tmp_path, contents):
    filename = tmp_path / "bad.edges"
    filename.write_text(contents)
    with pytest.raises(cnngaterrors.FormatError):
        graph.AffinityGraph.load(str(filename))


# -- builders

def test_l1_threshold_by_hand():
    vectors = [[0.0, 0.0], [0.1, 0.0], [1.0, 1.0]]
    affinity = graph.build_l1_threshold_graph(vectors, 0.1)
    # (0, 1) have mean absolute difference 0.05
    assert edge_set(affinity) == {(0, 1)}


def test_l1_threshold_is_strict():
    affinity = graph.build_l1_threshold_graph(np.array([[0.0], [0.1]]), 0.1)
    assert affinity.get_num_edges() == 0


def test_l1_threshold_rejects_ragged_vectors():
    with pytest.raises(cnngaterrors.DimensionError):
        graph.build_l1_threshold_graph([[0.0, 1.0], [0.0]], 0.1)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=25), st.floats(min_value=0.05, max_value=0.5),
       st.integers(min_value=0, max_value=2 ** 31))
def test_l1_threshold_matches_brute_force(count, theta, seed):
    vectors = np.random.default_rng(seed).random((count, 6))
    affinity = graph.build_l1_threshold_graph(vectors, theta)

    expected = brute_force(count, lambda i, j: np.abs(vectors[i] - vectors[j]).sum() / 6 < theta)
    assert edge_set(affinity) == expected
    assert affinity.is_symmetric()


def test_l1_threshold_matches_pairwise_distances_over_many_vectors(rng):
    vectors = rng.random((1000, 8))
    affinity = graph.build_l1_threshold_graph(vectors, 0.2)

    expected = set()
    for ivertex in range(len(vectors)):
        distances = np.mean(np.abs(vectors[ivertex] - vectors[ivertex + 1:]), axis=1)
        expected |= {(ivertex, ivertex + 1 + int(jdelta)) for jdelta in np.flatnonzero(distances < 0.2)}
    assert affinity.get_num_edges() > 0
    assert edge_set(affinity) == expected
    assert affinity.is_symmetric()


def test_l1_threshold_is_permutation_equivariant(rng):
    vectors = rng.random((40, 8))
    order = rng.permutation(40)
    affinity = graph.build_l1_threshold_graph(vectors, 0.25)
    permuted = graph.build_l1_threshold_graph(vectors[order], 0.25)

    # vertex i of the permuted graph is vertex order[i] of the original one
    assert affinity.get_num_edges() > 0
    renamed = {tuple(sorted((int(order[i]), int(order[j])))) for i, j in edge_set(permuted)}
    assert renamed == edge_set(affinity)


def test_label_graph_by_hand():
    affinity = graph.build_label_graph([3, 5, 6, 3])
    assert edge_set(affinity) == {(0, 3)}


def test_class_link_adds_edges():
    labels = [0, 1, 2, 1, 2, 0]
    plain = graph.build_label_graph(labels)
    linked = graph.build_label_graph(labels, [(1, 2)])
    assert edge_set(plain) < edge_set(linked)
    assert linked.has_edge(1, 2) and not linked.has_edge(0, 1)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=2), min_size=1, max_size=20),
       st.booleans())
def test_label_graph_matches_brute_force(labels, class_link):
    pairs = [(1, 2)] if class_link else []
    affinity = graph.build_label_graph(labels, pairs)

    def connected(i, j):
        return labels[i] == labels[j] or {labels[i], labels[j]} in [set(ipair) for ipair in pairs]

    assert edge_set(affinity) == brute_force(len(labels), connected)
    assert affinity.is_symmetric()


def test_class_link_graph_matches_brute_force_over_many_labels(rng):
    labels = rng.choice([3, 5, 6], size=1000).tolist()
    affinity = graph.build_label_graph(labels, [(5, 6)])

    def connected(i, j):
        return labels[i] == labels[j] or {labels[i], labels[j]} == {5, 6}

    assert edge_set(affinity) == brute_force(len(labels), connected)
    assert affinity.is_symmetric()


def test_random_graph_mean_degree(rng):
    affinity = graph.build_random_graph(1000, 10.0, rng)
    assert affinity.is_symmetric()
    assert affinity.get_degrees().mean() == pytest.approx(10.0, abs=1.0)


@pytest.mark.parametrize("seed", range(20))
def test_random_graph_over_two_vertices(seed):
    affinity = graph.build_random_graph(2, 1.0, np.random.default_rng(seed))
    assert edge_set(affinity) == {(0, 1)}


def test_random_graph_without_edges(rng):
    assert graph.build_random_graph(100, 0.0, rng).get_num_edges() == 0


def test_random_graph_rejects_negative_degree(rng):
    with pytest.raises(cnngaterrors.DataError):
        graph.build_random_graph(10, -1.0, rng)


def test_random_graph_is_deterministic():
    first = graph.build_random_graph(50, 3.0, np.random.default_rng(7))
    second = graph.build_random_graph(50, 3.0, np.random.default_rng(7))
    assert edge_set(first) == edge_set(second)


def test_extended_random_graph_keeps_the_base_edges(rng):
    base = graph.build_random_graph(600, 8.0, rng)
    extended = graph.extend_random_graph(base, 1000, 8.0, rng)

    assert extended.get_num_vertices() == 1000
    assert {(i, j) for i, j in edge_set(extended) if j < 600} == edge_set(base)
    assert extended.get_degrees().mean() == pytest.approx(8.0, abs=1.0)
    assert extended.is_symmetric()


def test_extended_random_graph_errors(rng):
    base = graph.build_random_graph(10, 2.0, rng)
    with pytest.raises(cnngaterrors.DimensionError):
        graph.extend_random_graph(base, 5, 2.0, rng)
    with pytest.raises(cnngaterrors.DataError):
        graph.extend_random_graph(base, 20, -1.0, rng)


def test_meta_rules_by_hand():
    records = [graph.MetaRecord("p1", "M", 40),
               graph.MetaRecord("p2", "M", 41),
               graph.MetaRecord("p3", "F", 40),
               graph.MetaRecord("p4", "F", 42),
               graph.MetaRecord("p1", "M", 60)]
    affinity = graph.build_meta_rule_graph(records)
    # same gender within a year, different gender with the same age, same id
    assert edge_set(affinity) == {(0, 1), (0, 2), (0, 4)}


def test_meta_record_rejects_negative_age():
    with pytest.raises(cnngaterrors.DataError):
        graph.MetaRecord("p", "F", -1)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(min_value=0, max_value=4), st.sampled_from("MF"),
                          st.integers(min_value=30, max_value=36)),
                min_size=1, max_size=15))
def test_meta_rules_match_brute_force(fields):
    records = [graph.MetaRecord(*ifield) for ifield in fields]
    affinity = graph.build_meta_rule_graph(records)

    def connected(i, j):
        (pi, gi, ai), (pj, gj, aj) = fields[i], fields[j]
        return pi == pj or (gi == gj and abs(ai - aj) <= 1) or (gi != gj and ai == aj)

    assert edge_set(affinity) == brute_force(len(fields), connected)
    assert affinity.is_symmetric()


def test_meta_rules_match_brute_force_over_many_records(rng):
    fields = list(zip(rng.integers(0, 300, size=1000).tolist(),
                      rng.choice(["M", "F"], size=1000).tolist(),
                      rng.integers(20, 80, size=1000).tolist()))
    affinity = graph.build_meta_rule_graph([graph.MetaRecord(*ifield) for ifield in fields])

    def connected(i, j):
        (pi, gi, ai), (pj, gj, aj) = fields[i], fields[j]
        return pi == pj or (gi == gj and abs(ai - aj) <= 1) or (gi != gj and ai == aj)

    assert edge_set(affinity) == brute_force(len(fields), connected)
    assert affinity.is_symmetric()


# -- helpers

def test_restrict_edges(ring):
    restricted = graph.restrict_edges(ring, [5, 6, 7])
    assert not restricted.has_edge(5, 6) and not restricted.has_edge(6, 7)
    assert restricted.has_edge(0, 6) and restricted.has_edge(4, 5)
    assert restricted.is_symmetric()


def test_degree_statistics(ring, labels):
    stats = graph.degree_statistics(ring, labels)
    assert stats['vertices'] == 12 and stats['edges'] == 13
    assert stats['mean_degree'] == pytest.approx(26 / 12)
    assert stats['isolated'] == 0
    assert sum(stats['class_pairs'].values()) == 13
    # labels 0, 1, 2 repeat along the ring, so only the chord (0, 6) links a class
    # with itself
    assert stats['class_pairs'][(0, 0)] == 1
    assert stats['inter_class_fraction'] == pytest.approx(12 / 13)


# -- sampling

def test_sample_without_replacement(ring, rng):
    neighborhood = graph.sample_neighborhood(ring, 0, 3, rng)
    assert neighborhood.get_center() == 0
    assert sorted(neighborhood.get_samples().tolist()) == [1, 6, 11]


def test_sample_with_replacement(ring, rng):
    samples = graph.sample_neighborhood(ring, 3, 5, rng).get_samples()
    assert len(samples) == 5
    assert set(samples.tolist()) <= {2, 4}


def test_sample_isolated_vertex(rng):
    affinity = graph.AffinityGraph.from_edges(3, [(0, 1)])
    assert graph.sample_neighborhood(affinity, 2, 4, rng).get_samples().tolist() == [2] * 4


def test_sample_restricted_to_allowed(ring, rng):
    allowed = np.zeros(12, dtype=bool)
    allowed[[1, 2]] = True
    samples = graph.sample_neighborhood(ring, 0, 4, rng, allowed).get_samples()
    assert set(samples.tolist()) == {1}


def test_sample_size_must_be_positive(ring, rng):
    with pytest.raises(cnngaterrors.ContractError):
        graph.sample_neighborhood(ring, 0, 0, rng)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=12), st.integers(min_value=1, max_value=6),
       st.integers(min_value=0, max_value=2 ** 31))
def test_samples_are_neighbors(center, n, seed):
    # a ring over twelve vertices with a chord, and the isolated vertex 12
    edges = [(i, (i + 1) % 12) for i in range(12)] + [(0, 6)]
    affinity = graph.AffinityGraph.from_edges(13, edges)
    samples = graph.sample_neighborhood(affinity, center, n, np.random.default_rng(seed)).get_samples()
    assert len(samples) == n
    assert all(affinity.has_edge(center, isample) or isample == center
               for isample in samples.tolist())
    if center == 12:
        assert samples.tolist() == [12] * n


def test_sampling_with_replacement_is_uniform(ring):
    # vertex 3 only has the neighbors 2 and 4
    generator = np.random.default_rng(5)
    draws = np.concatenate([graph.sample_neighborhood(ring, 3, 4, generator).get_samples()
                            for _ in range(100000)])
    assert len(draws) == 400000
    assert np.mean(draws == 2) == pytest.approx(0.5, abs=0.01)
    assert np.mean(draws == 4) == pytest.approx(0.5, abs=0.01)
