# -*- coding: utf-8 -*-
#
# test_gatlayer.py
# Description: tests of the graph attention layer
# -----------------------------------------------------------------------------

"""
tests of the graph attention layer
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from cnngat import cnngaterrors
from cnngat import gatlayer
from cnngat import graph
from cnngat import spsreader
from cnngat import tensorops

TOLERANCE = 1e-4


def leaky(values, slope=0.2):
    return np.where(values >= 0, values, slope * values)


def dense_reference(features, adjacency, weight, attention, slope=0.2):
    """straightforward evaluation of every vertex over all its neighbors (and
       itself) with a dense adjacency matrix

    """

    heads, units, _ = weight.shape
    outputs = []
    for ivertex in range(len(features)):
        slots = [ivertex] + [j for j in range(len(features)) if adjacency[ivertex, j]]
        concat = []
        for k in range(heads):
            transformed = features @ weight[k].T
            scores = np.array([leaky(attention[k] @ np.concatenate([transformed[ivertex],
                                                                     transformed[j]]), slope)
                               for j in slots])
            alpha = np.exp(scores - scores.max())
            alpha /= alpha.sum()
            concat.append(leaky(sum(a * transformed[j] for a, j in zip(alpha, slots)), slope))
        outputs.append(np.concatenate(concat))
    return np.array(outputs)


# -- attention coefficients

def test_attention_coefficients_sum_to_one_in_many_configurations():
    rng = np.random.default_rng(1)
    for _ in range(10000):
        units, dim, count = rng.integers(1, 5), rng.integers(1, 5), rng.integers(1, 6)
        alpha = gatlayer.attention_coefficients(rng.normal(size=dim),
                                                rng.normal(size=(count, dim)) * 10,
                                                rng.normal(size=(units, dim)),
                                                rng.normal(size=2 * units))
        assert abs(alpha.sum() - 1.0) < 1e-12
        assert np.all(alpha >= 0)


def test_attention_coefficients_of_identical_neighbors_are_uniform(rng):
    feats = np.tile(rng.normal(size=3), (4, 1))
    alpha = gatlayer.attention_coefficients(feats[0], feats, rng.normal(size=(2, 3)),
                                            rng.normal(size=4))
    assert alpha == pytest.approx([0.25] * 4)


def test_attention_coefficients_require_neighbors(rng):
    with pytest.raises(cnngaterrors.ContractError):
        gatlayer.attention_coefficients(np.zeros(3), np.zeros((0, 3)), rng.normal(size=(2, 3)),
                                        rng.normal(size=4))


def test_attention_coefficients_check_dimensions(rng):
    with pytest.raises(cnngaterrors.DimensionError):
        gatlayer.attention_coefficients(np.zeros(3), np.zeros((2, 3)), rng.normal(size=(2, 3)),
                                        rng.normal(size=5))


# -- forward

@pytest.mark.parametrize("seed", range(50))
def test_forward_matches_dense_reference(seed):
    rng = np.random.default_rng(seed)
    count = int(rng.integers(1, 11))
    upper = np.triu(rng.random((count, count)) < 0.4, k=1)
    adjacency = upper | upper.T
    affinity = graph.AffinityGraph(count, [np.flatnonzero(irow) for irow in adjacency])

    params = gatlayer.GATLayerParams("gat", 3, 2, 3, rng)
    features = rng.normal(size=(count, 3))
    expected = dense_reference(features, adjacency, params.get_weight(), params.get_attention())

    # every neighborhood is evaluated on its own as they have different sizes
    for ivertex in range(count):
        neighborhood = graph.Neighborhood(ivertex, affinity.get_neighbors(ivertex))
        output = gatlayer.gat_layer_forward(features, [neighborhood], params)
        assert np.allclose(output[0], expected[ivertex], rtol=0, atol=1e-10)


def test_forward_with_mapping_of_features(rng):
    params = gatlayer.GATLayerParams("gat", 2, 2, 1, rng)
    features = {10: rng.normal(size=2), 20: rng.normal(size=2)}
    output = gatlayer.gat_layer_forward(features, [graph.Neighborhood(10, [20])], params)
    reference = gatlayer.gat_layer_forward(np.array([features[10], features[20]]),
                                           [graph.Neighborhood(0, [1])], params)
    assert np.allclose(output, reference)


def test_forward_reports_missing_features(rng):
    params = gatlayer.GATLayerParams("gat", 2, 2, 1, rng)
    features = {10: rng.normal(size=2)}
    with pytest.raises(cnngaterrors.BatchAssemblyError):
        gatlayer.gat_layer_forward(features, [graph.Neighborhood(10, [20])], params)
    with pytest.raises(cnngaterrors.BatchAssemblyError):
        gatlayer.gat_layer_forward(features, [graph.Neighborhood(30, [10])], params)


def test_isolated_vertex_attends_to_itself(rng):
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng)
    features = rng.normal(size=(1, 3))
    output = layer.forward(features, [0], [[0, 0, 0]])
    # all slots hold the same vertex, so the output is its own transformed feature
    expected = leaky(np.einsum('kgf,f->kg', layer.get_params().get_weight(), features[0]))
    assert np.allclose(output[0], expected.reshape(-1))
    assert np.allclose(layer.get_attention(), 1.0 / 3)


def test_output_dimension(rng):
    layer = gatlayer.GATLayer("gat", 4, 3, 5, rng)
    output = layer.forward(rng.normal(size=(6, 4)), [0, 1], [[0, 2, 3], [1, 4, 5]])
    assert output.shape == (2, 15)
    assert layer.get_params().get_out_dim() == 15


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31))
def test_output_is_invariant_to_the_order_of_neighbors(seed):
    rng = np.random.default_rng(seed)
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng)
    features = rng.normal(size=(5, 3))
    first = layer.forward(features, [0], [[0, 1, 2, 3, 4]])
    second = layer.forward(features, [0], [[0, 4, 2, 3, 1]])
    assert np.allclose(first, second, atol=1e-12)


def test_evaluation_ignores_dropout(rng):
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng, dropout=0.5)
    features = rng.normal(size=(4, 3))
    first = layer.forward(features, [0, 1], [[0, 2, 3], [1, 2, 3]], training=False)
    second = layer.forward(features, [0, 1], [[0, 2, 3], [1, 2, 3]], training=False)
    assert np.array_equal(first, second)


def test_slots_out_of_range(rng):
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng)
    with pytest.raises(cnngaterrors.BatchAssemblyError):
        layer.forward(rng.normal(size=(2, 3)), [0], [[0, 2]])


def test_negative_slots_do_not_wrap_around(rng):
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng)
    features = rng.normal(size=(3, 3))
    with pytest.raises(cnngaterrors.BatchAssemblyError):
        layer.forward(features, [0], [[0, -1]])
    with pytest.raises(cnngaterrors.BatchAssemblyError):
        layer.forward(features, [-1], [[0, 1]])


# -- backward

@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("dropout", [0.0, 0.3])
def test_gradients(seed, dropout):
    rng = np.random.default_rng(seed)
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng, dropout=dropout)
    features = rng.normal(size=(5, 3))
    centers = np.array([0, 1, 2])
    # repeated slots accumulate their contributions
    index = np.array([[0, 1, 3, 3], [1, 0, 4, 2], [2, 2, 2, 2]])
    upstream = rng.normal(size=(3, 4))
    weight, attention = layer.get_parameters()

    def fragment():
        weight.zero_grad()
        attention.zero_grad()
        output = layer.forward(features, centers, index, training=True,
                               rng=np.random.default_rng(seed))
        dfeatures = layer.backward(upstream)
        return float(np.sum(output * upstream)), [dfeatures, weight.get_grad().copy(),
                                                  attention.get_grad().copy()]

    error = tensorops.finite_difference_check(fragment, [features, weight.get_value(),
                                                         attention.get_value()])
    assert error < TOLERANCE


def test_backward_before_forward(rng):
    with pytest.raises(cnngaterrors.StateError):
        gatlayer.GATLayer("gat", 3, 2, 2, rng).backward(np.zeros((1, 4)))


# -- attention dump

def test_write_attention(tmp_path, rng):
    layer = gatlayer.GATLayer("gat", 3, 2, 2, rng)
    layer.forward(rng.normal(size=(4, 3)), [0, 1], [[0, 2, 3], [1, 3, 3]])

    filename = str(tmp_path / "attention.csv")
    layer.write_attention(filename, vertex_ids=[100, 101], slot_ids=[100, 101, 102, 103])

    rows = list(spsreader.SpsReader(filename, gatlayer.ATTENTION_HEADERS))
    assert len(rows) == 2 * 2 * 3
    assert {int(irow['vertex']) for irow in rows} == {100, 101}
    assert [int(irow['neighbor']) for irow in rows[:3]] == [100, 102, 103]

    for vertex in (100, 101):
        for head in (0, 1):
            total = sum(float(irow['alpha']) for irow in rows
                        if int(irow['vertex']) == vertex and int(irow['head']) == head)
            assert total == pytest.approx(1.0, abs=1e-9)
