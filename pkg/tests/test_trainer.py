# -*- coding: utf-8 -*-
#
# test_trainer.py
# Description: tests of the training loop, checkpoints and metric logs
# -----------------------------------------------------------------------------

"""
tests of the training loop, checkpoints and metric logs
"""

import math
import os

import numpy as np
import pytest

from cnngat import cnngaterrors
from cnngat import graph
from cnngat import hybrid
from cnngat import tensorops
from cnngat import trainer


def tiny_config(**overrides):
    """return the configuration of a model small enough to train in a second"""

    options = dict(cnn_channels=[2, 3], feature_dim=4, gat_units=[3, 2], heads=2,
                   neighbors=2, batch_size=10, epochs=2, dropout=0.0)
    options.update(overrides)
    return trainer.TrainConfig(**options)


def split_graphs(train, test, theta=0.1):
    """return the threshold graph over the train split and over both splits"""

    vectors = np.concatenate([train.get_affinity_vectors(), test.get_affinity_vectors()])
    return (graph.build_l1_threshold_graph(train.get_affinity_vectors(), theta),
            graph.build_l1_threshold_graph(vectors, theta))


# -- configuration

def test_defaults():
    config = trainer.TrainConfig()
    assert (config.lr0, config.decay_factor, config.decay_every_epochs) == (0.02, 0.3, 20)
    assert (config.weight_decay, config.dropout, config.neighbors) == (5e-3, 0.3, 4)
    assert (config.epochs, config.batch_size, config.heads) == (60, 100, 5)
    assert config.gat_units == [30, 10]


@pytest.mark.parametrize("overrides", [dict(lr0=0.0), dict(decay_factor=1.0), dict(dropout=1.0),
                                       dict(neighbors=0), dict(variant="GCN"), dict(graph="knn"),
                                       dict(gat_units=[3, 2, 1]), dict(slope=1.5),
                                       dict(momentum=-0.1)])
def test_illegal_values(overrides):
    with pytest.raises(cnngaterrors.ConfigurationError):
        trainer.TrainConfig(**overrides)


def test_presets():
    assert trainer.TrainConfig.preset('mnist') == trainer.TrainConfig()
    nih = trainer.TrainConfig.preset('nih', seed=3)
    assert nih.gat_units == [30, 32] and nih.seed == 3
    with pytest.raises(cnngaterrors.ConfigurationError):
        trainer.TrainConfig.preset('cifar')


def test_learning_rate_schedule():
    config = trainer.TrainConfig()
    assert config.lr_at(0) == pytest.approx(0.02)
    assert config.lr_at(19) == pytest.approx(0.02)
    assert config.lr_at(20) == pytest.approx(0.006)
    assert config.lr_at(45) == pytest.approx(0.0018)
    with pytest.raises(cnngaterrors.ContractError):
        config.lr_at(-1)


def test_pretrain_epochs():
    assert trainer.TrainConfig(epochs=7).get_pretrain_epochs() == 7
    assert trainer.TrainConfig(epochs=7, pretrain_epochs=2).get_pretrain_epochs() == 2


# -- sgd

def test_sgd_step_by_hand():
    weight = tensorops.Parameter("w", np.array([1.0, -2.0]))
    bias = tensorops.Parameter("b", np.array([1.0]), decay=False)
    weight.accumulate(np.array([0.5, 0.5]))
    bias.accumulate(np.array([0.5]))

    trainer.sgd_step([weight, bias], lr=0.1, weight_decay=0.1)

    # w ← w − lr·(g + λw), the bias is not decayed
    assert weight.get_value() == pytest.approx([1.0 - 0.1 * 0.6, -2.0 - 0.1 * 0.3])
    assert bias.get_value() == pytest.approx([0.95])
    assert not weight.get_grad().any() and not bias.get_grad().any()


def test_sgd_step_without_gradient():
    weight = tensorops.Parameter("w", np.array([1.0]))
    trainer.sgd_step([weight], lr=0.02, weight_decay=0.0)
    assert weight.get_value().tolist() == [1.0]

    # decay only
    trainer.sgd_step([weight], lr=0.02, weight_decay=5e-3)
    assert weight.get_value() == pytest.approx([0.9999])


def test_sgd_converges_on_a_quadratic():
    weight = tensorops.Parameter("w", np.array([-4.0]))
    for _ in range(10000):
        weight.accumulate(2 * (weight.get_value() - 3.0))
        trainer.sgd_step([weight], lr=0.01, weight_decay=0.0)
        if abs(weight.get_value()[0] - 3.0) < 1e-6:
            break
    assert abs(weight.get_value()[0] - 3.0) < 1e-6


def test_sgd_step_with_momentum():
    weight = tensorops.Parameter("w", np.array([0.0]))
    velocities = {}
    for _ in range(2):
        weight.accumulate(np.array([1.0]))
        trainer.sgd_step([weight], lr=1.0, weight_decay=0.0, momentum=0.5, velocities=velocities)
    # velocities 1 and 1.5
    assert weight.get_value() == pytest.approx([-2.5])


def test_gradient_descent_reduces_the_loss(tiny_cnn, ring, images, labels):
    model = hybrid.HybridModel(hybrid.ModelVariant("CNNGAT"), np.random.default_rng(0), tiny_cnn,
                               gat_units=(3, 2), heads=2, dropout=0.0)
    batch = hybrid.assemble_batch(ring, np.arange(12), 2, 2, images, np.random.default_rng(1))

    losses = []
    for _ in range(30):
        model.forward(batch, training=True, rng=np.random.default_rng(2))
        losses.append(model.loss(labels))
        model.backward(labels)
        trainer.sgd_step(model.get_parameters(trainable_only=True), 0.05, 0.0)
    assert losses[-1] < losses[0]


# -- training

def test_training_is_deterministic(tmp_path, splits):
    train, test = splits
    graph_train, graph_all = split_graphs(train, test)
    config = tiny_config(variant="CNNGAT")
    (tmp_path / "first").mkdir()
    (tmp_path / "second").mkdir()

    first, first_metrics = trainer.train(config, train, graph_train, test, graph_all,
                                         str(tmp_path / "first"))
    second, second_metrics = trainer.train(config, train, graph_train, test, graph_all,
                                           str(tmp_path / "second"))

    assert [irecord['train_loss'] for irecord in first_metrics] == \
        [irecord['train_loss'] for irecord in second_metrics]
    for iparam, jparam in zip(first.get_parameters(), second.get_parameters()):
        assert np.array_equal(iparam.get_value(), jparam.get_value())

    # the files written by both runs are identical byte by byte
    for name in (trainer.CHECKPOINT_NAME, trainer.METRICS_NAME):
        with open(str(tmp_path / "first" / name), 'rb') as stream:
            contents = stream.read()
        with open(str(tmp_path / "second" / name), 'rb') as stream:
            assert stream.read() == contents


@pytest.mark.parametrize("variant", ["CNNGAT", "SkipGAT"])
def test_training_without_epochs_keeps_the_initial_parameters(tmp_path, splits, variant):
    train, test = splits
    graph_train, graph_all = split_graphs(train, test)
    config = tiny_config(variant=variant, epochs=0)

    model, metrics = trainer.train(config, train, graph_train, test, graph_all, str(tmp_path))
    assert metrics == []
    for iparam, jparam in zip(model.get_parameters(), trainer.build_model(config).get_parameters()):
        assert iparam.get_name() == jparam.get_name()
        assert np.array_equal(iparam.get_value(), jparam.get_value())

    stored = trainer.read_checkpoint(str(tmp_path / trainer.CHECKPOINT_NAME))
    for iparam in model.get_parameters():
        assert np.array_equal(stored[iparam.get_name()], iparam.get_value())


def test_training_overfits_a_few_images(splits):
    train, _ = splits
    few = type(train)(train.get_images()[:10], train.get_affinity_vectors()[:10],
                      train.get_labels()[:10], train.get_split())
    graph_train = graph.build_l1_threshold_graph(few.get_affinity_vectors(), 0.1)
    config = tiny_config(variant="CNN", cnn_channels=[4, 6], feature_dim=16, batch_size=2,
                         epochs=200, lr0=0.1, momentum=0.5, weight_decay=0.0,
                         decay_every_epochs=1000)

    _, metrics = trainer.train(config, few, graph_train)
    assert len(metrics) == 200
    assert metrics[-1]['train_loss'] < 0.01
    assert metrics[-1]['train_acc'] == 1.0


def test_metrics_of_every_epoch(splits):
    train, test = splits
    graph_train, graph_all = split_graphs(train, test)
    _, metrics = trainer.train(tiny_config(epochs=3, eval_every=2), train, graph_train, test,
                               graph_all)

    assert [irecord['epoch'] for irecord in metrics] == [0, 1, 2]
    # evaluated every two epochs and after the last one
    assert math.isnan(metrics[0]['test_acc'])
    assert 0.0 <= metrics[1]['test_acc'] <= 1.0
    assert 0.0 <= metrics[2]['test_acc'] <= 1.0
    assert all(0.0 <= irecord['train_acc'] <= 1.0 for irecord in metrics)


def test_training_without_test_split(splits):
    train, _ = splits
    graph_train = graph.build_l1_threshold_graph(train.get_affinity_vectors(), 0.1)
    _, metrics = trainer.train(tiny_config(variant="CNN"), train, graph_train)
    assert all(math.isnan(irecord['test_acc']) for irecord in metrics)


def test_test_split_requires_evaluation_graph(splits):
    train, test = splits
    graph_train = graph.build_l1_threshold_graph(train.get_affinity_vectors(), 0.1)
    with pytest.raises(cnngaterrors.ContractError):
        trainer.train(tiny_config(), train, graph_train, test)


def test_graph_must_cover_the_split(splits):
    train, _ = splits
    with pytest.raises(cnngaterrors.ContractError):
        trainer.train(tiny_config(), train, graph.AffinityGraph.from_edges(5, []))


def test_outputs_and_pretraining(tmp_path, splits):
    train, test = splits
    graph_train, graph_all = split_graphs(train, test)
    outdir = str(tmp_path)
    model, _ = trainer.train(tiny_config(variant="SkipGAT", pretrain_epochs=1), train, graph_train,
                             test, graph_all, outdir)

    assert os.path.isfile(os.path.join(outdir, trainer.CHECKPOINT_NAME))
    assert len(trainer.read_metrics(os.path.join(outdir, trainer.METRICS_NAME))) == 2
    pretrain = os.path.join(outdir, trainer.PRETRAIN_DIR)
    assert len(trainer.read_metrics(os.path.join(pretrain, trainer.METRICS_NAME))) == 1

    # the encoder is frozen after pretraining
    cnn = trainer.build_model(tiny_config(variant="CNN"))
    trainer.load_checkpoint(cnn, os.path.join(pretrain, trainer.CHECKPOINT_NAME))
    assert np.array_equal(model.get_encoder().encode(test.get_images()),
                          cnn.get_encoder().encode(test.get_images()))


def test_nan_loss_dumps_the_batch(tmp_path, splits):
    train, _ = splits
    broken = type(train)(np.full_like(train.get_images(), np.nan), train.get_affinity_vectors(),
                         train.get_labels(), train.get_split())
    graph_train = graph.build_l1_threshold_graph(train.get_affinity_vectors(), 0.1)
    with pytest.raises(cnngaterrors.NaNLossError) as info:
        trainer.train(tiny_config(variant="CNN"), broken, graph_train, outdir=str(tmp_path))
    assert os.path.isfile(info.value.get_dumpname())


def test_evaluation_graph(ring):
    config = tiny_config()
    assert trainer.evaluation_graph(ring, 6, config) is ring

    restricted = trainer.evaluation_graph(ring, 6, tiny_config(test_test_edges=False))
    assert not restricted.has_edge(6, 7) and not restricted.has_edge(10, 11)
    assert restricted.has_edge(5, 6) and restricted.has_edge(0, 6)


# -- checkpoints

def test_checkpoint_restores_the_model(tmp_path, images, ring):
    config = tiny_config(seed=1)
    model = trainer.build_model(config)
    filename = str(tmp_path / trainer.CHECKPOINT_NAME)
    trainer.write_checkpoint(filename, model.get_parameters())

    other = trainer.load_checkpoint(trainer.build_model(tiny_config(seed=2)), filename)
    batch = hybrid.assemble_batch(ring, [0, 1], 2, 2, images, np.random.default_rng(0))
    assert np.array_equal(model.forward(batch), other.forward(batch))


def test_checkpoint_layout(tmp_path):
    filename = str(tmp_path / "tiny.hgat")
    trainer.write_checkpoint(filename, [tensorops.Parameter("w", np.arange(6.0).reshape(2, 3))])
    with open(filename, 'rb') as stream:
        contents = stream.read()
    assert contents[:5] == b"HGAT1"
    assert len(contents) == 5 + 4 + 1 + 4 + 2 * 4 + 6 * 8
    params = trainer.read_checkpoint(filename)
    assert list(params) == ["w"] and params["w"].tolist() == [[0, 1, 2], [3, 4, 5]]


def test_checkpoint_with_wrong_header(tmp_path):
    filename = tmp_path / "bad.hgat"
    filename.write_bytes(b"HGAT2")
    with pytest.raises(cnngaterrors.FormatError):
        trainer.read_checkpoint(str(filename))


def test_truncated_checkpoint(tmp_path):
    filename = str(tmp_path / "tiny.hgat")
    trainer.write_checkpoint(filename, [tensorops.Parameter("w", np.ones(4))])
    with open(filename, 'rb') as stream:
        contents = stream.read()
    with open(filename, 'wb') as stream:
        stream.write(contents[:-3])
    with pytest.raises(cnngaterrors.FormatError):
        trainer.read_checkpoint(filename)


def test_checkpoint_of_another_variant(tmp_path):
    filename = str(tmp_path / trainer.CHECKPOINT_NAME)
    trainer.write_checkpoint(filename, trainer.build_model(tiny_config(variant="CNN")).get_parameters())
    with pytest.raises(cnngaterrors.FormatError):
        trainer.load_checkpoint(trainer.build_model(tiny_config(variant="CNNGAT")), filename)


# -- metric logs

def test_metrics_round_trip(tmp_path):
    filename = str(tmp_path / trainer.METRICS_NAME)
    records = [{'epoch': 0, 'lr': 0.02, 'train_loss': 1.5, 'train_acc': 0.5, 'test_acc': math.nan,
                'acc_class0': math.nan, 'acc_class1': math.nan, 'acc_class2': math.nan},
               {'epoch': 1, 'lr': 0.02, 'train_loss': 1.0, 'train_acc': 0.75, 'test_acc': 0.5,
                'acc_class0': 1.0, 'acc_class1': 0.5, 'acc_class2': 0.0}]
    trainer.write_metrics(filename, records)

    loaded = trainer.read_metrics(filename)
    assert [irecord['epoch'] for irecord in loaded] == [0, 1]
    assert math.isnan(loaded[0]['test_acc'])
    assert loaded[1]['train_acc'] == pytest.approx(0.75)
    assert loaded[1]['acc_class1'] == pytest.approx(0.5)
