#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# trainer.py
# Description: Optimization of hybrid models, checkpoints and metric logs
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 11:47:31.906125447 (1792316251)>
#

"""
Optimization of hybrid models, checkpoints and metric logs
"""

# imports
# -----------------------------------------------------------------------------
import dataclasses
import math
import os
import struct

import numpy as np

if __package__ is None or __package__ == '':
    import analysis
    import cnnencoder
    import cnngaterrors
    import graph
    import hybrid
    import spsreader
    import spswriter
    import utils
else:
    from . import analysis
    from . import cnnencoder
    from . import cnngaterrors
    from . import graph
    from . import hybrid
    from . import spsreader
    from . import spswriter
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('trainer')

# checkpoints
CHECKPOINT_MAGIC = b"HGAT1"
CHECKPOINT_NAME = "model.hgat"

# metric logs
METRICS_NAME = "metrics.csv"
NAN_DUMP_NAME = "nan-batch.npz"
PRETRAIN_DIR = "pretrain"

# the evaluation after every epoch draws its neighborhoods from a stream of its
# own, distinct from the streams of all training steps
EVAL_STREAM = 1 << 30

# info
INFO_EPOCH = "[{0}] epoch {1:>3}: lr={2:.6f} loss={3:.5f} train acc={4:.4f} test acc={5:.4f}"
INFO_PRETRAIN = "pretraining the CNN for {0} epochs before training {1}"
INFO_CHECKPOINT = "checkpoint written to '{0}'"

# debug
DEBUG_STEP = "epoch {0} step {1}: loss={2:.6f}"

# errors
ERROR_UNKNOWN_PRESET = "unknown preset '{0}'. Choose one among {1}"
ERROR_CONFIG_VALUE = "illegal value of '{0}': {1}"
ERROR_NEGATIVE_EPOCH = "learning rates are defined for non-negative epochs only, not {0}"
ERROR_NAN_LOSS = "the loss became {0} at epoch {1}, step {2}. The offending batch was dumped to '{3}'"
ERROR_CHECKPOINT_MAGIC = "'{0}' is not a checkpoint: wrong header"
ERROR_CHECKPOINT_TRUNCATED = "'{0}' is truncated"
ERROR_CHECKPOINT_PARAMETER = "the checkpoint '{0}' has no parameter '{1}' with shape {2}"
ERROR_GRAPH_SIZE = "the graph has {0} vertices but {1} are required"
ERROR_EVAL_GRAPH = "an evaluation graph is required to compute the test accuracy"


# -----------------------------------------------------------------------------
# TrainConfig
#
# Hyperparameters of a training run
# -----------------------------------------------------------------------------
@dataclasses.dataclass
class TrainConfig:
    """Hyperparameters of a training run"""

    lr0: float = 0.02
    decay_factor: float = 0.3
    decay_every_epochs: int = 20
    weight_decay: float = 5e-3
    momentum: float = 0.0
    dropout: float = 0.3
    neighbors: int = 4
    heads: int = 5
    epochs: int = 60
    batch_size: int = 100
    seed: int = 0
    variant: str = hybrid.VARIANT_CNNGAT
    graph: str = graph.SETTING_THETA
    theta: float = 0.1
    slope: float = 0.2
    feature_dim: int = 60
    gat_units: list = dataclasses.field(default_factory=lambda: [30, 10])
    cnn_channels: list = dataclasses.field(default_factory=lambda: [32, 64])
    kernel_size: int = 3
    num_classes: int = 3
    dropout_features: bool = True
    dropout_attention: bool = True
    dropout_hidden: bool = True
    raw_skip: bool = False
    reuse_1hop: bool = False
    pretrain_epochs: int = -1
    test_test_edges: bool = True
    eval_every: int = 1

    def __post_init__(self):
        self.validate()

    @classmethod
    def preset(cls, name: str, **overrides):
        """return the configuration of the given preset with the given overrides"""

        if name not in PRESETS:
            raise cnngaterrors.ConfigurationError(ERROR_UNKNOWN_PRESET.format(name, list(PRESETS)))
        return cls(**{**PRESETS[name], **overrides})

    def validate(self):
        """raise a ConfigurationError if any value is out of range"""

        checks = [('lr0', self.lr0 > 0),
                  ('decay_factor', 0 < self.decay_factor < 1),
                  ('decay_every_epochs', self.decay_every_epochs > 0),
                  ('weight_decay', self.weight_decay >= 0),
                  ('momentum', 0 <= self.momentum < 1),
                  ('dropout', 0 <= self.dropout < 1),
                  ('neighbors', self.neighbors > 0),
                  ('heads', self.heads > 0),
                  ('epochs', self.epochs >= 0),
                  ('batch_size', self.batch_size > 0),
                  ('variant', self.variant in hybrid.VARIANTS),
                  ('graph', self.graph in graph.SETTINGS),
                  ('theta', self.theta > 0),
                  ('slope', 0 < self.slope < 1),
                  ('gat_units', len(self.gat_units) in (1, 2) and min(self.gat_units) > 0),
                  ('num_classes', self.num_classes > 1),
                  ('eval_every', self.eval_every > 0)]
        for key, ok in checks:
            if not ok:
                raise cnngaterrors.ConfigurationError(ERROR_CONFIG_VALUE.format(key,
                                                                                getattr(self, key)))

    def get_pretrain_epochs(self):
        """return the number of epochs of the pretraining stage. A negative value in
           the configuration means the same number of epochs as the main stage

        """

        return self.epochs if self.pretrain_epochs < 0 else self.pretrain_epochs

    def lr_at(self, epoch: int):
        """return the learning rate of the given epoch"""

        if epoch < 0:
            raise cnngaterrors.ContractError(ERROR_NEGATIVE_EPOCH.format(epoch))
        return self.lr0 * self.decay_factor ** (epoch // self.decay_every_epochs)


# the preset 'mnist' consists of the defaults. The second one suits the larger
# images of medical datasets, used along with meta-rule graphs
PRESETS = {
    'mnist': {},
    'nih': {'lr0': 0.01, 'decay_every_epochs': 30, 'gat_units': [30, 32]}
}


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# sgd_step
#
# update every parameter with w ← w − lr·(g + weight_decay·w), where weight
# decay is omitted for parameters not flagged for it. With momentum, the
# velocity v ← momentum·v + (g + weight_decay·w) replaces the bracket, and
# velocities is a dictionary indexed by parameter names kept between steps.
# Gradients are zeroed afterwards
# -----------------------------------------------------------------------------
def sgd_step(params: list, lr: float, weight_decay: float,
             momentum: float = 0.0, velocities: dict = None):
    """update every parameter with w ← w − lr·(g + weight_decay·w), where weight
       decay is omitted for parameters not flagged for it. With momentum, the
       velocity v ← momentum·v + (g + weight_decay·w) replaces the bracket, and
       velocities is a dictionary indexed by parameter names kept between steps.
       Gradients are zeroed afterwards

    """

    velocities = {} if velocities is None else velocities
    for iparam in params:
        value = iparam.get_value()
        step = iparam.get_grad() + weight_decay * value if iparam.get_decay() \
            else iparam.get_grad().copy()

        if momentum:
            velocity = velocities.setdefault(iparam.get_name(), np.zeros_like(value))
            velocity *= momentum
            velocity += step
            step = velocity

        value -= lr * step
        iparam.zero_grad()


# -----------------------------------------------------------------------------
# build_model
#
# create a fresh model of the given variant (the variant of the configuration by
# default) whose weights are drawn from the seed of the configuration
# -----------------------------------------------------------------------------
def build_model(config: TrainConfig, variant: str = None):
    """create a fresh model of the given variant (the variant of the configuration
       by default) whose weights are drawn from the seed of the configuration

    """

    return hybrid.HybridModel(hybrid.ModelVariant(config.variant if variant is None else variant),
                              np.random.default_rng(config.seed),
                              cnnencoder.CnnConfig(config.cnn_channels, config.kernel_size,
                                                   config.feature_dim, config.slope),
                              config.num_classes, config.gat_units, config.heads,
                              config.dropout, config.dropout_features, config.dropout_attention,
                              config.dropout_hidden, config.raw_skip, config.slope)


# -----------------------------------------------------------------------------
# evaluation_graph
#
# return the graph used for evaluation built over the train split followed by
# the test split. Unless test_test_edges is enabled, edges between two test
# vertices are removed
# -----------------------------------------------------------------------------
def evaluation_graph(graph_all: graph.AffinityGraph, num_train: int, config: TrainConfig):
    """return the graph used for evaluation built over the train split followed by
       the test split. Unless test_test_edges is enabled, edges between two test
       vertices are removed

    """

    if config.test_test_edges:
        return graph_all
    return graph.restrict_edges(graph_all, np.arange(num_train, graph_all.get_num_vertices()))


# -----------------------------------------------------------------------------
# train
#
# train a model over the train split using the given graph, whose vertices are
# the images of the split. If a test split is given along with the evaluation
# graph (over the train split followed by the test split), the test accuracy
# is computed every eval_every epochs. Variants with a frozen encoder first
# train the CNN variant and reuse its encoder.
#
# It returns the trained model and the list of metrics of every epoch. If an
# output directory is given, the checkpoint and the metric log are written
# there after every epoch
# -----------------------------------------------------------------------------
def train(config: TrainConfig, train_set, graph_: graph.AffinityGraph,
          test_set=None, eval_graph: graph.AffinityGraph = None, outdir: str = None):
    """train a model over the train split using the given graph, whose vertices are
       the images of the split. If a test split is given along with the
       evaluation graph (over the train split followed by the test split), the
       test accuracy is computed every eval_every epochs. Variants with a
       frozen encoder first train the CNN variant and reuse its encoder.

       It returns the trained model and the list of metrics of every epoch. If
       an output directory is given, the checkpoint and the metric log are
       written there after every epoch

    """

    if graph_.get_num_vertices() < len(train_set):
        raise cnngaterrors.ContractError(ERROR_GRAPH_SIZE.format(graph_.get_num_vertices(),
                                                                 len(train_set)))

    model = build_model(config)
    if model.get_variant().needs_pretraining():
        LOGGER.info(INFO_PRETRAIN.format(config.get_pretrain_epochs(), config.variant))
        pretrain_config = dataclasses.replace(config, variant=hybrid.VARIANT_CNN,
                                              epochs=config.get_pretrain_epochs())
        pretrain_dir = None if outdir is None else \
            utils.get_output_directory(os.path.join(outdir, PRETRAIN_DIR))
        pretrained, _ = train(pretrain_config, train_set, graph_, test_set, eval_graph, pretrain_dir)
        model.copy_encoder(pretrained)

    images, labels = train_set.get_images(), train_set.get_labels()
    if test_set is not None:
        if eval_graph is None:
            raise cnngaterrors.ContractError(ERROR_EVAL_GRAPH)
        all_images = np.concatenate([images, test_set.get_images()])
        test_ids = len(train_set) + np.arange(len(test_set))

    metrics, velocities = [], {}
    for epoch in range(config.epochs):
        lr = config.lr_at(epoch)
        order = np.random.default_rng([config.seed, epoch]).permutation(len(train_set))

        (total_loss, correct) = (0.0, 0)
        for step, start in enumerate(range(0, len(order), config.batch_size)):
            rng = np.random.default_rng([config.seed, epoch, step])
            mains = order[start:start + config.batch_size]

            batch = hybrid.assemble_batch(graph_, mains, config.neighbors, model.get_hops(),
                                          images, rng, config.reuse_1hop)
            probs = model.forward(batch, training=True, rng=rng)
            loss = model.loss(labels[mains])
            if not math.isfinite(loss):
                dumpname = _dump_batch(batch, outdir)
                raise cnngaterrors.NaNLossError(ERROR_NAN_LOSS.format(loss, epoch, step, dumpname),
                                                dumpname)

            model.backward(labels[mains])
            sgd_step(model.get_parameters(trainable_only=True), lr, config.weight_decay,
                     config.momentum, velocities)

            total_loss += loss * len(mains)
            correct += int(np.count_nonzero(np.argmax(probs, axis=1) == labels[mains]))
            LOGGER.debug(DEBUG_STEP.format(epoch, step, loss))

        record = {'epoch': epoch, 'lr': lr,
                  'train_loss': total_loss / max(1, len(order)),
                  'train_acc': correct / max(1, len(order)),
                  'test_acc': math.nan}
        per_class = [math.nan] * config.num_classes
        if test_set is not None and ((epoch + 1) % config.eval_every == 0 or
                                     epoch + 1 == config.epochs):
            probs = hybrid.evaluate(model, all_images, eval_graph, test_ids, config.neighbors,
                                    np.random.default_rng([config.seed, epoch, EVAL_STREAM]),
                                    config.batch_size, config.reuse_1hop)
            report = analysis.accuracy_report(probs, test_set.get_labels(), config.num_classes)
            record['test_acc'] = report.get_overall()
            per_class = report.get_per_class()
        for iclass, iacc in enumerate(per_class):
            record['acc_class{0}'.format(iclass)] = iacc
        metrics.append(record)

        LOGGER.info(INFO_EPOCH.format(config.variant, epoch, lr, record['train_loss'],
                                      record['train_acc'], record['test_acc']))

        if outdir is not None:
            write_checkpoint(os.path.join(outdir, CHECKPOINT_NAME), model.get_parameters())
            write_metrics(os.path.join(outdir, METRICS_NAME), metrics, config.num_classes)

    if outdir is not None and not config.epochs:
        write_checkpoint(os.path.join(outdir, CHECKPOINT_NAME), model.get_parameters())
        write_metrics(os.path.join(outdir, METRICS_NAME), metrics, config.num_classes)

    return model, metrics


def _dump_batch(batch: hybrid.Batch, outdir: str):
    """write the main ids, support ids and images of the batch and return the name
       of the file

    """

    dumpname = os.path.join(os.getcwd() if outdir is None else outdir, NAN_DUMP_NAME)
    np.savez(dumpname, main_ids=batch.get_main_ids(), support_ids=batch.get_support_ids(),
             images=batch.get_images())
    return dumpname


# -- checkpoints

# -----------------------------------------------------------------------------
# write_checkpoint
#
# write the given parameters in binary format: the header HGAT1 followed, for
# every parameter, by the length of its name, the name, its rank, its dimensions
# (all of them unsigned 32-bit little-endian integers but the name) and its
# values as little-endian 64-bit floats in row-major order
# -----------------------------------------------------------------------------
def write_checkpoint(filename: str, params: list):
    """write the given parameters in binary format: the header HGAT1 followed, for
       every parameter, by the length of its name, the name, its rank, its
       dimensions (all of them unsigned 32-bit little-endian integers but the
       name) and its values as little-endian 64-bit floats in row-major order

    """

    with open(filename, 'wb') as stream:
        stream.write(CHECKPOINT_MAGIC)
        for iparam in params:
            name = iparam.get_name().encode('utf-8')
            value = iparam.get_value()
            stream.write(struct.pack('<I', len(name)))
            stream.write(name)
            stream.write(struct.pack('<I', value.ndim))
            stream.write(struct.pack('<' + 'I' * value.ndim, *value.shape))
            stream.write(np.ascontiguousarray(value, dtype='<f8').tobytes())

    LOGGER.debug(INFO_CHECKPOINT.format(filename))


# -----------------------------------------------------------------------------
# read_checkpoint
#
# return a dictionary with the arrays stored in the given checkpoint indexed by
# name, in the order they were written
# -----------------------------------------------------------------------------
def read_checkpoint(filename: str):
    """return a dictionary with the arrays stored in the given checkpoint indexed by
       name, in the order they were written

    """

    with open(filename, 'rb') as stream:
        contents = stream.read()

    if not contents.startswith(CHECKPOINT_MAGIC):
        raise cnngaterrors.FormatError(ERROR_CHECKPOINT_MAGIC.format(filename), 0)

    def _take(offset, size):
        if offset + size > len(contents):
            raise cnngaterrors.FormatError(ERROR_CHECKPOINT_TRUNCATED.format(filename), offset)
        return contents[offset:offset + size], offset + size

    params, offset = {}, len(CHECKPOINT_MAGIC)
    while offset < len(contents):
        chunk, offset = _take(offset, 4)
        name, offset = _take(offset, struct.unpack('<I', chunk)[0])
        chunk, offset = _take(offset, 4)
        rank = struct.unpack('<I', chunk)[0]
        chunk, offset = _take(offset, 4 * rank)
        shape = struct.unpack('<' + 'I' * rank, chunk)
        chunk, offset = _take(offset, 8 * int(np.prod(shape)))
        params[name.decode('utf-8')] = np.frombuffer(chunk, dtype='<f8').reshape(shape).astype(np.float64)

    return params


# -----------------------------------------------------------------------------
# load_checkpoint
#
# overwrite the parameters of the model with those stored in the given
# checkpoint. Every parameter of the model must be found with the same shape
# -----------------------------------------------------------------------------
def load_checkpoint(model: hybrid.HybridModel, filename: str):
    """overwrite the parameters of the model with those stored in the given
       checkpoint. Every parameter of the model must be found with the same
       shape

    """

    stored = read_checkpoint(filename)
    for iparam in model.get_parameters():
        value = stored.get(iparam.get_name())
        if value is None or value.shape != iparam.get_value().shape:
            raise cnngaterrors.FormatError(ERROR_CHECKPOINT_PARAMETER.format(
                filename, iparam.get_name(), iparam.get_value().shape))
        iparam.set_value(value)
    return model


# -- metric logs

def metrics_headers(num_classes: int):
    """return the headers of the metric log"""

    return ["epoch", "lr", "train_loss", "train_acc", "test_acc"] + \
        ["acc_class{0}".format(iclass) for iclass in range(num_classes)]


def write_metrics(filename: str, metrics: list, num_classes: int = 3):
    """write the metrics of every epoch in a csv file"""

    headers = metrics_headers(num_classes)
    spswriter.write_csv(filename, headers, [[irecord[iheader] for iheader in headers]
                                            for irecord in metrics])


def read_metrics(filename: str):
    """return the list of records of a metric log as dictionaries of floats, but the
       epoch which is an integer

    """

    records = []
    for irow in spsreader.SpsReader(filename, metrics_headers(0)):
        records.append({key: int(value) if key == 'epoch' else float(value)
                        for key, value in irow.items()})
    return records


# Local Variables:
# mode:python
# fill-column:80
# End:
