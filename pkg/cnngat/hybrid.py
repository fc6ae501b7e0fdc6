#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# hybrid.py
# Description: CNN/GAT hybrid model, its variants and batch assembly
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 17:26:10.550318904 (1792257970)>
#

"""
CNN/GAT hybrid model, its variants and batch assembly

A batch consists of M main vertices along with all the vertices required by
their sampled neighborhoods. The images of all of them are encoded by the CNN;
two graph attention layers compute a new representation of the main vertices
from their neighborhoods, and a skip path carries the CNN representation of
the main vertices past them. The classifier reads the concatenation of both.
"""

# imports
# -----------------------------------------------------------------------------
import numpy as np

if __package__ is None or __package__ == '':
    import cnnencoder
    import cnngaterrors
    import gatlayer
    import graph
    import tensorops
    import utils
else:
    from . import cnnencoder
    from . import cnngaterrors
    from . import gatlayer
    from . import graph
    from . import tensorops
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('hybrid')

# variants: (end_to_end, use_skip, use_gat)
VARIANT_CNN = "CNN"
VARIANT_RAWGAT = "RawGAT"
VARIANT_SKIPGAT = "SkipGAT"
VARIANT_ENDGAT = "EndGAT"
VARIANT_CNNGAT = "CNNGAT"
VARIANTS = {VARIANT_CNN: (True, True, False),
            VARIANT_RAWGAT: (False, False, True),
            VARIANT_SKIPGAT: (False, True, True),
            VARIANT_ENDGAT: (True, False, True),
            VARIANT_CNNGAT: (True, True, True)}

# info
INFO_MODEL = "{0} model created with {1} parameters ({2} trainable)"

# debug
DEBUG_BATCH = "batch assembled: {0} main vertices, {1} images"

# errors
ERROR_UNKNOWN_VARIANT = "unknown variant '{0}'. Choose one among {1}"
ERROR_MISSING_IMAGE = "vertex {0} has no image data (only {1} images are available)"
ERROR_HOPS = "the number of hops should be 0, 1 or 2 but {0} was given"
ERROR_LAYER_MISMATCH = "the {0} model has {1} graph attention layers but the batch provides neighborhoods for {2}"
ERROR_GAT_UNITS = "the graph attention path expects units for 1 or 2 layers but got {0}"
ERROR_ENCODER_MISMATCH = "the encoders of both models have different parameters: {0} vs {1}"


# -----------------------------------------------------------------------------
# ModelVariant
#
# One of the variants of the hybrid model, given by three flags: whether the
# gradients flow into the CNN, whether the skip path is used and whether the
# GAT path is used
# -----------------------------------------------------------------------------
class ModelVariant():
    """One of the variants of the hybrid model, given by three flags: whether the
       gradients flow into the CNN, whether the skip path is used and whether
       the GAT path is used

    """

    def __init__(self, name: str):
        """create the variant with the given name"""

        if name not in VARIANTS:
            raise cnngaterrors.ConfigurationError(ERROR_UNKNOWN_VARIANT.format(name,
                                                                               list(VARIANTS)))
        self._name = name
        (self._end_to_end, self._use_skip, self._use_gat) = VARIANTS[name]

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return self._name

    def __eq__(self, other):
        return isinstance(other, ModelVariant) and self._name == other._name

    def __hash__(self):
        return hash(self._name)

    def get_name(self):
        """return the name of this variant"""

        return self._name

    def is_end_to_end(self):
        """return whether gradients flow into the CNN"""

        return self._end_to_end

    def uses_skip(self):
        """return whether the classifier reads the skip path"""

        return self._use_skip

    def uses_gat(self):
        """return whether the classifier reads the GAT path"""

        return self._use_gat

    def needs_pretraining(self):
        """return whether the CNN has to be trained beforehand"""

        return not self._end_to_end


# -----------------------------------------------------------------------------
# Batch
#
# The images of the main vertices and their supports along with the
# neighborhoods of every graph attention layer given as positions in the batch.
# Layer l reads the outputs of layer l-1 (the images for the first layer) and
# its centers are the first rows of them
# -----------------------------------------------------------------------------
class Batch():
    """The images of the main vertices and their supports along with the
       neighborhoods of every graph attention layer given as positions in the
       batch. Layer l reads the outputs of layer l-1 (the images for the first
       layer) and its centers are the first rows of them

    """

    def __init__(self, main_ids, vertex_ids, images: np.ndarray, layers: list,
                 main_positions=None):
        """vertex_ids are the ids of all images in the batch in order, and layers is a
           list of pairs (centers, index) with the positions used by every layer.
           The positions of the main vertices are computed from their ids unless
           they are given, which is necessary if ids are repeated in the batch

        """

        self._main_ids = np.asarray(main_ids, dtype=np.int64)
        self._vertex_ids = np.asarray(vertex_ids, dtype=np.int64)
        (self._images, self._layers) = (images, layers)

        if main_positions is None:
            position = {iid: ipos for ipos, iid in enumerate(self._vertex_ids.tolist())}
            main_positions = [position[iid] for iid in self._main_ids.tolist()]
        self._main_positions = np.asarray(main_positions, dtype=np.int64)

    def __len__(self):
        """return the number of images in the batch"""

        return len(self._vertex_ids)

    def get_main_ids(self):
        """return the ids of the main vertices"""

        return self._main_ids

    def get_main_positions(self):
        """return the positions of the main vertices in the batch"""

        return self._main_positions

    def get_vertex_ids(self):
        """return the ids of all images in the batch"""

        return self._vertex_ids

    def get_support_ids(self):
        """return the ids of the vertices in the batch which are not main"""

        return np.setdiff1d(self._vertex_ids, self._main_ids)

    def get_images(self):
        """return the stack of images of the batch"""

        return self._images

    def get_layers(self):
        """return the list of (centers, index) of every graph attention layer"""

        return self._layers


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# assemble_batch
#
# sample the neighborhoods of the main vertices and of their supports, collect
# the images of all of them removing duplicates and compute the index used by
# every graph attention layer.
#
# With two hops, every main vertex samples n neighbors that serve as its
# neighborhood in both layers. The first layer also has to compute the
# representation of these neighbors, so each of them samples n neighbors of its
# own. If reuse_1hop is true, the latter are drawn only among the vertices
# already in the batch (the center itself if there is none). The rng is
# consumed by the main vertices first, in order, and then by their supports in
# order of first appearance
# -----------------------------------------------------------------------------
def assemble_batch(graph_: graph.AffinityGraph, main_ids, n: int, hops: int,
                   images: np.ndarray, rng: np.random.Generator, reuse_1hop: bool = False):
    """sample the neighborhoods of the main vertices and of their supports, collect
       the images of all of them removing duplicates and compute the index used
       by every graph attention layer.

       With two hops, every main vertex samples n neighbors that serve as its
       neighborhood in both layers. The first layer also has to compute the
       representation of these neighbors, so each of them samples n neighbors
       of its own. If reuse_1hop is true, the latter are drawn only among the
       vertices already in the batch (the center itself if there is none). The
       rng is consumed by the main vertices first, in order, and then by their
       supports in order of first appearance

    """

    if hops not in (0, 1, 2):
        raise cnngaterrors.ContractError(ERROR_HOPS.format(hops))

    main_ids = [int(iid) for iid in main_ids]
    for iid in main_ids:
        _check_image(iid, images)

    # ids in the batch, in order of first appearance, and their positions
    vertex_ids, position = [], {}

    def _add(iid):
        if iid not in position:
            _check_image(iid, images)
            position[iid] = len(vertex_ids)
            vertex_ids.append(iid)

    for iid in main_ids:
        _add(iid)

    layers = []
    if hops > 0:
        first = {iid: graph.sample_neighborhood(graph_, iid, n, rng) for iid in main_ids}
        for iid in main_ids:
            for isample in first[iid].get_samples().tolist():
                _add(isample)

        def _index(centers, neighborhoods):
            return (np.array([position[icenter] for icenter in centers], dtype=np.int64),
                    np.array([[position[icenter]] + [position[isample] for isample in
                                                     neighborhoods[icenter].get_samples().tolist()]
                              for icenter in centers], dtype=np.int64))

        if hops == 2:
            onehop = list(vertex_ids)
            allowed = None
            if reuse_1hop:
                allowed = np.zeros(graph_.get_num_vertices(), dtype=bool)
                allowed[onehop] = True

            second = dict(first)
            for iid in onehop:
                if iid not in second:
                    second[iid] = graph.sample_neighborhood(graph_, iid, n, rng, allowed)
            for iid in onehop:
                for isample in second[iid].get_samples().tolist():
                    _add(isample)

            # the first layer computes the representation of every vertex within
            # one hop, i.e., the first rows of the batch
            layers.append(_index(onehop, second))

        layers.append(_index(main_ids, first))

    batch = Batch(main_ids, vertex_ids, images[np.array(vertex_ids, dtype=np.int64)], layers)
    LOGGER.debug(DEBUG_BATCH.format(len(main_ids), len(batch)))
    return batch


def _check_image(iid: int, images: np.ndarray):
    """raise an ingestion error if there is no image for the given vertex"""

    if not 0 <= iid < len(images):
        raise cnngaterrors.IngestionError(ERROR_MISSING_IMAGE.format(iid, len(images)))


# -----------------------------------------------------------------------------
# HybridModel
#
# CNN encoder, graph attention layers, skip projection and classifier of the
# given variant
# -----------------------------------------------------------------------------
class HybridModel():
    """CNN encoder, graph attention layers, skip projection and classifier of the
       given variant

    """

    def __init__(self, variant: ModelVariant, rng: np.random.Generator,
                 cnn_config: cnnencoder.CnnConfig = None, num_classes: int = 3,
                 gat_units=(30, 10), heads: int = 5, dropout: float = 0.3,
                 dropout_features: bool = True, dropout_attention: bool = True,
                 dropout_hidden: bool = True, raw_skip: bool = False,
                 slope: float = tensorops.LEAKY_SLOPE):
        """create a model of the given variant with fresh parameters drawn from rng.
           Dropout is applied with the given rate to the inputs of every graph
           attention layer, to their attention coefficients and to the input of
           the classifier, as requested with the corresponding flags

        """

        if variant.uses_gat() and len(gat_units) not in (1, 2):
            raise cnngaterrors.ConfigurationError(ERROR_GAT_UNITS.format(list(gat_units)))

        self._variant = variant
        self._cnn_config = cnnencoder.CnnConfig() if cnn_config is None else cnn_config
        (self._num_classes, self._dropout, self._slope) = (num_classes, dropout, slope)
        (self._dropout_hidden, self._raw_skip) = (dropout_hidden, raw_skip)

        self._encoder = cnnencoder.CnnEncoder(self._cnn_config, rng)
        feature_dim = self._cnn_config.get_feature_dim()

        self._gats, in_dim = [], feature_dim
        if variant.uses_gat():
            for ilayer, units in enumerate(gat_units):
                self._gats.append(gatlayer.GATLayer("gat{0}".format(ilayer), in_dim, units, heads,
                                                    rng, slope, dropout, dropout_features,
                                                    dropout_attention))
                in_dim = heads * units

        self._skip = None
        if variant.uses_skip() and not raw_skip:
            self._skip = tensorops.Dense("skip", feature_dim, feature_dim, rng, bias=False)

        hidden_dim = (feature_dim if variant.uses_skip() else 0) + \
            (in_dim if variant.uses_gat() else 0)
        self._classifier = tensorops.Dense("classifier", hidden_dim, num_classes, rng)
        self._cache = None

        LOGGER.info(INFO_MODEL.format(variant, self.parameter_count(),
                                      sum(iparam.get_value().size
                                          for iparam in self.get_parameters(trainable_only=True))))

    def get_variant(self):
        """return the variant of this model"""

        return self._variant

    def get_num_classes(self):
        """return the number of classes"""

        return self._num_classes

    def get_hops(self):
        """return the number of hops required by the batches of this model"""

        return len(self._gats)

    def get_encoder(self):
        """return the CNN encoder"""

        return self._encoder

    def get_gat_layers(self):
        """return the list of graph attention layers"""

        return self._gats

    def get_parameters(self, trainable_only: bool = False):
        """return the list of all parameters. If trainable_only is true, the
           parameters of the encoder are excluded unless the variant is trained
           end to end

        """

        parameters = []
        if self._variant.is_end_to_end() or not trainable_only:
            parameters += self._encoder.get_parameters()
        for igat in self._gats:
            parameters += igat.get_parameters()
        if self._skip is not None:
            parameters += self._skip.get_parameters()
        return parameters + self._classifier.get_parameters()

    def parameter_count(self):
        """return the number of scalar parameters"""

        return sum(iparam.get_value().size for iparam in self.get_parameters())

    def zero_grad(self):
        """reset the gradients of all parameters"""

        for iparam in self.get_parameters():
            iparam.zero_grad()

    def copy_encoder(self, other):
        """overwrite the parameters of the encoder with those of the encoder of
           another model

        """

        source = other.get_encoder().get_parameters()
        target = self._encoder.get_parameters()
        if [iparam.get_value().shape for iparam in source] != \
           [iparam.get_value().shape for iparam in target]:
            raise cnngaterrors.ConfigurationError(ERROR_ENCODER_MISMATCH.format(
                [str(iparam) for iparam in source], [str(iparam) for iparam in target]))
        for isource, itarget in zip(source, target):
            itarget.set_value(isource.get_value())

    def forward(self, batch: Batch, training: bool = False, rng: np.random.Generator = None):
        """return the M×C class probabilities of the main vertices of the batch"""

        if len(batch.get_layers()) != len(self._gats):
            raise cnngaterrors.ConfigurationError(ERROR_LAYER_MISMATCH.format(
                self._variant, len(self._gats), len(batch.get_layers())))

        # the encoder of frozen variants is evaluated without caching so that no
        # gradient can reach it
        if self._variant.is_end_to_end():
            features = self._encoder.forward(batch.get_images())
        else:
            features = self._encoder.encode(batch.get_images())

        parts, skip = [], None
        if self._variant.uses_skip():
            skip = features[batch.get_main_positions()]
            if self._raw_skip:
                parts.append(skip)
            else:
                skip = self._skip.forward(skip)
                parts.append(tensorops.leaky_relu(skip, self._slope))

        if self._variant.uses_gat():
            hidden = features
            for igat, (centers, index) in zip(self._gats, batch.get_layers()):
                hidden = igat.forward(hidden, centers, index, training, rng)
            parts.append(hidden)

        hidden = np.concatenate(parts, axis=1)
        mask = tensorops.dropout_mask(hidden.shape, self._dropout,
                                      training and self._dropout_hidden, rng)
        logits = self._classifier.forward(hidden if mask is None else hidden * mask)
        probs = tensorops.softmax(logits)

        self._cache = {'batch': batch, 'features': features, 'mask': mask, 'skip': skip,
                       'probs': probs}
        return probs

    def loss(self, labels):
        """return the mean cross entropy of the last forward pass"""

        if self._cache is None:
            raise cnngaterrors.StateError(tensorops.ERROR_BACKWARD_BEFORE_FORWARD.format("loss"))
        return tensorops.cross_entropy(self._cache['probs'], labels)

    def backward(self, labels):
        """accumulate the gradients of the mean cross entropy of the last forward pass
           with respect to all parameters. The encoder receives no gradient
           unless the variant is trained end to end

        """

        if self._cache is None:
            raise cnngaterrors.StateError(tensorops.ERROR_BACKWARD_BEFORE_FORWARD.format("hybrid"))
        cache = self._cache
        batch, features = cache['batch'], cache['features']

        dhidden = self._classifier.backward(
            tensorops.softmax_cross_entropy_backward(cache['probs'], labels))
        if cache['mask'] is not None:
            dhidden = dhidden * cache['mask']

        dfeatures = np.zeros_like(features)
        offset = 0
        if self._variant.uses_skip():
            offset = self._cnn_config.get_feature_dim()
            dskip = dhidden[:, :offset]
            if not self._raw_skip:
                dskip = self._skip.backward(tensorops.leaky_relu_backward(dskip, cache['skip'],
                                                                          self._slope))
            np.add.at(dfeatures, batch.get_main_positions(), dskip)

        if self._variant.uses_gat():
            dgat = dhidden[:, offset:]
            for igat in reversed(self._gats):
                dgat = igat.backward(dgat)
            dfeatures += dgat

        if self._variant.is_end_to_end():
            self._encoder.backward(dfeatures)


# -----------------------------------------------------------------------------
# evaluate
#
# return the N×C class probabilities of the given vertices computed in batches
# of batch_size main vertices with the model in evaluation mode
# -----------------------------------------------------------------------------
def evaluate(model: HybridModel, images: np.ndarray, graph_: graph.AffinityGraph, ids,
             n: int, rng: np.random.Generator, batch_size: int = 100,
             reuse_1hop: bool = False):
    """return the N×C class probabilities of the given vertices computed in batches
       of batch_size main vertices with the model in evaluation mode

    """

    ids = np.asarray(ids, dtype=np.int64)
    probs = []
    for start in range(0, len(ids), batch_size):
        batch = assemble_batch(graph_, ids[start:start + batch_size], n, model.get_hops(),
                               images, rng, reuse_1hop)
        probs.append(model.forward(batch, training=False))

    if not probs:
        return np.zeros((0, model.get_num_classes()))
    return np.concatenate(probs, axis=0)


# Local Variables:
# mode:python
# fill-column:80
# End:
