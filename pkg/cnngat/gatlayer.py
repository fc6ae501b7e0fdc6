#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# gatlayer.py
# Description: Multi-head graph attention layer over sampled neighborhoods
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 12:40:03.351977020 (1792240803)>
#

"""
Multi-head graph attention layer over sampled neighborhoods

Every output vertex i attends over a fixed number S of slots, given as rows of
an index array into the input features. For every head k the attention
coefficients are

    alpha_ij = softmax_j(LeakyReLU(a_k . [W_k v_i || W_k v_j]))

and the output of the head is LeakyReLU(sum_j alpha_ij W_k v_j). The output of
the layer is the concatenation of all heads.
"""

# imports
# -----------------------------------------------------------------------------
from collections.abc import Mapping

import numpy as np

if __package__ is None or __package__ == '':
    import cnngaterrors
    import spswriter
    import tensorops
else:
    from . import cnngaterrors
    from . import spswriter
    from . import tensorops

# globals
# -----------------------------------------------------------------------------

# headers of the csv file with attention coefficients
ATTENTION_HEADERS = ["vertex", "head", "slot", "neighbor", "alpha"]

# errors
ERROR_EMPTY_NEIGHBORHOOD = "attention coefficients require at least one neighbor"
ERROR_MISSING_FEATURE = "vertex {0} references neighbor {1} which has no feature vector in the batch"
ERROR_MISSING_CENTER = "output vertex {0} has no feature vector in the batch"
ERROR_CENTERS = "{0} centers were given for {1} neighborhoods"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# attention_coefficients
#
# return the attention coefficients of a center over its neighbors for a single
# head with weight W (F'×F) and attention vector a (2F')
# -----------------------------------------------------------------------------
def attention_coefficients(center_feat: np.ndarray, neighbor_feats: np.ndarray,
                           weight: np.ndarray, attention: np.ndarray,
                           slope: float = tensorops.LEAKY_SLOPE):
    """return the attention coefficients of a center over its neighbors for a
       single head with weight W (F'×F) and attention vector a (2F')

    """

    neighbor_feats = np.atleast_2d(neighbor_feats)
    if len(neighbor_feats) == 0 or neighbor_feats.size == 0:
        raise cnngaterrors.ContractError(ERROR_EMPTY_NEIGHBORHOOD)

    units = weight.shape[0]
    tensorops.check_axis("attention", "attention vector", attention.shape[0], 2 * units)
    tensorops.check_axis("attention", "center features", center_feat.shape[0], weight.shape[1])
    tensorops.check_axis("attention", "neighbor features", neighbor_feats.shape[1], weight.shape[1])

    logits = attention[:units] @ (weight @ center_feat) + (neighbor_feats @ weight.T) @ attention[units:]
    return tensorops.softmax(tensorops.leaky_relu(logits, slope))


# -----------------------------------------------------------------------------
# gat_layer_forward
#
# apply a graph attention layer to the vertices given in neighborhoods. features
# is either a mapping from vertex ids to vectors or an array indexed by vertex
# id. The center of every neighborhood is prepended to its samples
# -----------------------------------------------------------------------------
def gat_layer_forward(features, neighborhoods: list, params,
                      slope: float = tensorops.LEAKY_SLOPE):
    """apply a graph attention layer to the vertices given in neighborhoods.
       features is either a mapping from vertex ids to vectors or an array
       indexed by vertex id. The center of every neighborhood is prepended to
       its samples

    """

    # compute the position of every vertex id in the stack of features
    if isinstance(features, Mapping):
        ids = sorted(features.keys())
        stack = np.array([features[iid] for iid in ids], dtype=tensorops.DTYPE)
        position = {iid: pos for pos, iid in enumerate(ids)}
    else:
        stack = np.asarray(features, dtype=tensorops.DTYPE)
        position = {iid: iid for iid in range(len(stack))}

    centers, index = [], []
    for ineighborhood in neighborhoods:
        center = ineighborhood.get_center()
        if center not in position:
            raise cnngaterrors.BatchAssemblyError(ERROR_MISSING_CENTER.format(center))
        row = [position[center]]
        for isample in ineighborhood.get_samples():
            if int(isample) not in position:
                raise cnngaterrors.BatchAssemblyError(ERROR_MISSING_FEATURE.format(center, isample))
            row.append(position[int(isample)])
        centers.append(position[center])
        index.append(row)

    layer = GATLayer.from_params(params, slope)
    return layer.forward(stack, np.array(centers), np.array(index), training=False)


# -----------------------------------------------------------------------------
# GATLayerParams
#
# The weights W (K×F'×F) and attention vectors a (K×2F') of all heads
# -----------------------------------------------------------------------------
class GATLayerParams():
    """The weights W (K×F'×F) and attention vectors a (K×2F') of all heads"""

    def __init__(self, name: str, in_dim: int, units: int, heads: int,
                 rng: np.random.Generator):
        """create the parameters of a layer with the given input dimension, units per
           head and number of heads, initialized with glorot_uniform

        """

        (self._in_dim, self._units, self._heads) = (in_dim, units, heads)
        self._weight = tensorops.Parameter(name + ".weight",
                                           tensorops.glorot_uniform((heads, units, in_dim),
                                                                    in_dim, units, rng))
        self._attention = tensorops.Parameter(name + ".attention",
                                              tensorops.glorot_uniform((heads, 2 * units),
                                                                       2 * units, 1, rng))

    def get_in_dim(self):
        """return the dimension F of the input features"""

        return self._in_dim

    def get_units(self):
        """return the dimension F' of every head"""

        return self._units

    def get_heads(self):
        """return the number of heads K"""

        return self._heads

    def get_out_dim(self):
        """return the dimension K·F' of the output"""

        return self._heads * self._units

    def get_weight(self, head: int = None):
        """return the weights of all heads or, if a head is given, only its own"""

        value = self._weight.get_value()
        return value if head is None else value[head]

    def get_attention(self, head: int = None):
        """return the attention vectors of all heads or, if a head is given, only its
           own

        """

        value = self._attention.get_value()
        return value if head is None else value[head]

    def get_parameters(self):
        """return the list of parameters"""

        return [self._weight, self._attention]


# -----------------------------------------------------------------------------
# GATLayer
#
# A graph attention layer. It caches all intermediate results of forward so
# that backward computes the exact gradients with respect to the features, the
# weights and the attention vectors
# -----------------------------------------------------------------------------
class GATLayer():
    """A graph attention layer. It caches all intermediate results of forward so
       that backward computes the exact gradients with respect to the features,
       the weights and the attention vectors

    """

    def __init__(self, name: str, in_dim: int, units: int, heads: int,
                 rng: np.random.Generator, slope: float = tensorops.LEAKY_SLOPE,
                 dropout: float = 0.0, dropout_features: bool = True,
                 dropout_attention: bool = True):
        """create a layer with fresh parameters. Dropout with the given rate is applied
           to the input features and/or to the attention coefficients in training
           mode as requested

        """

        self._params = GATLayerParams(name, in_dim, units, heads, rng)
        (self._slope, self._dropout) = (slope, dropout)
        (self._dropout_features, self._dropout_attention) = (dropout_features, dropout_attention)
        self._cache = None

    @classmethod
    def from_params(cls, params: GATLayerParams, slope: float = tensorops.LEAKY_SLOPE):
        """create a layer without dropout sharing the given parameters"""

        layer = cls.__new__(cls)
        layer._params = params
        (layer._slope, layer._dropout) = (slope, 0.0)
        (layer._dropout_features, layer._dropout_attention) = (False, False)
        layer._cache = None
        return layer

    def get_params(self):
        """return the parameters of this layer"""

        return self._params

    def get_parameters(self):
        """return the list of parameters"""

        return self._params.get_parameters()

    def get_attention(self):
        """return the attention coefficients N_out×K×S of the last forward pass"""

        if self._cache is None:
            raise cnngaterrors.StateError(tensorops.ERROR_BACKWARD_BEFORE_FORWARD.format("attention"))
        return self._cache['alpha']

    def forward(self, features: np.ndarray, centers: np.ndarray, index: np.ndarray,
                training: bool = False, rng: np.random.Generator = None):
        """compute the new representation of every output vertex. features is N×F,
           centers gives the position in features of every output vertex and
           index (N_out×S) the positions of the slots it attends to

        """

        tensorops.check_rank("gat", features, 2)
        tensorops.check_axis("gat", "input features", features.shape[1], self._params.get_in_dim())
        index = np.asarray(index, dtype=np.int64)
        centers = np.asarray(centers, dtype=np.int64)
        if len(centers) != len(index):
            raise cnngaterrors.DimensionError(ERROR_CENTERS.format(len(centers), len(index)))
        if index.size == 0 or index.shape[1] == 0:
            raise cnngaterrors.ContractError(ERROR_EMPTY_NEIGHBORHOOD)
        outside = np.argwhere((index < 0) | (index >= len(features)))
        if len(outside):
            row, col = outside[0]
            raise cnngaterrors.BatchAssemblyError(ERROR_MISSING_FEATURE.format(row, index[row, col]))
        wrong = np.flatnonzero((centers < 0) | (centers >= len(features)))
        if len(wrong):
            raise cnngaterrors.BatchAssemblyError(ERROR_MISSING_CENTER.format(int(wrong[0])))

        weight, attention = self._params.get_weight(), self._params.get_attention()
        units = self._params.get_units()

        mask_features = tensorops.dropout_mask(features.shape, self._dropout,
                                               training and self._dropout_features, rng)
        dropped = features if mask_features is None else features * mask_features

        # transformed features of every input vertex: N×K×F'
        hidden = np.einsum('nf,kgf->nkg', dropped, weight, optimize=True)
        score_src = np.einsum('nkg,kg->nk', hidden, attention[:, :units])
        score_dst = np.einsum('nkg,kg->nk', hidden, attention[:, units:])

        # attention logits N_out×K×S
        logits = score_src[centers][:, :, None] + score_dst[index].transpose(0, 2, 1)
        alpha = tensorops.softmax(tensorops.leaky_relu(logits, self._slope))

        mask_alpha = tensorops.dropout_mask(alpha.shape, self._dropout,
                                            training and self._dropout_attention, rng)
        alpha_dropped = alpha if mask_alpha is None else alpha * mask_alpha

        gathered = hidden[index]
        aggregated = np.einsum('oks,oskg->okg', alpha_dropped, gathered, optimize=True)
        output = tensorops.leaky_relu(aggregated, self._slope)

        self._cache = {'features': features, 'dropped': dropped, 'mask_features': mask_features,
                       'hidden': hidden, 'centers': centers, 'index': index,
                       'logits': logits, 'alpha': alpha, 'mask_alpha': mask_alpha,
                       'alpha_dropped': alpha_dropped, 'gathered': gathered,
                       'aggregated': aggregated}

        return output.reshape(len(index), -1)

    def backward(self, doutput: np.ndarray):
        """accumulate the gradients of the weights and attention vectors and return the
           gradient with respect to the input features. Slots repeated in the
           index accumulate their contributions

        """

        if self._cache is None:
            raise cnngaterrors.StateError(tensorops.ERROR_BACKWARD_BEFORE_FORWARD.format("gat"))
        cache = self._cache

        weight, attention = self._params.get_weight(), self._params.get_attention()
        units = self._params.get_units()
        index, centers, hidden = cache['index'], cache['centers'], cache['hidden']

        daggregated = tensorops.leaky_relu_backward(doutput.reshape(cache['aggregated'].shape),
                                                    cache['aggregated'], self._slope)

        # through the weighted sum of the gathered hidden features
        dalpha = np.einsum('okg,oskg->oks', daggregated, cache['gathered'], optimize=True)
        dgathered = np.einsum('oks,okg->oskg', cache['alpha_dropped'], daggregated, optimize=True)
        dhidden = np.zeros_like(hidden)
        np.add.at(dhidden, index, dgathered)

        # through dropout, softmax and LeakyReLU of the attention logits
        if cache['mask_alpha'] is not None:
            dalpha = dalpha * cache['mask_alpha']
        dlogits = tensorops.leaky_relu_backward(tensorops.softmax_backward(dalpha, cache['alpha']),
                                                cache['logits'], self._slope)

        dscore_src = np.zeros(hidden.shape[:2])
        np.add.at(dscore_src, centers, dlogits.sum(axis=2))
        dscore_dst = np.zeros(hidden.shape[:2])
        np.add.at(dscore_dst, index, dlogits.transpose(0, 2, 1))

        dhidden += dscore_src[:, :, None] * attention[None, :, :units]
        dhidden += dscore_dst[:, :, None] * attention[None, :, units:]

        dattention = np.concatenate([np.einsum('nk,nkg->kg', dscore_src, hidden),
                                     np.einsum('nk,nkg->kg', dscore_dst, hidden)], axis=1)
        dweight = np.einsum('nkg,nf->kgf', dhidden, cache['dropped'], optimize=True)

        weight_param, attention_param = self._params.get_parameters()
        weight_param.accumulate(dweight)
        attention_param.accumulate(dattention)

        dfeatures = np.einsum('nkg,kgf->nf', dhidden, weight, optimize=True)
        if cache['mask_features'] is not None:
            dfeatures = dfeatures * cache['mask_features']
        return dfeatures

    def write_attention(self, filename: str, vertex_ids=None, slot_ids=None):
        """dump the attention coefficients of the last forward pass to a csv file with
           one row per (vertex, head, slot). vertex_ids and slot_ids translate
           positions in the batch into vertex ids

        """

        alpha, index = self.get_attention(), self._cache['index']
        vertex_ids = np.arange(len(index)) if vertex_ids is None else np.asarray(vertex_ids)
        slot_ids = np.arange(index.max() + 1) if slot_ids is None else np.asarray(slot_ids)

        rows = []
        for ivertex in range(alpha.shape[0]):
            for ihead in range(alpha.shape[1]):
                for islot in range(alpha.shape[2]):
                    rows.append([int(vertex_ids[ivertex]), ihead, islot,
                                 int(slot_ids[index[ivertex, islot]]),
                                 float(alpha[ivertex, ihead, islot])])

        spswriter.write_csv(filename, ATTENTION_HEADERS, rows)


# Local Variables:
# mode:python
# fill-column:80
# End:
