#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# tensorops.py
# Description: Differentiable layers with exact analytic gradients
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 09:31:20.004418276 (1792229480)>
#

"""
Differentiable layers with exact analytic gradients

Tensors are numpy arrays of 64-bit floats. Every operation comes in pairs: a
forward map and a backward map which, given the gradient of a scalar loss with
respect to the output, returns the gradients with respect to the inputs and the
parameters. Layers (Dense, Conv2d) cache their inputs in forward and accumulate
parameter gradients in backward so that they can be composed in reverse order.
"""

# imports
# -----------------------------------------------------------------------------
import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

if __package__ is None or __package__ == '':
    import cnngaterrors
else:
    from . import cnngaterrors

# globals
# -----------------------------------------------------------------------------

# negative slope of LeakyReLU used everywhere
LEAKY_SLOPE = 0.2

# probabilities are clamped below before taking logarithms
PROB_CLAMP = 1e-12

# floor of the denominator used in relative gradient errors
REL_ERROR_FLOOR = 1e-8

DTYPE = np.float64

# errors
ERROR_RANK = "{0}: expected a tensor of rank {1} but got shape {2}"
ERROR_AXIS = "{0}: axis '{1}' has size {2} but {3} was expected"
ERROR_KERNEL_TOO_LARGE = "conv2d: kernel of size {0}x{0} exceeds input of size {1}x{2}"
ERROR_NON_SQUARE_KERNEL = "conv2d: kernels should be square but got {0}x{1}"
ERROR_SLOPE = "leaky_relu: slope {0} is not in (0, 1)"
ERROR_DROPOUT_RATE = "dropout: rate {0} is not in [0, 1)"
ERROR_LABEL_RANGE = "cross_entropy: label {0} at position {1} is not in [0, {2})"
ERROR_BATCH_LABELS = "cross_entropy: {0} rows of probabilities but {1} labels"
ERROR_NON_DETERMINISTIC = "finite_difference_check: the fragment returned {0} and {1} for the same parameters"
ERROR_EPS = "finite_difference_check: eps should be strictly positive but {0} was given"
ERROR_GRADIENT_COUNT = "finite_difference_check: {0} parameters but {1} gradients"
ERROR_BACKWARD_BEFORE_FORWARD = "{0}: backward invoked before forward"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# check_rank
#
# raise a dimension error unless the given tensor has the expected rank
# -----------------------------------------------------------------------------
def check_rank(opname: str, tensor: np.ndarray, rank: int):
    """raise a dimension error unless the given tensor has the expected rank"""

    if np.ndim(tensor) != rank:
        raise cnngaterrors.DimensionError(ERROR_RANK.format(opname, rank, np.shape(tensor)))


# -----------------------------------------------------------------------------
# check_axis
#
# raise a dimension error naming the offending axis unless its size is the
# expected one
# -----------------------------------------------------------------------------
def check_axis(opname: str, axis: str, size: int, expected: int):
    """raise a dimension error naming the offending axis unless its size is the
       expected one

    """

    if size != expected:
        raise cnngaterrors.DimensionError(ERROR_AXIS.format(opname, axis, size, expected))


# -----------------------------------------------------------------------------
# glorot_uniform
#
# return a tensor with the given shape sampled uniformly in
# +-sqrt(6/(fan_in+fan_out))
# -----------------------------------------------------------------------------
def glorot_uniform(shape, fan_in: int, fan_out: int, rng: np.random.Generator):
    """return a tensor with the given shape sampled uniformly in
       +-sqrt(6/(fan_in+fan_out))

    """

    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape).astype(DTYPE)


# -- dense

def dense_forward(inputs: np.ndarray, weight: np.ndarray, bias: np.ndarray):
    """return inputs · weightᵀ + bias where inputs is B×F, weight is F'×F and bias
       has F' entries

    """

    check_rank("dense", inputs, 2)
    check_rank("dense", weight, 2)
    check_rank("dense", bias, 1)
    check_axis("dense", "input features", inputs.shape[1], weight.shape[1])
    check_axis("dense", "bias", bias.shape[0], weight.shape[0])

    return inputs @ weight.T + bias


def dense_backward(doutput: np.ndarray, inputs: np.ndarray, weight: np.ndarray):
    """return the gradients (dinputs, dweight, dbias) of the dense map"""

    return doutput @ weight, doutput.T @ inputs, doutput.sum(axis=0)


# -- convolution

# -----------------------------------------------------------------------------
# conv2d_forward
#
# valid cross-correlation with stride 1 of a B×C×H×W input with C'×C×k×k kernels
# plus a bias per output channel. The output is B×C'×(H-k+1)×(W-k+1)
# -----------------------------------------------------------------------------
def conv2d_forward(inputs: np.ndarray, kernels: np.ndarray, bias: np.ndarray):
    """valid cross-correlation with stride 1 of a B×C×H×W input with C'×C×k×k
       kernels plus a bias per output channel. The output is
       B×C'×(H-k+1)×(W-k+1)

    """

    check_rank("conv2d", inputs, 4)
    check_rank("conv2d", kernels, 4)
    check_rank("conv2d", bias, 1)
    check_axis("conv2d", "input channels", inputs.shape[1], kernels.shape[1])
    check_axis("conv2d", "bias", bias.shape[0], kernels.shape[0])
    if kernels.shape[2] != kernels.shape[3]:
        raise cnngaterrors.DimensionError(ERROR_NON_SQUARE_KERNEL.format(kernels.shape[2],
                                                                         kernels.shape[3]))
    size = kernels.shape[2]
    if size > inputs.shape[2] or size > inputs.shape[3]:
        raise cnngaterrors.DimensionError(ERROR_KERNEL_TOO_LARGE.format(size,
                                                                        inputs.shape[2],
                                                                        inputs.shape[3]))

    # windows is B×C×H'×W'×k×k
    windows = sliding_window_view(inputs, (size, size), axis=(2, 3))
    output = np.einsum('bchwij,ocij->bohw', windows, kernels, optimize=True)
    return output + bias[None, :, None, None]


def conv2d_backward(doutput: np.ndarray, inputs: np.ndarray, kernels: np.ndarray):
    """return the gradients (dinputs, dkernels, dbias) of the convolution"""

    size = kernels.shape[2]
    height, width = doutput.shape[2], doutput.shape[3]

    windows = sliding_window_view(inputs, (size, size), axis=(2, 3))
    dkernels = np.einsum('bchwij,bohw->ocij', windows, doutput, optimize=True)
    dbias = doutput.sum(axis=(0, 2, 3))

    # every kernel offset (i, j) scatters the output gradient back over the
    # region of the input it was correlated with
    dinputs = np.zeros_like(inputs)
    for i in range(size):
        for j in range(size):
            dinputs[:, :, i:i + height, j:j + width] += np.einsum('bohw,oc->bchw',
                                                                  doutput,
                                                                  kernels[:, :, i, j],
                                                                  optimize=True)

    return dinputs, dkernels, dbias


# -- activations

def leaky_relu(inputs: np.ndarray, slope: float = LEAKY_SLOPE):
    """elementwise x if x >= 0 and slope·x otherwise"""

    if not 0 < slope < 1:
        raise cnngaterrors.ConfigurationError(ERROR_SLOPE.format(slope))

    return np.where(inputs >= 0, inputs, slope * inputs)


def leaky_relu_backward(doutput: np.ndarray, inputs: np.ndarray, slope: float = LEAKY_SLOPE):
    """gradient of LeakyReLU. At exactly zero the positive branch is taken"""

    return np.where(inputs >= 0, doutput, slope * doutput)


def softmax(inputs: np.ndarray):
    """softmax along the last axis computed after subtracting the maximum of every
       row

    """

    shifted = inputs - np.max(inputs, axis=-1, keepdims=True)
    exps = np.exp(shifted)
    return exps / np.sum(exps, axis=-1, keepdims=True)


def softmax_backward(doutput: np.ndarray, probs: np.ndarray):
    """gradient of softmax along the last axis given its output probs"""

    return probs * (doutput - np.sum(doutput * probs, axis=-1, keepdims=True))


# -- dropout

# -----------------------------------------------------------------------------
# dropout_mask
#
# return the multiplicative mask of inverted dropout: every entry is either 0
# (with probability p) or 1/(1-p). In evaluation mode, or if p is zero, None is
# returned meaning the identity
# -----------------------------------------------------------------------------
def dropout_mask(shape, p: float, training: bool, rng: np.random.Generator):
    """return the multiplicative mask of inverted dropout: every entry is either 0
       (with probability p) or 1/(1-p). In evaluation mode, or if p is zero,
       None is returned meaning the identity

    """

    if not 0 <= p < 1:
        raise cnngaterrors.ConfigurationError(ERROR_DROPOUT_RATE.format(p))

    if not training or p == 0:
        return None

    keep = rng.random(shape) >= p
    return keep.astype(DTYPE) / (1.0 - p)


def dropout(inputs: np.ndarray, p: float, training: bool, rng: np.random.Generator):
    """inverted dropout: zero every element with probability p and scale survivors
       by 1/(1-p) in training mode; identity otherwise

    """

    mask = dropout_mask(inputs.shape, p, training, rng)
    return inputs if mask is None else inputs * mask


# -- loss

def _check_labels(probs: np.ndarray, labels: np.ndarray):
    """verify labels are within range and in agreement with probs"""

    check_rank("cross_entropy", probs, 2)
    if len(labels) != probs.shape[0]:
        raise cnngaterrors.DimensionError(ERROR_BATCH_LABELS.format(probs.shape[0], len(labels)))

    for idx, ilabel in enumerate(labels):
        if not 0 <= ilabel < probs.shape[1]:
            raise cnngaterrors.LabelIndexError(ERROR_LABEL_RANGE.format(ilabel, idx,
                                                                        probs.shape[1]))


def cross_entropy(probs: np.ndarray, labels):
    """mean over the batch of -log(probs[b, labels[b]]), with probabilities clamped
       below at PROB_CLAMP

    """

    labels = np.asarray(labels, dtype=np.int64)
    _check_labels(probs, labels)

    picked = probs[np.arange(len(labels)), labels]
    return float(-np.mean(np.log(np.maximum(picked, PROB_CLAMP))))


def cross_entropy_backward(probs: np.ndarray, labels):
    """gradient of the cross entropy with respect to the probabilities"""

    labels = np.asarray(labels, dtype=np.int64)
    rows = np.arange(len(labels))
    picked = probs[rows, labels]

    dprobs = np.zeros_like(probs)
    dprobs[rows, labels] = np.where(picked > PROB_CLAMP, -1.0 / (len(labels) * picked), 0.0)
    return dprobs


def softmax_cross_entropy_backward(probs: np.ndarray, labels):
    """gradient of the cross entropy with respect to the logits that produced probs
       through softmax. It equals the chained backward of both operations as
       long as no probability is clamped

    """

    labels = np.asarray(labels, dtype=np.int64)
    dlogits = probs.copy()
    dlogits[np.arange(len(labels)), labels] -= 1.0
    return dlogits / len(labels)


# -- verification

# -----------------------------------------------------------------------------
# finite_difference_check
#
# compare analytic gradients against central differences. fragment is a
# callable with no arguments returning a pair (loss, gradients), where gradients
# is a list of arrays aligned with params. params are the very arrays the
# fragment reads, and they are perturbed in place (and restored).
#
# If max_entries is given, only that many randomly chosen entries of every
# parameter are checked. It returns the maximum over all checked entries of
# |analytic - numeric| / max(1e-8, |analytic| + |numeric|)
# -----------------------------------------------------------------------------
def finite_difference_check(fragment, params, eps: float = 1e-5,
                            max_entries: int = None, rng: np.random.Generator = None):
    """compare analytic gradients against central differences. fragment is a
       callable with no arguments returning a pair (loss, gradients), where
       gradients is a list of arrays aligned with params. params are the very
       arrays the fragment reads, and they are perturbed in place (and
       restored).

       If max_entries is given, only that many randomly chosen entries of every
       parameter are checked. It returns the maximum over all checked entries
       of |analytic - numeric| / max(1e-8, |analytic| + |numeric|)

    """

    if eps <= 0:
        raise cnngaterrors.ContractError(ERROR_EPS.format(eps))

    loss, analytic = fragment()
    analytic = [np.array(igrad, dtype=DTYPE, copy=True) for igrad in analytic]
    if len(analytic) != len(params):
        raise cnngaterrors.ContractError(ERROR_GRADIENT_COUNT.format(len(params), len(analytic)))

    # the fragment has to be a pure function of the parameters
    again, _ = fragment()
    if again != loss:
        raise cnngaterrors.ContractError(ERROR_NON_DETERMINISTIC.format(loss, again))

    rng = np.random.default_rng(0) if rng is None else rng
    worst = 0.0
    for iparam, igrad in zip(params, analytic):

        flat = iparam.reshape(-1)
        entries = np.arange(flat.size)
        if max_entries is not None and flat.size > max_entries:
            entries = np.sort(rng.choice(flat.size, size=max_entries, replace=False))

        for ientry in entries:
            original = flat[ientry]

            flat[ientry] = original + eps
            fplus, _ = fragment()
            flat[ientry] = original - eps
            fminus, _ = fragment()
            flat[ientry] = original

            numeric = (fplus - fminus) / (2 * eps)
            exact = igrad.reshape(-1)[ientry]
            error = abs(exact - numeric) / max(REL_ERROR_FLOOR, abs(exact) + abs(numeric))
            worst = max(worst, error)

    return worst


# -----------------------------------------------------------------------------
# Parameter
#
# A learnable tensor along with the gradient accumulated for it. Parameters
# flagged with decay=False (biases) are excluded from weight decay
# -----------------------------------------------------------------------------
class Parameter():
    """A learnable tensor along with the gradient accumulated for it. Parameters
       flagged with decay=False (biases) are excluded from weight decay

    """

    def __init__(self, name: str, value: np.ndarray, decay: bool = True):
        """a parameter is identified by a unique name"""

        (self._name, self._decay) = (name, decay)
        self._value = np.array(value, dtype=DTYPE)
        self._grad = np.zeros_like(self._value)

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return "{0} {1}".format(self._name, list(self._value.shape))

    def get_name(self):
        """return the unique name of this parameter"""

        return self._name

    def get_value(self):
        """return the tensor of this parameter. It is returned by reference"""

        return self._value

    def get_grad(self):
        """return the accumulated gradient. It is returned by reference"""

        return self._grad

    def get_decay(self):
        """return whether weight decay applies to this parameter"""

        return self._decay

    def set_value(self, value: np.ndarray):
        """overwrite the contents of this parameter in place"""

        check_axis("parameter " + self._name, "shape", np.shape(value), self._value.shape)
        self._value[...] = value

    def accumulate(self, grad: np.ndarray):
        """add the given gradient to the accumulated one"""

        self._grad += grad

    def zero_grad(self):
        """reset the accumulated gradient"""

        self._grad[...] = 0.0


# -----------------------------------------------------------------------------
# Dense
#
# affine layer with a weight F'×F and a bias F'
# -----------------------------------------------------------------------------
class Dense():
    """affine layer with a weight F'×F and a bias F'"""

    def __init__(self, name: str, fan_in: int, fan_out: int, rng: np.random.Generator,
                 bias: bool = True):
        """create a dense layer initialized with glorot_uniform weights and zero
           biases. If bias is false, the layer is linear

        """

        self._weight = Parameter(name + ".weight",
                                 glorot_uniform((fan_out, fan_in), fan_in, fan_out, rng))
        self._bias = Parameter(name + ".bias", np.zeros(fan_out), decay=False) if bias else None
        self._inputs = None

    def get_parameters(self):
        """return the list of parameters of this layer"""

        return [self._weight] if self._bias is None else [self._weight, self._bias]

    def forward(self, inputs: np.ndarray):
        """apply the layer and cache its input"""

        self._inputs = inputs
        bias = np.zeros(self._weight.get_value().shape[0]) if self._bias is None \
            else self._bias.get_value()
        return dense_forward(inputs, self._weight.get_value(), bias)

    def backward(self, doutput: np.ndarray):
        """accumulate parameter gradients and return the gradient of the input"""

        if self._inputs is None:
            raise cnngaterrors.StateError(ERROR_BACKWARD_BEFORE_FORWARD.format(self._weight.get_name()))

        dinputs, dweight, dbias = dense_backward(doutput, self._inputs, self._weight.get_value())
        self._weight.accumulate(dweight)
        if self._bias is not None:
            self._bias.accumulate(dbias)
        return dinputs


# -----------------------------------------------------------------------------
# Conv2d
#
# valid convolution layer with C'×C×k×k kernels and a bias per output channel
# -----------------------------------------------------------------------------
class Conv2d():
    """valid convolution layer with C'×C×k×k kernels and a bias per output
       channel

    """

    def __init__(self, name: str, channels_in: int, channels_out: int, size: int,
                 rng: np.random.Generator):
        """create a convolution layer initialized with glorot_uniform kernels and
           zero biases

        """

        shape = (channels_out, channels_in, size, size)
        self._kernels = Parameter(name + ".kernels",
                                  glorot_uniform(shape, channels_in * size * size,
                                                 channels_out * size * size, rng))
        self._bias = Parameter(name + ".bias", np.zeros(channels_out), decay=False)
        self._inputs = None

    def get_parameters(self):
        """return the list of parameters of this layer"""

        return [self._kernels, self._bias]

    def forward(self, inputs: np.ndarray):
        """apply the layer and cache its input"""

        self._inputs = inputs
        return conv2d_forward(inputs, self._kernels.get_value(), self._bias.get_value())

    def backward(self, doutput: np.ndarray):
        """accumulate parameter gradients and return the gradient of the input"""

        if self._inputs is None:
            raise cnngaterrors.StateError(ERROR_BACKWARD_BEFORE_FORWARD.format(self._kernels.get_name()))

        dinputs, dkernels, dbias = conv2d_backward(doutput, self._inputs, self._kernels.get_value())
        self._kernels.accumulate(dkernels)
        self._bias.accumulate(dbias)
        return dinputs


# Local Variables:
# mode:python
# fill-column:80
# End:
