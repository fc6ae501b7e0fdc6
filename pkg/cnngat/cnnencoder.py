#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cnnencoder.py
# Description: Small convolutional encoder of half images
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 15:02:41.118204637 (1792249361)>
#

"""
Small convolutional encoder of half images

The encoder maps every image of shape 1×14×28 into a feature vector with the
following stack of layers:

    conv(1→32, 3×3) → LeakyReLU → maxpool 2×2 →
    conv(32→64, 3×3) → LeakyReLU → maxpool 2×2 → flatten → dense(→60) → LeakyReLU

Convolutions are valid with stride 1 and pooling drops odd trailing rows and
columns, so that with the default configuration the spatial size evolves as
14×28 → 12×26 → 6×13 → 4×11 → 2×5 and the dense layer reads 64·2·5 = 640
inputs. The number of parameters is

    sum_i (c_{i-1}·k²·c_i + c_i) + (c_last·h·w)·F + F

that is, 320 + 18496 + 38460 = 57276 with the default configuration.
"""

# imports
# -----------------------------------------------------------------------------
import numpy as np

if __package__ is None or __package__ == '':
    import cnngaterrors
    import tensorops
    import utils
else:
    from . import cnngaterrors
    from . import tensorops
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('cnnencoder')

# shape of every input image
IMAGE_CHANNELS = 1
IMAGE_HEIGHT = 14
IMAGE_WIDTH = 28

# info
INFO_PARAMETER_COUNT = "CNN encoder created with {0} parameters"

# errors
ERROR_IMAGE_SHAPE = "the encoder expects images of shape {0}×{1}×{2} but got {3}"
ERROR_CONFIG = "illegal encoder configuration: {0}"
ERROR_TOO_SMALL = "the encoder configuration reduces the images to an empty map"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# max_pool2x2
#
# non-overlapping 2×2 max pooling of a B×C×H×W tensor. An odd trailing row or
# column is dropped. It returns the output along with the position (0-3, in
# row-major order) of the maximum of every window. On ties the first position
# wins
# -----------------------------------------------------------------------------
def max_pool2x2(inputs: np.ndarray):
    """non-overlapping 2×2 max pooling of a B×C×H×W tensor. An odd trailing row or
       column is dropped. It returns the output along with the position (0-3, in
       row-major order) of the maximum of every window. On ties the first
       position wins

    """

    tensorops.check_rank("max_pool2x2", inputs, 4)
    nbatch, nchannels, height, width = inputs.shape
    (hout, wout) = (height // 2, width // 2)

    windows = _to_windows(inputs[:, :, :2 * hout, :2 * wout], nbatch, nchannels, hout, wout)
    argmax = np.argmax(windows, axis=-1)
    output = np.take_along_axis(windows, argmax[..., None], axis=-1)[..., 0]
    return output, argmax


# -----------------------------------------------------------------------------
# max_pool2x2_backward
#
# route every output gradient to the position of the maximum of its window. All
# other positions, including dropped rows and columns, receive zero
# -----------------------------------------------------------------------------
def max_pool2x2_backward(doutput: np.ndarray, argmax: np.ndarray, shape):
    """route every output gradient to the position of the maximum of its window.
       All other positions, including dropped rows and columns, receive zero

    """

    nbatch, nchannels, hout, wout = doutput.shape
    dwindows = np.zeros((nbatch, nchannels, hout, wout, 4))
    np.put_along_axis(dwindows, argmax[..., None], doutput[..., None], axis=-1)

    dinputs = np.zeros(shape)
    dinputs[:, :, :2 * hout, :2 * wout] = (dwindows.reshape(nbatch, nchannels, hout, wout, 2, 2)
                                           .transpose(0, 1, 2, 4, 3, 5)
                                           .reshape(nbatch, nchannels, 2 * hout, 2 * wout))
    return dinputs


def _to_windows(inputs, nbatch, nchannels, hout, wout):
    """B×C×2h×2w → B×C×h×w×4"""

    return (inputs.reshape(nbatch, nchannels, hout, 2, wout, 2)
            .transpose(0, 1, 2, 4, 3, 5)
            .reshape(nbatch, nchannels, hout, wout, 4))


# -----------------------------------------------------------------------------
# CnnConfig
#
# Architecture of the encoder: channels of every convolution, size of the
# kernels, dimension of the output feature and slope of the LeakyReLU
# -----------------------------------------------------------------------------
class CnnConfig():
    """Architecture of the encoder: channels of every convolution, size of the
       kernels, dimension of the output feature and slope of the LeakyReLU

    """

    def __init__(self, channels=(32, 64), kernel_size: int = 3, feature_dim: int = 60,
                 slope: float = tensorops.LEAKY_SLOPE):
        """the default configuration yields 60 features per image"""

        if not channels or min(channels) < 1:
            raise cnngaterrors.ConfigurationError(ERROR_CONFIG.format("channels " + str(channels)))
        if kernel_size < 1 or feature_dim < 1:
            raise cnngaterrors.ConfigurationError(ERROR_CONFIG.format(
                "kernel size {0} and feature dim {1}".format(kernel_size, feature_dim)))

        (self._channels, self._kernel_size) = (tuple(channels), kernel_size)
        (self._feature_dim, self._slope) = (feature_dim, slope)

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return "conv {0} (k={1}) → dense {2}".format(list(self._channels), self._kernel_size,
                                                     self._feature_dim)

    def get_channels(self):
        """return the number of output channels of every convolution"""

        return self._channels

    def get_kernel_size(self):
        """return the size of the square kernels"""

        return self._kernel_size

    def get_feature_dim(self):
        """return the dimension of the output feature"""

        return self._feature_dim

    def get_slope(self):
        """return the slope of the LeakyReLU activations"""

        return self._slope

    def get_flat_shape(self):
        """return the shape (C, H, W) of the map fed to the dense layer"""

        (height, width) = (IMAGE_HEIGHT, IMAGE_WIDTH)
        for _ in self._channels:
            height = (height - self._kernel_size + 1) // 2
            width = (width - self._kernel_size + 1) // 2
            if height < 1 or width < 1:
                raise cnngaterrors.ConfigurationError(ERROR_TOO_SMALL)
        return (self._channels[-1], height, width)

    def parameter_count(self):
        """return the number of scalar parameters of an encoder with this
           configuration

        """

        count, channels_in = 0, IMAGE_CHANNELS
        for channels_out in self._channels:
            count += channels_in * self._kernel_size ** 2 * channels_out + channels_out
            channels_in = channels_out
        return count + int(np.prod(self.get_flat_shape())) * self._feature_dim + self._feature_dim


# -----------------------------------------------------------------------------
# CnnEncoder
#
# Convolutional encoder with cached forward pass and exact backward pass
# -----------------------------------------------------------------------------
class CnnEncoder():
    """Convolutional encoder with cached forward pass and exact backward pass"""

    def __init__(self, config: CnnConfig, rng: np.random.Generator, name: str = "cnn"):
        """create an encoder with the given configuration whose weights are drawn from
           rng

        """

        self._config = config
        self._convs, channels_in = [], IMAGE_CHANNELS
        for ilayer, channels_out in enumerate(config.get_channels()):
            self._convs.append(tensorops.Conv2d("{0}.conv{1}".format(name, ilayer),
                                                channels_in, channels_out,
                                                config.get_kernel_size(), rng))
            channels_in = channels_out
        self._dense = tensorops.Dense(name + ".dense", int(np.prod(config.get_flat_shape())),
                                      config.get_feature_dim(), rng)
        self._cache = None

        LOGGER.info(INFO_PARAMETER_COUNT.format(self.parameter_count()))

    def get_config(self):
        """return the configuration of this encoder"""

        return self._config

    def get_parameters(self):
        """return the list of parameters of all layers"""

        parameters = []
        for iconv in self._convs:
            parameters += iconv.get_parameters()
        return parameters + self._dense.get_parameters()

    def parameter_count(self):
        """return the number of scalar parameters of this encoder"""

        return sum(iparam.get_value().size for iparam in self.get_parameters())

    def encode(self, images: np.ndarray):
        """return the B×F features of a batch of B×1×14×28 images. Nothing is cached"""

        return self._run(images, cache=False)

    def forward(self, images: np.ndarray):
        """return the B×F features of a batch of B×1×14×28 images caching everything
           needed by backward

        """

        return self._run(images, cache=True)

    def backward(self, doutput: np.ndarray):
        """accumulate the gradients of all parameters given the gradient of the
           features. The gradient of the images is returned

        """

        if self._cache is None:
            raise cnngaterrors.StateError(tensorops.ERROR_BACKWARD_BEFORE_FORWARD.format("cnn"))
        slope = self._config.get_slope()

        dflat = self._dense.backward(tensorops.leaky_relu_backward(doutput, self._cache['dense'],
                                                                   slope))
        dmap = dflat.reshape(self._cache['flat_shape'])
        for iconv, (preact, argmax) in zip(reversed(self._convs),
                                           reversed(self._cache['stages'])):
            dactivated = max_pool2x2_backward(dmap, argmax, preact.shape)
            dmap = iconv.backward(tensorops.leaky_relu_backward(dactivated, preact, slope))
        return dmap

    def _run(self, images: np.ndarray, cache: bool):
        """forward pass shared by encode and forward"""

        tensorops.check_rank("cnn", images, 4)
        if images.shape[1:] != (IMAGE_CHANNELS, IMAGE_HEIGHT, IMAGE_WIDTH):
            raise cnngaterrors.DimensionError(ERROR_IMAGE_SHAPE.format(
                IMAGE_CHANNELS, IMAGE_HEIGHT, IMAGE_WIDTH, images.shape[1:]))
        slope = self._config.get_slope()

        stages, tensor = [], np.asarray(images, dtype=tensorops.DTYPE)
        for iconv in self._convs:
            if cache:
                preact = iconv.forward(tensor)
            else:
                (kernels, bias) = (iparam.get_value() for iparam in iconv.get_parameters())
                preact = tensorops.conv2d_forward(tensor, kernels, bias)
            tensor, argmax = max_pool2x2(tensorops.leaky_relu(preact, slope))
            stages.append((preact, argmax))

        flat = tensor.reshape(len(tensor), -1)
        if cache:
            dense = self._dense.forward(flat)
        else:
            parameters = self._dense.get_parameters()
            dense = tensorops.dense_forward(flat, parameters[0].get_value(), parameters[1].get_value())

        if cache:
            self._cache = {'stages': stages, 'flat_shape': tensor.shape, 'dense': dense}
        return tensorops.leaky_relu(dense, slope)


# Local Variables:
# mode:python
# fill-column:80
# End:
