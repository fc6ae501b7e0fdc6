# -*- coding: utf-8 -*-
#
# conftest.py
# Description: shared fixtures of the test suite
# -----------------------------------------------------------------------------

"""
shared fixtures of the test suite
"""

import numpy as np
import pytest

from cnngat import cnnencoder
from cnngat import graph
from cnngat import mnist


# encoder small enough to run a forward pass over a few images in milliseconds
TINY_CNN = dict(channels=(2, 3), kernel_size=3, feature_dim=4)


@pytest.fixture
def rng():
    """a seeded generator"""

    return np.random.default_rng(20260418)


@pytest.fixture
def tiny_cnn():
    """a small encoder configuration"""

    return cnnencoder.CnnConfig(**TINY_CNN)


@pytest.fixture
def images(rng):
    """twelve random half images"""

    return rng.random((12, 1, 14, 28))


@pytest.fixture
def labels():
    """labels of the twelve images, four of every class"""

    return np.array([0, 1, 2] * 4)


@pytest.fixture
def ring():
    """a ring over twelve vertices plus the chord (0, 6)"""

    edges = [(i, (i + 1) % 12) for i in range(12)] + [(0, 6)]
    return graph.AffinityGraph.from_edges(12, edges)


def make_split(rng, count: int, split: str = mnist.SPLIT_TRAIN, num_classes: int = 3):
    """return a synthetic split where the upper half of every image encodes its
       class, so that the threshold graph links images of the same class

    """

    labels = np.arange(count) % num_classes
    lower = rng.random((count, 1, 14, 28)) * 0.2 + labels[:, None, None, None] * 0.3
    upper = np.repeat(labels[:, None] * 0.4, mnist.AFFINITY_DIM, axis=1) + \
        rng.random((count, mnist.AFFINITY_DIM)) * 0.01
    return mnist.SplitDataset(lower, upper, labels, split, np.arange(count))


@pytest.fixture
def splits(rng):
    """a small synthetic train and test split"""

    return make_split(rng, 30), make_split(rng, 9, mnist.SPLIT_TEST)


@pytest.fixture
def fake_mnist(tmp_path, rng):
    """a directory with the four idx files of a tiny MNIST distribution with 12
       train images of every digit and 4 test images of every digit

    """

    def _images(count):
        return rng.integers(0, 256, size=(count, 28, 28))

    train_labels = np.repeat(np.arange(10), 12)
    test_labels = np.repeat(np.arange(10), 4)
    mnist.write_idx(str(tmp_path / "train-images-idx3-ubyte"), _images(len(train_labels)))
    mnist.write_idx(str(tmp_path / "train-labels-idx1-ubyte"), train_labels)
    mnist.write_idx(str(tmp_path / "t10k-images-idx3-ubyte"), _images(len(test_labels)))
    mnist.write_idx(str(tmp_path / "t10k-labels-idx1-ubyte"), test_labels)
    return tmp_path
