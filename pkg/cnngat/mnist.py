#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# mnist.py
# Description: Ingestion of MNIST and construction of the half-image dataset
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 10:12:08.220945611 (1792310528)>
#

"""
Ingestion of MNIST and construction of the half-image dataset

Every 28×28 digit is split at row 14: the upper half, flattened, is used only
to build affinity graphs, and the lower half is the input image of the
classifier.
"""

# imports
# -----------------------------------------------------------------------------
import os
import struct

import numpy as np

if __package__ is None or __package__ == '':
    import cnngaterrors
    import graph
    import spsreader
    import spswriter
    import utils
else:
    from . import cnngaterrors
    from . import graph
    from . import spsreader
    from . import spswriter
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('mnist')

# magic numbers of idx files with unsigned bytes
IDX_MAGIC_IMAGES = 0x00000803
IDX_MAGIC_LABELS = 0x00000801

# candidate names of the files of the standard distribution
MNIST_FILES = {
    'train_images': ["train-images-idx3-ubyte", "train-images.idx3-ubyte"],
    'train_labels': ["train-labels-idx1-ubyte", "train-labels.idx1-ubyte"],
    'test_images': ["t10k-images-idx3-ubyte", "t10k-images.idx3-ubyte"],
    'test_labels': ["t10k-labels-idx1-ubyte", "t10k-labels.idx1-ubyte"]}

# the dataset
DIGITS = (3, 5, 6)
TRAIN_PER_CLASS = 2000
SPLIT_ROW = 14
IMAGE_SIZE = 28
AFFINITY_DIM = SPLIT_ROW * IMAGE_SIZE
SPLIT_TRAIN = "train"
SPLIT_TEST = "test"
SPLIT_ALL = "all"

# headers
MANIFEST_HEADERS = ["index", "original_mnist_index", "label", "split"]
META_HEADERS = ["patient_id", "gender", "age"]

# info
INFO_IDX_LOADED = "'{0}' loaded: shape {1}"
INFO_DATASET = "{0} split built with {1} images, class histogram {2}"

# errors
ERROR_MAGIC = "'{0}': unknown magic number {1:#010x}"
ERROR_TRUNCATED_HEADER = "'{0}': header truncated"
ERROR_TRUNCATED = "'{0}': payload truncated, {1} bytes expected but {2} found"
ERROR_TRAILING = "'{0}': {1} unexpected bytes after the payload"
ERROR_IDX_VALUES = "idx files store unsigned bytes but values outside [0, 255] were given"
ERROR_IDX_RANK = "only images (rank 3) and labels (rank 1) can be written in idx format, not rank {0}"
ERROR_MISSING_FILE = "no file among {0} was found in '{1}'"
ERROR_MISMATCH = "{0} images but {1} labels"
ERROR_INSUFFICIENT = "the {0} split has {1} images of digit {2} but {3} are required"
ERROR_TEST_COUNT = "{0} test images were requested but only {1} are available"
ERROR_DATASET_SHAPE = "the {0} split should have images N×1×14×28 and affinity vectors N×392 but has {1} and {2}"
ERROR_DATASET_LENGTH = "the {0} split has {1} images, {2} affinity vectors and {3} labels"
ERROR_AGE = "line {0} of '{1}': age '{2}' is not an integer"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# load_idx
#
# parse a file in idx format with unsigned bytes. Images (magic 0x803) are
# returned as floats scaled to [0, 1] and labels (magic 0x801) as integers. Any
# inconsistency raises a FormatError with the offending byte offset
# -----------------------------------------------------------------------------
def load_idx(path: str):
    """parse a file in idx format with unsigned bytes. Images (magic 0x803) are
       returned as floats scaled to [0, 1] and labels (magic 0x801) as integers.
       Any inconsistency raises a FormatError with the offending byte offset

    """

    with open(path, 'rb') as stream:
        contents = stream.read()

    if len(contents) < 4:
        raise cnngaterrors.FormatError(ERROR_TRUNCATED_HEADER.format(path), len(contents))
    (magic,) = struct.unpack('>I', contents[:4])
    if magic not in (IDX_MAGIC_IMAGES, IDX_MAGIC_LABELS):
        raise cnngaterrors.FormatError(ERROR_MAGIC.format(path, magic), 0)

    # the last byte of the magic number is the rank
    rank = magic & 0xff
    header = 4 + 4 * rank
    if len(contents) < header:
        raise cnngaterrors.FormatError(ERROR_TRUNCATED_HEADER.format(path), len(contents))
    shape = struct.unpack('>' + 'I' * rank, contents[4:header])

    expected = header + int(np.prod(shape))
    if len(contents) < expected:
        raise cnngaterrors.FormatError(ERROR_TRUNCATED.format(path, expected, len(contents)),
                                       len(contents))
    if len(contents) > expected:
        raise cnngaterrors.FormatError(ERROR_TRAILING.format(path, len(contents) - expected),
                                       expected)

    payload = np.frombuffer(contents, dtype=np.uint8, offset=header).reshape(shape)
    LOGGER.info(INFO_IDX_LOADED.format(path, shape))
    if magic == IDX_MAGIC_IMAGES:
        return payload.astype(np.float64) / 255.0
    return payload.astype(np.int64)


# -----------------------------------------------------------------------------
# write_idx
#
# write images (rank 3) or labels (rank 1) in idx format. Images given as
# floats are interpreted in [0, 1] and rounded to bytes
# -----------------------------------------------------------------------------
def write_idx(path: str, data: np.ndarray):
    """write images (rank 3) or labels (rank 1) in idx format. Images given as
       floats are interpreted in [0, 1] and rounded to bytes

    """

    data = np.asarray(data)
    if data.ndim not in (1, 3):
        raise cnngaterrors.DimensionError(ERROR_IDX_RANK.format(data.ndim))

    if data.ndim == 3 and np.issubdtype(data.dtype, np.floating):
        data = np.rint(data * 255.0)
    if data.size and (data.min() < 0 or data.max() > 255):
        raise cnngaterrors.DataError(ERROR_IDX_VALUES)

    magic = IDX_MAGIC_IMAGES if data.ndim == 3 else IDX_MAGIC_LABELS
    with open(path, 'wb') as stream:
        stream.write(struct.pack('>I', magic))
        stream.write(struct.pack('>' + 'I' * data.ndim, *data.shape))
        stream.write(data.astype(np.uint8).tobytes())


# -----------------------------------------------------------------------------
# find_mnist_file
#
# return the path of the file of the standard distribution with the given role
# (train_images, train_labels, test_images or test_labels) in dirname
# -----------------------------------------------------------------------------
def find_mnist_file(dirname: str, role: str):
    """return the path of the file of the standard distribution with the given role
       (train_images, train_labels, test_images or test_labels) in dirname

    """

    for iname in MNIST_FILES[role]:
        path = os.path.join(dirname, iname)
        if os.path.isfile(path):
            return path

    raise FileNotFoundError(ERROR_MISSING_FILE.format(MNIST_FILES[role], dirname))


# -----------------------------------------------------------------------------
# load_mnist
#
# return the train images, train labels, test images and test labels of the
# standard distribution found in dirname
# -----------------------------------------------------------------------------
def load_mnist(dirname: str):
    """return the train images, train labels, test images and test labels of the
       standard distribution found in dirname

    """

    raw = {}
    for role in MNIST_FILES:
        raw[role] = load_idx(find_mnist_file(dirname, role))

    for split in (SPLIT_TRAIN, SPLIT_TEST):
        (images, labels) = (raw[split + '_images'], raw[split + '_labels'])
        if len(images) != len(labels):
            raise cnngaterrors.DataError(ERROR_MISMATCH.format(len(images), len(labels)))

    return raw['train_images'], raw['train_labels'], raw['test_images'], raw['test_labels']


# -----------------------------------------------------------------------------
# SplitDataset
#
# Lower halves of the images (the input of the classifier), upper halves
# flattened (used only to build affinity graphs), class indices and the
# indices of every image in the original distribution
# -----------------------------------------------------------------------------
class SplitDataset():
    """Lower halves of the images (the input of the classifier), upper halves
       flattened (used only to build affinity graphs), class indices and the
       indices of every image in the original distribution

    """

    def __init__(self, images: np.ndarray, affinity_vectors: np.ndarray, labels,
                 split: str, original_indices=None):
        """images are N×1×14×28 and affinity vectors N×392"""

        images = np.asarray(images, dtype=np.float64)
        affinity_vectors = np.asarray(affinity_vectors, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.int64)
        original_indices = np.arange(len(labels)) if original_indices is None \
            else np.asarray(original_indices, dtype=np.int64)

        if images.ndim != 4 or images.shape[1:] != (1, IMAGE_SIZE - SPLIT_ROW, IMAGE_SIZE) or \
           affinity_vectors.ndim != 2 or affinity_vectors.shape[1] != AFFINITY_DIM:
            raise cnngaterrors.DimensionError(ERROR_DATASET_SHAPE.format(split, images.shape,
                                                                         affinity_vectors.shape))
        if not len(images) == len(affinity_vectors) == len(labels) == len(original_indices):
            raise cnngaterrors.DimensionError(ERROR_DATASET_LENGTH.format(
                split, len(images), len(affinity_vectors), len(labels)))

        (self._images, self._affinity_vectors) = (images, affinity_vectors)
        (self._labels, self._split, self._original_indices) = (labels, split, original_indices)

    def __len__(self):
        """return the number of images"""

        return len(self._labels)

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return "{0} split: {1} images".format(self._split, len(self))

    def get_images(self):
        """return the N×1×14×28 images"""

        return self._images

    def get_affinity_vectors(self):
        """return the N×392 affinity vectors"""

        return self._affinity_vectors

    def get_labels(self):
        """return the class indices"""

        return self._labels

    def get_split(self):
        """return the name of the split"""

        return self._split

    def get_original_indices(self):
        """return the index of every image in the original distribution"""

        return self._original_indices

    def get_class_histogram(self, num_classes: int = len(DIGITS)):
        """return the number of images of every class"""

        return np.bincount(self._labels, minlength=num_classes)

    def save(self, filename: str):
        """save this split in numpy's npz format"""

        np.savez_compressed(filename, images=self._images, affinity_vectors=self._affinity_vectors,
                            labels=self._labels, original_indices=self._original_indices,
                            split=np.array(self._split))

    @classmethod
    def load(cls, filename: str):
        """load a split saved with save"""

        with np.load(filename) as contents:
            return cls(contents['images'], contents['affinity_vectors'], contents['labels'],
                       str(contents['split']), contents['original_indices'])


# -----------------------------------------------------------------------------
# split_images
#
# split every 28×28 image at row 14 returning the lower halves as N×1×14×28
# images and the upper halves as N×392 vectors
# -----------------------------------------------------------------------------
def split_images(images: np.ndarray):
    """split every 28×28 image at row 14 returning the lower halves as N×1×14×28
       images and the upper halves as N×392 vectors

    """

    return (images[:, None, SPLIT_ROW:, :].copy(),
            images[:, :SPLIT_ROW, :].reshape(len(images), -1).copy())


# -----------------------------------------------------------------------------
# make_modified_dataset
#
# build the train and test splits from the raw distribution given as (train
# images, train labels, test images, test labels). The train split samples
# train_per_class images of every digit without replacement; the test split
# contains every test image of those digits unless test_count is given, in
# which case that many are sampled. Selected images keep their original order
# -----------------------------------------------------------------------------
def make_modified_dataset(raw, rng: np.random.Generator, digits=DIGITS,
                          train_per_class: int = TRAIN_PER_CLASS, test_count: int = None):
    """build the train and test splits from the raw distribution given as (train
       images, train labels, test images, test labels). The train split samples
       train_per_class images of every digit without replacement; the test
       split contains every test image of those digits unless test_count is
       given, in which case that many are sampled. Selected images keep their
       original order

    """

    (train_images, train_labels, test_images, test_labels) = raw
    classes = {digit: idx for idx, digit in enumerate(digits)}

    selected = []
    for digit in digits:
        candidates = np.flatnonzero(train_labels == digit)
        if len(candidates) < train_per_class:
            raise cnngaterrors.DataError(ERROR_INSUFFICIENT.format(SPLIT_TRAIN, len(candidates),
                                                                   digit, train_per_class))
        selected.append(rng.choice(candidates, size=train_per_class, replace=False))
    train_index = np.sort(np.concatenate(selected))

    test_index = np.flatnonzero(np.isin(test_labels, digits))
    if test_count is not None:
        if test_count > len(test_index):
            raise cnngaterrors.DataError(ERROR_TEST_COUNT.format(test_count, len(test_index)))
        test_index = np.sort(rng.choice(test_index, size=test_count, replace=False))

    splits = []
    for split, images, labels, index in ((SPLIT_TRAIN, train_images, train_labels, train_index),
                                         (SPLIT_TEST, test_images, test_labels, test_index)):
        lower, upper = split_images(images[index])
        dataset = SplitDataset(lower, upper, [classes[int(ilabel)] for ilabel in labels[index]],
                               split, index)
        LOGGER.info(INFO_DATASET.format(split, len(dataset),
                                        dataset.get_class_histogram(len(digits)).tolist()))
        splits.append(dataset)

    return tuple(splits)


# -----------------------------------------------------------------------------
# combine_splits
#
# return a single dataset with the train split followed by the test split. The
# vertex id of the i-th test image is therefore len(train) + i
# -----------------------------------------------------------------------------
def combine_splits(train: SplitDataset, test: SplitDataset):
    """return a single dataset with the train split followed by the test split. The
       vertex id of the i-th test image is therefore len(train) + i

    """

    return SplitDataset(np.concatenate([train.get_images(), test.get_images()]),
                        np.concatenate([train.get_affinity_vectors(), test.get_affinity_vectors()]),
                        np.concatenate([train.get_labels(), test.get_labels()]),
                        SPLIT_ALL,
                        np.concatenate([train.get_original_indices(), test.get_original_indices()]))


# -----------------------------------------------------------------------------
# write_manifest
#
# write a csv file with one row per image of both splits: its vertex id, its
# index in the original distribution, its class and its split
# -----------------------------------------------------------------------------
def write_manifest(filename: str, train: SplitDataset, test: SplitDataset):
    """write a csv file with one row per image of both splits: its vertex id, its
       index in the original distribution, its class and its split

    """

    rows, offset = [], 0
    for dataset in (train, test):
        for idx, (original, label) in enumerate(zip(dataset.get_original_indices().tolist(),
                                                    dataset.get_labels().tolist())):
            rows.append([offset + idx, original, label, dataset.get_split()])
        offset += len(dataset)

    spswriter.write_csv(filename, MANIFEST_HEADERS, rows)


# -----------------------------------------------------------------------------
# load_meta_records
#
# read the meta-data of patients from a csv file with columns patient_id,
# gender and age. Vertex ids follow the order of the rows
# -----------------------------------------------------------------------------
def load_meta_records(filename: str):
    """read the meta-data of patients from a csv file with columns patient_id,
       gender and age. Vertex ids follow the order of the rows

    """

    records = []
    for lineno, irow in enumerate(spsreader.SpsReader(filename, META_HEADERS), start=2):
        try:
            age = int(irow['age'])
        except (TypeError, ValueError) as exc:
            raise cnngaterrors.DataError(ERROR_AGE.format(lineno, filename, irow['age'])) from exc
        records.append(graph.MetaRecord(str(irow['patient_id']), str(irow['gender']), age))

    return records


# Local Variables:
# mode:python
# fill-column:80
# End:
