#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# analysis.py
# Description: Accuracy reports, occlusion shift and significance tests
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 14:05:12.480031265 (1792324512)>
#

"""
Accuracy reports, occlusion shift and significance tests
"""

# imports
# -----------------------------------------------------------------------------
import math

import numpy as np
from scipy import stats

if __package__ is None or __package__ == '':
    import cnngaterrors
    import graph
    import hybrid
    import spswriter
    import utils
else:
    from . import cnngaterrors
    from . import graph
    from . import hybrid
    from . import spswriter
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('analysis')

# the exact distribution of the signed-rank statistic is used up to this number
# of non-zero differences
WILCOXON_EXACT_MAX = 25
WILCOXON_MIN_SAMPLES = 5
WILCOXON_AUTO = "auto"
WILCOXON_EXACT = "exact"
WILCOXON_NORMAL = "normal"

# occlusion positions evaluated in a single forward pass
OCCLUSION_CHUNK = 32

# headers of the report
REPORT_HEADERS = ["network", "affinity", "accuracy_mean", "accuracy_std",
                  "lowest_mean", "lowest_std", "occ_mean", "p_value", "occ_p_value"]

# format of the xlsx report
REPORT_HEADER_PROPS = {'bold': True, 'font_color': '#ffffff', 'bg_color': '#305070'}
REPORT_ALTERNATING_BG = ['#dde7f0', '#ffffff']

# debug
DEBUG_OCCLUSION = "occlusion of vertex {0}: {1}×{2} positions, mean probability {3:.4f}"

# errors
ERROR_EMPTY_REPORT = "accuracy can not be computed over an empty set"
ERROR_LENGTHS = "{0} probability rows but {1} labels"
ERROR_WINDOW = "the occluding window {0}×{0} exceeds the image of size {1}×{2}"
ERROR_STRIDE = "the stride should be at least 1 but {0} was given"
ERROR_PAIRED_LENGTHS = "paired samples should have the same length but have {0} and {1}"
ERROR_ALL_ZERO = "all differences are zero"
ERROR_TOO_FEW = "at least {0} non-zero differences are required but only {1} were found"
ERROR_METHOD = "unknown method '{0}'"
ERROR_NO_RUNS = "no runs to aggregate"


# -----------------------------------------------------------------------------
# AccuracyReport
#
# Overall accuracy, accuracy of every class (nan for classes without samples)
# and the lowest class accuracy among the defined ones
# -----------------------------------------------------------------------------
class AccuracyReport():
    """Overall accuracy, accuracy of every class (nan for classes without samples)
       and the lowest class accuracy among the defined ones

    """

    def __init__(self, overall: float, per_class: list):
        """the lowest class accuracy is computed from per_class"""

        (self._overall, self._per_class) = (overall, per_class)
        defined = [iacc for iacc in per_class if not math.isnan(iacc)]
        self._lowest = min(defined) if defined else math.nan

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return "accuracy {0:.4f} per class {1} lowest {2:.4f}".format(
            self._overall, ["{0:.4f}".format(iacc) for iacc in self._per_class], self._lowest)

    def get_overall(self):
        """return the overall accuracy"""

        return self._overall

    def get_per_class(self):
        """return the accuracy of every class"""

        return self._per_class

    def get_lowest(self):
        """return the lowest accuracy among the classes with samples"""

        return self._lowest


# -----------------------------------------------------------------------------
# OcclusionMap
#
# Probability of the correct class for every position of an occluding window
# slid over the image of a vertex
# -----------------------------------------------------------------------------
class OcclusionMap():
    """Probability of the correct class for every position of an occluding window
       slid over the image of a vertex

    """

    def __init__(self, grid: np.ndarray, window: int, stride: int, vertex: int, fill: float):
        """grid is R×S with R = (H-w)//s + 1 and S = (W-w)//s + 1"""

        self._grid = np.asarray(grid, dtype=np.float64)
        (self._window, self._stride) = (window, stride)
        (self._vertex, self._fill) = (vertex, fill)

    def get_grid(self):
        """return the grid of probabilities"""

        return self._grid

    def get_window(self):
        """return the size of the occluding window"""

        return self._window

    def get_stride(self):
        """return the stride between consecutive positions"""

        return self._stride

    def get_vertex(self):
        """return the vertex whose image was occluded"""

        return self._vertex

    def get_fill(self):
        """return the value written in the occluded pixels"""

        return self._fill

    def get_mean(self):
        """return the mean probability over all positions"""

        return float(self._grid.mean())

    def write_csv(self, filename: str):
        """write the grid in csv format. The first column and the headers give the
           offsets of the window

        """

        rows, cols = self._grid.shape
        headers = ["row"] + [str(icol * self._stride) for icol in range(cols)]
        spswriter.write_csv(filename, headers,
                            [[irow * self._stride] + self._grid[irow].tolist() for irow in range(rows)])

    def write_pgm(self, filename: str):
        """write the grid as an 8-bit binary pgm image where 255 is the largest
           probability of the map

        """

        peak = self._grid.max()
        scaled = np.zeros_like(self._grid) if peak <= 0 else self._grid / peak
        pixels = np.rint(255.0 * scaled).astype(np.uint8)

        with open(filename, 'wb') as stream:
            stream.write("P5\n{0} {1}\n255\n".format(pixels.shape[1], pixels.shape[0]).encode('ascii'))
            stream.write(pixels.tobytes())


# -----------------------------------------------------------------------------
# WilcoxonResult
#
# Statistic, two-sided p-value, number of non-zero differences and method used
# by a Wilcoxon signed-rank test
# -----------------------------------------------------------------------------
class WilcoxonResult():
    """Statistic, two-sided p-value, number of non-zero differences and method used
       by a Wilcoxon signed-rank test

    """

    def __init__(self, statistic: float, pvalue: float, n: int, method: str):
        (self._statistic, self._pvalue, self._n, self._method) = (statistic, pvalue, n, method)

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return "W={0} p={1:.4g} (n={2}, {3})".format(self._statistic, self._pvalue,
                                                     self._n, self._method)

    def get_statistic(self):
        """return min(W+, W-)"""

        return self._statistic

    def get_pvalue(self):
        """return the two-sided p-value"""

        return self._pvalue

    def get_n(self):
        """return the number of non-zero differences"""

        return self._n

    def get_method(self):
        """return the method used to compute the p-value"""

        return self._method


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# accuracy_report
#
# compute the accuracy of the argmax predictions (ties resolved in favour of the
# lowest class) overall and per class
# -----------------------------------------------------------------------------
def accuracy_report(probs: np.ndarray, labels, num_classes: int = None):
    """compute the accuracy of the argmax predictions (ties resolved in favour of
       the lowest class) overall and per class

    """

    probs = np.asarray(probs)
    labels = np.asarray(labels, dtype=np.int64)
    if len(probs) != len(labels):
        raise cnngaterrors.DimensionError(ERROR_LENGTHS.format(len(probs), len(labels)))
    if not len(labels):
        raise cnngaterrors.ContractError(ERROR_EMPTY_REPORT)

    num_classes = probs.shape[1] if num_classes is None else num_classes
    hits = np.argmax(probs, axis=1) == labels

    per_class = []
    for iclass in range(num_classes):
        members = labels == iclass
        per_class.append(float(hits[members].mean()) if members.any() else math.nan)

    return AccuracyReport(float(hits.mean()), per_class)


# -----------------------------------------------------------------------------
# occlusion_shift
#
# slide a window of size w×w with stride s over the image of the given vertex
# replacing the pixels below it with fill, and record the probability of the
# correct class at every position. The neighborhoods are sampled once, so that
# all positions see the same (unoccluded) neighbors. The dataset is never
# modified. It returns the map along with its mean
# -----------------------------------------------------------------------------
def occlusion_shift(model: hybrid.HybridModel, vertex: int, images: np.ndarray, labels,
                    graph_: graph.AffinityGraph, window: int = 7, stride: int = 1,
                    fill: float = 0.0, n: int = 4, rng: np.random.Generator = None,
                    reuse_1hop: bool = False):
    """slide a window of size w×w with stride s over the image of the given vertex
       replacing the pixels below it with fill, and record the probability of
       the correct class at every position. The neighborhoods are sampled once,
       so that all positions see the same (unoccluded) neighbors. The dataset
       is never modified. It returns the map along with its mean

    """

    height, width = images.shape[-2:]
    if window > height or window > width:
        raise cnngaterrors.DimensionError(ERROR_WINDOW.format(window, height, width))
    if stride < 1:
        raise cnngaterrors.ContractError(ERROR_STRIDE.format(stride))

    rng = np.random.default_rng(0) if rng is None else rng
    batch = hybrid.assemble_batch(graph_, [vertex], n, model.get_hops(), images, rng, reuse_1hop)
    center = batch.get_main_positions()[0]
    label = int(np.asarray(labels)[vertex])

    rows, cols = (height - window) // stride + 1, (width - window) // stride + 1
    positions = [(irow * stride, icol * stride) for irow in range(rows) for icol in range(cols)]

    probs = []
    for start in range(0, len(positions), OCCLUSION_CHUNK):
        chunk = positions[start:start + OCCLUSION_CHUNK]

        # every copy of the batch gets its own occluded version of the center
        variants = np.repeat(batch.get_images()[None], len(chunk), axis=0)
        for icopy, (top, left) in enumerate(chunk):
            variants[icopy, center, :, top:top + window, left:left + window] = fill

        probs.append(model.forward(_tile_batch(batch, variants), training=False)[:, label])

    grid = np.concatenate(probs).reshape(rows, cols)
    occlusion = OcclusionMap(grid, window, stride, vertex, fill)
    LOGGER.debug(DEBUG_OCCLUSION.format(vertex, rows, cols, occlusion.get_mean()))
    return occlusion, occlusion.get_mean()


def _tile_batch(batch: hybrid.Batch, variants: np.ndarray):
    """return a batch with as many independent copies of the given one as variants
       of its images are given (P×B×C×H×W)

    """

    copies, size = variants.shape[0], variants.shape[1]
    offsets = np.arange(copies)

    layers, inputs = [], size
    for centers, index in batch.get_layers():
        layers.append(((centers[None, :] + inputs * offsets[:, None]).reshape(-1),
                       (index[None] + inputs * offsets[:, None, None]).reshape(-1, index.shape[1])))
        inputs = len(centers)

    main_positions = (batch.get_main_positions()[None, :] + size * offsets[:, None]).reshape(-1)
    return hybrid.Batch(np.tile(batch.get_main_ids(), copies),
                        np.tile(batch.get_vertex_ids(), copies),
                        variants.reshape((-1,) + variants.shape[2:]), layers, main_positions)


# -----------------------------------------------------------------------------
# wilcoxon_signed_rank
#
# two-sided Wilcoxon signed-rank test of paired samples. Zero differences are
# dropped and ties receive average ranks. The statistic is min(W+, W-). With
# the default method, the p-value is exact up to 25 non-zero differences and
# otherwise computed with the normal approximation with tie and continuity
# corrections
# -----------------------------------------------------------------------------
def wilcoxon_signed_rank(sample_a, sample_b, method: str = WILCOXON_AUTO):
    """two-sided Wilcoxon signed-rank test of paired samples. Zero differences are
       dropped and ties receive average ranks. The statistic is min(W+, W-).
       With the default method, the p-value is exact up to 25 non-zero
       differences and otherwise computed with the normal approximation with
       tie and continuity corrections

    """

    sample_a = np.asarray(sample_a, dtype=np.float64)
    sample_b = np.asarray(sample_b, dtype=np.float64)
    if sample_a.shape != sample_b.shape:
        raise cnngaterrors.DimensionError(ERROR_PAIRED_LENGTHS.format(len(sample_a), len(sample_b)))

    diffs = sample_a - sample_b
    diffs = diffs[diffs != 0]
    if not len(diffs):
        raise cnngaterrors.DegenerateInputError(ERROR_ALL_ZERO)
    if len(diffs) < WILCOXON_MIN_SAMPLES:
        raise cnngaterrors.DegenerateInputError(ERROR_TOO_FEW.format(WILCOXON_MIN_SAMPLES,
                                                                     len(diffs)))

    ranks = stats.rankdata(np.abs(diffs))
    wplus = float(ranks[diffs > 0].sum())
    wminus = float(ranks[diffs < 0].sum())
    statistic = min(wplus, wminus)
    n = len(diffs)

    if method == WILCOXON_AUTO:
        method = WILCOXON_EXACT if n <= WILCOXON_EXACT_MAX else WILCOXON_NORMAL

    if method == WILCOXON_EXACT:
        pvalue = _exact_pvalue(ranks, statistic)
    elif method == WILCOXON_NORMAL:
        pvalue = _normal_pvalue(ranks, statistic)
    else:
        raise cnngaterrors.ConfigurationError(ERROR_METHOD.format(method))

    return WilcoxonResult(statistic, pvalue, n, method)


def _exact_pvalue(ranks: np.ndarray, statistic: float):
    """count the sign assignments whose sum of positive ranks does not exceed the
       statistic. Ranks are doubled so that average ranks become integers

    """

    doubled = np.rint(2 * ranks).astype(np.int64)
    counts = np.zeros(int(doubled.sum()) + 1, dtype=np.int64)
    counts[0] = 1
    for irank in doubled:
        shifted = np.zeros_like(counts)
        shifted[irank:] = counts[:-irank]
        counts = counts + shifted

    tail = counts[:int(round(2 * statistic)) + 1].sum() / 2.0 ** len(ranks)
    return float(min(1.0, 2.0 * tail))


def _normal_pvalue(ranks: np.ndarray, statistic: float):
    """normal approximation with tie and continuity corrections"""

    n = len(ranks)
    mean = n * (n + 1) / 4.0
    _, ties = np.unique(ranks, return_counts=True)
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(ties ** 3 - ties)) / 48.0
    zscore = min(0.0, statistic - mean + 0.5) / math.sqrt(variance)
    return float(min(1.0, 2.0 * stats.norm.cdf(zscore)))


# -----------------------------------------------------------------------------
# aggregate_runs
#
# return the mean and the standard deviation (over the population of runs) of
# the given values
# -----------------------------------------------------------------------------
def aggregate_runs(values):
    """return the mean and the standard deviation (over the population of runs) of
       the given values

    """

    values = np.asarray(values, dtype=np.float64)
    if not len(values):
        raise cnngaterrors.DegenerateInputError(ERROR_NO_RUNS)
    return float(values.mean()), float(values.std())


# -----------------------------------------------------------------------------
# write_report
#
# write the rows of the report (dictionaries indexed by REPORT_HEADERS) in csv
# format and, if a second filename is given, in a xlsx workbook where rows of
# the same network share the background color
# -----------------------------------------------------------------------------
def write_report(filename: str, rows: list, xlsxname: str = None):
    """write the rows of the report (dictionaries indexed by REPORT_HEADERS) in csv
       format and, if a second filename is given, in a xlsx workbook where rows
       of the same network share the background color

    """

    data = [[_cell(irow.get(iheader)) for iheader in REPORT_HEADERS] for irow in rows]
    spswriter.write_csv(filename, REPORT_HEADERS, data)

    if xlsxname:
        writer = spswriter.SpsWriter(xlsxname)
        writer.add_worksheet("report")
        writer.set_headers(REPORT_HEADERS, REPORT_HEADER_PROPS)
        writer.set_group(["network"])
        writer.set_alternating_bg(REPORT_ALTERNATING_BG)
        writer.add_data(data)
        writer.close()


def _cell(value):
    """missing values and nan are written as empty cells"""

    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ''
    return value


# Local Variables:
# mode:python
# fill-column:80
# End:
