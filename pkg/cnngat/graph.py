#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# graph.py
# Description: Affinity graphs, their builders and the neighborhood sampler
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 11:05:37.624101846 (1792235137)>
#

"""
Affinity graphs, their builders and the neighborhood sampler
"""

# imports
# -----------------------------------------------------------------------------
from collections import defaultdict

import numpy as np
from scipy.spatial.distance import cdist

if __package__ is None or __package__ == '':
    import cnngaterrors
    import utils
else:
    from . import cnngaterrors
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('graph')

# vertex ids are stored with this type in the adjacency lists
VERTEX_DTYPE = np.int32

# number of rows of the pairwise distance matrix computed at once
DISTANCE_CHUNK = 512

# header of the edge list files
HEADER_PREFIX = "vertices"

# the names of all graph settings
SETTING_THETA = "theta"
SETTING_RANDOM = "random"
SETTING_LABEL = "L"
SETTING_CLASS_LINK = "CL"
SETTING_META = "meta"
SETTINGS = [SETTING_THETA, SETTING_RANDOM, SETTING_LABEL, SETTING_CLASS_LINK, SETTING_META]

# debug
DEBUG_GRAPH_BUILT = "{0} graph built: {1} vertices, {2} edges"

# errors
ERROR_NEIGHBOR_RANGE = "vertex {0} has neighbor {1} out of range [0, {2})"
ERROR_SELF_EDGE = "vertex {0} has an edge to itself"
ERROR_ASYMMETRIC = "vertex {0} lists {1} as neighbor but not the other way round"
ERROR_VERTEX_RANGE = "vertex {0} is out of range [0, {1})"
ERROR_VECTOR_LENGTH = "affinity vector {0} has length {1} but {2} was expected"
ERROR_SAMPLE_SIZE = "the neighborhood size should be at least 1 but {0} was given"
ERROR_NEGATIVE_DEGREE = "the target mean degree should be non-negative but {0} was given"
ERROR_EXTENSION = "a graph with {0} vertices can not be extended to {1} vertices"
ERROR_NEGATIVE_AGE = "the age of patient '{0}' is negative: {1}"
ERROR_HEADER = "the first line of '{0}' should be '{1} N' but '{2}' was found"
ERROR_EDGE_LINE = "line {0} of '{1}' is not a legal edge: '{2}'"
ERROR_EDGE_ORDER = "line {0} of '{1}': edge ({2}, {3}) is not given with i < j"
ERROR_EDGE_RANGE = "line {0} of '{1}': edge ({2}, {3}) is out of range [0, {4})"
ERROR_EDGE_DUPLICATE = "'{0}' contains the edge ({1}, {2}) more than once"


# -----------------------------------------------------------------------------
# AffinityGraph
#
# Undirected graph with binary edges. Every vertex stores the sorted list of its
# neighbors. Self edges are never stored
# -----------------------------------------------------------------------------
class AffinityGraph():
    """Undirected graph with binary edges. Every vertex stores the sorted list of
       its neighbors. Self edges are never stored

    """

    def __init__(self, num_vertices: int, adjacency: list, check: bool = True):
        """a graph is given by the number of vertices and a list with the neighbors of
           every vertex. If check is true, the invariants are verified

        """

        self._num_vertices = num_vertices
        self._adjacency = [np.unique(np.asarray(ineighbors, dtype=VERTEX_DTYPE))
                           for ineighbors in adjacency]
        if len(self._adjacency) != num_vertices:
            raise cnngaterrors.DimensionError(ERROR_VECTOR_LENGTH.format("adjacency",
                                                                         len(self._adjacency),
                                                                         num_vertices))

        if check:
            self.check()

    @classmethod
    def from_edges(cls, num_vertices: int, edges):
        """create a graph from an array E×2 of undirected edges. Both orientations are
           added

        """

        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        edges = edges[edges[:, 0] != edges[:, 1]]
        both = np.concatenate([edges, edges[:, ::-1]])

        if len(both) and (both.min() < 0 or both.max() >= num_vertices):
            raise cnngaterrors.VertexIndexError(ERROR_VERTEX_RANGE.format(int(both.max()),
                                                                          num_vertices))

        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        bounds = np.searchsorted(both[:, 0], np.arange(num_vertices + 1))
        adjacency = [both[bounds[i]:bounds[i + 1], 1] for i in range(num_vertices)]
        return cls(num_vertices, adjacency, check=False)

    def __len__(self):
        """return the number of vertices"""

        return self._num_vertices

    def check(self):
        """verify that all neighbors are in range, there are no self edges and the
           adjacency is symmetric

        """

        for ivertex, ineighbors in enumerate(self._adjacency):
            if len(ineighbors) and (ineighbors[0] < 0 or ineighbors[-1] >= self._num_vertices):
                bad = ineighbors[0] if ineighbors[0] < 0 else ineighbors[-1]
                raise cnngaterrors.VertexIndexError(ERROR_NEIGHBOR_RANGE.format(ivertex, bad,
                                                                                self._num_vertices))
            if self.has_edge(ivertex, ivertex):
                raise cnngaterrors.DataError(ERROR_SELF_EDGE.format(ivertex))
            for jvertex in ineighbors:
                if not self.has_edge(jvertex, ivertex):
                    raise cnngaterrors.DataError(ERROR_ASYMMETRIC.format(ivertex, jvertex))

    def has_edge(self, ivertex: int, jvertex: int):
        """return true if and only if both vertices are connected"""

        ineighbors = self._adjacency[ivertex]
        pos = np.searchsorted(ineighbors, jvertex)
        return bool(pos < len(ineighbors) and ineighbors[pos] == jvertex)

    def get_num_vertices(self):
        """return the number of vertices"""

        return self._num_vertices

    def get_neighbors(self, vertex: int):
        """return the sorted array of neighbors of the given vertex"""

        if not 0 <= vertex < self._num_vertices:
            raise cnngaterrors.VertexIndexError(ERROR_VERTEX_RANGE.format(vertex, self._num_vertices))
        return self._adjacency[vertex]

    def get_degree(self, vertex: int):
        """return the number of neighbors of the given vertex"""

        return len(self.get_neighbors(vertex))

    def get_degrees(self):
        """return an array with the degree of every vertex"""

        return np.array([len(ineighbors) for ineighbors in self._adjacency], dtype=np.int64)

    def get_num_edges(self):
        """return the number of undirected edges"""

        return int(self.get_degrees().sum()) // 2

    def get_edges(self):
        """return an array E×2 with all edges (i, j), i < j, in lexicographic order"""

        chunks = [np.stack([np.full(np.count_nonzero(ineighbors > ivertex), ivertex),
                            ineighbors[ineighbors > ivertex]], axis=1)
                  for ivertex, ineighbors in enumerate(self._adjacency)]
        if not chunks:
            return np.zeros((0, 2), dtype=np.int64)
        return np.concatenate(chunks).astype(np.int64)

    def is_symmetric(self):
        """return true if and only if j is a neighbor of i whenever i is a neighbor of
           j, checked with a full scan

        """

        for ivertex, ineighbors in enumerate(self._adjacency):
            for jvertex in ineighbors:
                if not self.has_edge(jvertex, ivertex):
                    return False
        return True

    def save(self, filename: str):
        """write the graph as a plain-text edge list: a header 'vertices N' followed by
           one line 'i j' per edge with i < j

        """

        with open(filename, 'w') as stream:
            stream.write("{0} {1}\n".format(HEADER_PREFIX, self._num_vertices))
            np.savetxt(stream, self.get_edges(), fmt='%d')

    @classmethod
    def load(cls, filename: str):
        """read a graph in the format written by save. Lines not given with i < j,
           repeated edges and out-of-range vertices are rejected

        """

        with open(filename, 'r') as stream:
            header = stream.readline().split()
            if len(header) != 2 or header[0] != HEADER_PREFIX or not header[1].isdigit():
                raise cnngaterrors.FormatError(ERROR_HEADER.format(filename, HEADER_PREFIX,
                                                                   ' '.join(header)), 0)
            num_vertices = int(header[1])

            edges = []
            for lineno, iline in enumerate(stream, start=2):
                fields = iline.split()
                if not fields:
                    continue
                if len(fields) != 2 or not all(ifield.isdigit() for ifield in fields):
                    raise cnngaterrors.FormatError(ERROR_EDGE_LINE.format(lineno, filename,
                                                                          iline.rstrip()))
                ivertex, jvertex = int(fields[0]), int(fields[1])
                if ivertex >= jvertex:
                    raise cnngaterrors.FormatError(ERROR_EDGE_ORDER.format(lineno, filename,
                                                                           ivertex, jvertex))
                if jvertex >= num_vertices:
                    raise cnngaterrors.FormatError(ERROR_EDGE_RANGE.format(lineno, filename,
                                                                           ivertex, jvertex,
                                                                           num_vertices))
                edges.append((ivertex, jvertex))

        edges = np.array(edges, dtype=np.int64).reshape(-1, 2)
        if len(edges) and len(np.unique(edges, axis=0)) != len(edges):
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            ordered = edges[order]
            dup = ordered[np.flatnonzero(np.all(ordered[1:] == ordered[:-1], axis=1))[0]]
            raise cnngaterrors.FormatError(ERROR_EDGE_DUPLICATE.format(filename, dup[0], dup[1]))

        return cls.from_edges(num_vertices, edges)


# -----------------------------------------------------------------------------
# MetaRecord
#
# Non-imaging information of a patient used by the meta-rule graph
# -----------------------------------------------------------------------------
class MetaRecord():
    """Non-imaging information of a patient used by the meta-rule graph"""

    def __init__(self, patient_id, gender, age: int):
        """a record consists of an opaque patient identifier, a binary gender and an
           age in years which can not be negative

        """

        if age < 0:
            raise cnngaterrors.DataError(ERROR_NEGATIVE_AGE.format(patient_id, age))
        (self._patient_id, self._gender, self._age) = (patient_id, gender, int(age))

    def __str__(self):
        """Provides a human readable version of the contents of this instance"""

        return "[{0}] {1} {2}y".format(self._patient_id, self._gender, self._age)

    def get_patient_id(self):
        """return the identifier of the patient"""

        return self._patient_id

    def get_gender(self):
        """return the gender of the patient"""

        return self._gender

    def get_age(self):
        """return the age of the patient in years"""

        return self._age


# -----------------------------------------------------------------------------
# Neighborhood
#
# Fixed-size sample of the neighbors of a vertex. Repetitions are allowed
# -----------------------------------------------------------------------------
class Neighborhood():
    """Fixed-size sample of the neighbors of a vertex. Repetitions are allowed"""

    def __init__(self, center: int, samples: np.ndarray):
        """a neighborhood is given by its center and the ids sampled around it"""

        (self._center, self._samples) = (center, np.asarray(samples, dtype=np.int64))

    def __len__(self):
        """return the number of samples"""

        return len(self._samples)

    def get_center(self):
        """return the center of this neighborhood"""

        return self._center

    def get_samples(self):
        """return the array of sampled vertex ids"""

        return self._samples


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# build_l1_threshold_graph
#
# connect two vectors if and only if the mean absolute difference of their
# entries is strictly below theta
# -----------------------------------------------------------------------------
def build_l1_threshold_graph(affinity_vectors, theta: float):
    """connect two vectors if and only if the mean absolute difference of their
       entries is strictly below theta

    """

    if not isinstance(affinity_vectors, np.ndarray):
        lengths = [len(ivector) for ivector in affinity_vectors]
        for idx, ilength in enumerate(lengths):
            if ilength != lengths[0]:
                raise cnngaterrors.DimensionError(ERROR_VECTOR_LENGTH.format(idx, ilength,
                                                                             lengths[0]))
    vectors = np.asarray(affinity_vectors, dtype=np.float64)
    vectors = vectors.reshape(len(vectors), -1)
    num_vertices, dimension = vectors.shape

    # the distance matrix is computed by blocks of rows to bound memory
    adjacency = []
    for start in range(0, num_vertices, DISTANCE_CHUNK):
        stop = min(start + DISTANCE_CHUNK, num_vertices)
        close = cdist(vectors[start:stop], vectors, 'cityblock') / dimension < theta
        close[np.arange(stop - start), np.arange(start, stop)] = False
        adjacency += [np.flatnonzero(irow) for irow in close]

    graph = AffinityGraph(num_vertices, adjacency, check=False)
    LOGGER.debug(DEBUG_GRAPH_BUILT.format(SETTING_THETA, num_vertices, graph.get_num_edges()))
    return graph


# -----------------------------------------------------------------------------
# build_label_graph
#
# connect two vertices if and only if they share the label or their labels are
# given as an extra pair of connected classes
# -----------------------------------------------------------------------------
def build_label_graph(labels, extra_class_pairs=()):
    """connect two vertices if and only if they share the label or their labels are
       given as an extra pair of connected classes

    """

    labels = np.asarray(labels)

    # compute the classes linked to every class, including itself
    linked = defaultdict(set)
    for iclass in np.unique(labels):
        linked[iclass].add(iclass)
    for iclass, jclass in extra_class_pairs:
        linked[iclass].add(jclass)
        linked[jclass].add(iclass)

    members = {iclass: np.flatnonzero(labels == iclass) for iclass in np.unique(labels)}
    candidates = {iclass: np.sort(np.concatenate([members[jclass]
                                                  for jclass in linked[iclass]
                                                  if jclass in members]))
                  for iclass in members}

    adjacency = []
    for ivertex, ilabel in enumerate(labels):
        ineighbors = candidates[ilabel]
        adjacency.append(ineighbors[ineighbors != ivertex])

    graph = AffinityGraph(len(labels), adjacency, check=False)
    LOGGER.debug(DEBUG_GRAPH_BUILT.format(SETTING_CLASS_LINK if extra_class_pairs else SETTING_LABEL,
                                          len(labels), graph.get_num_edges()))
    return graph


# -----------------------------------------------------------------------------
# build_random_graph
#
# Erdős–Rényi graph where every pair of vertices is connected with probability
# target_mean_degree/(num_vertices-1)
# -----------------------------------------------------------------------------
def build_random_graph(num_vertices: int, target_mean_degree: float, rng: np.random.Generator):
    """Erdős–Rényi graph where every pair of vertices is connected with probability
       target_mean_degree/(num_vertices-1)

    """

    if target_mean_degree < 0:
        raise cnngaterrors.DataError(ERROR_NEGATIVE_DEGREE.format(target_mean_degree))

    prob = 0.0 if num_vertices < 2 else min(1.0, target_mean_degree / (num_vertices - 1))

    edges = []
    for ivertex in range(num_vertices - 1):
        hits = np.flatnonzero(rng.random(num_vertices - ivertex - 1) < prob)
        edges.append(np.stack([np.full(len(hits), ivertex), ivertex + 1 + hits], axis=1))

    graph = AffinityGraph.from_edges(num_vertices, np.concatenate(edges) if edges else [])
    LOGGER.debug(DEBUG_GRAPH_BUILT.format(SETTING_RANDOM, num_vertices, graph.get_num_edges()))
    return graph


# -----------------------------------------------------------------------------
# extend_random_graph
#
# return a random graph over num_vertices vertices whose first vertices are
# those of base, with exactly the same edges among them. Every pair with at
# least one new vertex is connected with the same probability, chosen so that
# the expected mean degree of the whole graph is target_mean_degree (or as close
# as possible if the edges of base are too few or too many)
# -----------------------------------------------------------------------------
def extend_random_graph(base: AffinityGraph, num_vertices: int, target_mean_degree: float,
                        rng: np.random.Generator):
    """return a random graph over num_vertices vertices whose first vertices are
       those of base, with exactly the same edges among them. Every pair with at
       least one new vertex is connected with the same probability, chosen so
       that the expected mean degree of the whole graph is target_mean_degree (or
       as close as possible if the edges of base are too few or too many)

    """

    if target_mean_degree < 0:
        raise cnngaterrors.DataError(ERROR_NEGATIVE_DEGREE.format(target_mean_degree))
    first = base.get_num_vertices()
    if num_vertices < first:
        raise cnngaterrors.DimensionError(ERROR_EXTENSION.format(first, num_vertices))

    new_pairs = num_vertices * (num_vertices - 1) // 2 - first * (first - 1) // 2
    missing = target_mean_degree * num_vertices / 2 - base.get_num_edges()
    prob = 0.0 if new_pairs == 0 else min(1.0, max(0.0, missing / new_pairs))

    edges = [base.get_edges()]
    for ivertex in range(num_vertices - 1):
        start = max(ivertex + 1, first)
        hits = np.flatnonzero(rng.random(num_vertices - start) < prob)
        edges.append(np.stack([np.full(len(hits), ivertex), start + hits], axis=1))

    graph = AffinityGraph.from_edges(num_vertices, np.concatenate(edges))
    LOGGER.debug(DEBUG_GRAPH_BUILT.format(SETTING_RANDOM, num_vertices, graph.get_num_edges()))
    return graph


# -----------------------------------------------------------------------------
# build_meta_rule_graph
#
# connect two patients if at least one of the following holds: they have the
# same id; they have the same gender and their ages differ in one year at most;
# they have different gender and the same age
# -----------------------------------------------------------------------------
def build_meta_rule_graph(records: list):
    """connect two patients if at least one of the following holds: they have the
       same id; they have the same gender and their ages differ in one year at
       most; they have different gender and the same age

    """

    ids = np.array([str(irecord.get_patient_id()) for irecord in records])
    genders = np.array([str(irecord.get_gender()) for irecord in records])
    ages = np.array([irecord.get_age() for irecord in records], dtype=np.int64)

    adjacency = []
    for ivertex in range(len(records)):
        same_gender = genders == genders[ivertex]
        gap = np.abs(ages - ages[ivertex])
        connected = (ids == ids[ivertex]) | (same_gender & (gap <= 1)) | (~same_gender & (gap == 0))
        connected[ivertex] = False
        adjacency.append(np.flatnonzero(connected))

    graph = AffinityGraph(len(records), adjacency, check=False)
    LOGGER.debug(DEBUG_GRAPH_BUILT.format(SETTING_META, len(records), graph.get_num_edges()))
    return graph


# -----------------------------------------------------------------------------
# restrict_edges
#
# return a copy of the graph without the edges whose endpoints both belong to
# the given set of vertices
# -----------------------------------------------------------------------------
def restrict_edges(graph: AffinityGraph, ids):
    """return a copy of the graph without the edges whose endpoints both belong to
       the given set of vertices

    """

    inside = np.zeros(graph.get_num_vertices(), dtype=bool)
    inside[np.asarray(ids, dtype=np.int64)] = True

    adjacency = []
    for ivertex in range(graph.get_num_vertices()):
        ineighbors = graph.get_neighbors(ivertex)
        adjacency.append(ineighbors[~inside[ineighbors]] if inside[ivertex] else ineighbors)

    return AffinityGraph(graph.get_num_vertices(), adjacency, check=False)


# -----------------------------------------------------------------------------
# degree_statistics
#
# return a dictionary with the number of vertices, edges, the mean degree, the
# number of isolated vertices and, if labels are given, the number of edges per
# (unordered) pair of classes and the fraction of inter-class edges
# -----------------------------------------------------------------------------
def degree_statistics(graph: AffinityGraph, labels=None):
    """return a dictionary with the number of vertices, edges, the mean degree, the
       number of isolated vertices and, if labels are given, the number of edges
       per (unordered) pair of classes and the fraction of inter-class edges

    """

    degrees = graph.get_degrees()
    stats = {'vertices': graph.get_num_vertices(),
             'edges': graph.get_num_edges(),
             'mean_degree': float(degrees.mean()) if len(degrees) else 0.0,
             'isolated': int(np.count_nonzero(degrees == 0))}

    if labels is not None:
        labels = np.asarray(labels)
        edges = graph.get_edges()
        pairs = np.sort(np.stack([labels[edges[:, 0]], labels[edges[:, 1]]], axis=1), axis=1)
        counts = defaultdict(int)
        for ipair in map(tuple, pairs.tolist()):
            counts[ipair] += 1
        stats['class_pairs'] = dict(sorted(counts.items()))
        stats['inter_class_fraction'] = float(np.mean(pairs[:, 0] != pairs[:, 1])) if len(pairs) else 0.0

    return stats


# -----------------------------------------------------------------------------
# sample_neighborhood
#
# draw exactly n neighbors of center: without replacement if it has at least n
# neighbors, with replacement if it has fewer, and n copies of center if it is
# isolated. If allowed is given (a boolean mask over all vertices), only those
# neighbors flagged in it are considered
# -----------------------------------------------------------------------------
def sample_neighborhood(graph: AffinityGraph, center: int, n: int,
                        rng: np.random.Generator, allowed: np.ndarray = None):
    """draw exactly n neighbors of center: without replacement if it has at least n
       neighbors, with replacement if it has fewer, and n copies of center if it
       is isolated. If allowed is given (a boolean mask over all vertices), only
       those neighbors flagged in it are considered

    """

    if n < 1:
        raise cnngaterrors.ContractError(ERROR_SAMPLE_SIZE.format(n))

    neighbors = graph.get_neighbors(center)
    if allowed is not None:
        neighbors = neighbors[allowed[neighbors]]

    degree = len(neighbors)
    if degree >= n:
        samples = rng.choice(neighbors, size=n, replace=False)
    elif degree > 0:
        samples = rng.choice(neighbors, size=n, replace=True)
    else:
        samples = np.full(n, center)

    return Neighborhood(center, samples)


# Local Variables:
# mode:python
# fill-column:80
# End:
