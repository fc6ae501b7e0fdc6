#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cnngat.py
# Description: script for training and analyzing hybrid CNN/GAT classifiers
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 18:02:47.119370245 (1792338167)>
#

"""
script for training and analyzing hybrid CNN/GAT classifiers
"""

# imports
# -----------------------------------------------------------------------------
import math
import os
import sys
from collections import defaultdict

import numpy as np

if __package__ is None or __package__ == '':
    # uses current directory visibility
    import analysis
    import cnngatarg
    import cnngatconf
    import cnngaterrors
    import colors
    import graph
    import hybrid
    import mnist
    import trainer

    import spsreader
    import spswriter
    import utils
else:
    # uses current package visibility
    from . import analysis
    from . import cnngatarg
    from . import cnngatconf
    from . import cnngaterrors
    from . import colors
    from . import graph
    from . import hybrid
    from . import mnist
    from . import trainer

    from . import spsreader
    from . import spswriter
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('cnngat')

# exit codes
EXIT_SUCCESS = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

# artifacts of a dataset
TRAIN_NAME = "train.npz"
TEST_NAME = "test.npz"
MANIFEST_NAME = "manifest.csv"

# artifacts of every run
ACCURACY_NAME = "accuracy.csv"
OCCLUSION_NAME = "occlusion.csv"
MAPS_DIR = "maps"
REPORT_NAME = "report.csv"

# graph built over the train split and over the train split followed by the test
# split
ROLE_TRAIN = "train"
ROLE_ALL = "all"

# classes 5 and 6 are connected by the class-link graph
CLASS_LINK_PAIRS = ((1, 2),)

STATS_HEADERS = ["graph", "vertices", "edges", "mean_degree", "isolated",
                 "inter_class_fraction", "class_pairs"]
OCCLUSION_HEADERS = ["vertex", "label", "mean"]

# info
INFO_DATASET_WRITTEN = "dataset written to '{0}'"
INFO_GRAPH_WRITTEN = "graph '{0}': {1} vertices, {2} edges, mean degree {3:.2f}"
INFO_RUN = "training {0} with graph '{1}' and seed {2} in '{3}'"
INFO_ACCURACY = "{0}: {1}"
INFO_OCCLUSION = "mean occlusion probability over {0} images: {1:.4f}"
INFO_REPORT_WRITTEN = "report written to '{0}'"

# warnings
WARNING_GRAPH_IGNORED = "the variant {0} does not use any graph: --graph is ignored"
WARNING_NO_PVALUE = "{0} ({1}) vs {2}: {3}"
WARNING_NO_ACCURACY = "run '{0}' has no test accuracy and it is skipped"

# errors
ERROR_MISSING_ARTIFACT = "the artifact '{0}' does not exist. {1}"
ERROR_HINT_DATA = "Run 'cnngat prepare' first"
ERROR_HINT_GRAPH = "Run 'cnngat build-graph --setting {0}' first"
ERROR_HINT_RUN = "Run 'cnngat train' first"
ERROR_NEEDS_DATA = "the setting '{0}' requires --data"
ERROR_NEEDS_META = "the setting '{0}' requires --meta"
ERROR_GRAPH_VERTICES = "the graph '{0}' has {1} vertices but {2} were expected"
ERROR_NO_RUNS = "no runs were found in '{0}'"
ERROR_RUNTIME = "{0}"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# require
#
# return the given filename if it exists. Otherwise, raise a FileNotFoundError
# naming the missing artifact and how to create it
# -----------------------------------------------------------------------------
def require(filename: str, hint: str):
    """return the given filename if it exists. Otherwise, raise a
       FileNotFoundError naming the missing artifact and how to create it

    """

    if not os.path.exists(filename):
        raise FileNotFoundError(ERROR_MISSING_ARTIFACT.format(filename, hint))
    return filename


def graph_filename(dirname: str, setting: str, role: str = None):
    """return the name of the edge list of the given setting and role"""

    if role is None:
        return os.path.join(dirname, "graph-{0}.edges".format(setting))
    return os.path.join(dirname, "graph-{0}-{1}.edges".format(setting, role))


def load_splits(dirname: str):
    """return the train and test splits of a dataset created with prepare"""

    return (mnist.SplitDataset.load(require(os.path.join(dirname, TRAIN_NAME), ERROR_HINT_DATA)),
            mnist.SplitDataset.load(require(os.path.join(dirname, TEST_NAME), ERROR_HINT_DATA)))


# -----------------------------------------------------------------------------
# load_graph
#
# return the graph of the given setting and role. Variants that do not use the
# graph get a graph without edges if the file is missing
# -----------------------------------------------------------------------------
def load_graph(dirname: str, setting: str, role: str, num_vertices: int,
               variant: hybrid.ModelVariant):
    """return the graph of the given setting and role. Variants that do not use
       the graph get a graph without edges if the file is missing

    """

    filename = graph_filename(dirname, setting, role)
    if not variant.uses_gat() and not os.path.exists(filename):
        return graph.AffinityGraph.from_edges(num_vertices, [])

    affinity = graph.AffinityGraph.load(require(filename, ERROR_HINT_GRAPH.format(setting)))
    if affinity.get_num_vertices() != num_vertices:
        raise cnngaterrors.DataError(ERROR_GRAPH_VERTICES.format(
            filename, affinity.get_num_vertices(), num_vertices))
    return affinity


# -----------------------------------------------------------------------------
# load_run
#
# return the resolved configuration of a run along with its model restored from
# the checkpoint
# -----------------------------------------------------------------------------
def load_run(rundir: str):
    """return the resolved configuration of a run along with its model restored
       from the checkpoint

    """

    spec = cnngatconf.ExperimentSpec.parse(
        require(os.path.join(rundir, cnngatconf.CONFIG_NAME), ERROR_HINT_RUN))
    config = spec.get_config()
    model = trainer.build_model(config)
    trainer.load_checkpoint(model, require(os.path.join(rundir, trainer.CHECKPOINT_NAME),
                                           ERROR_HINT_RUN))
    return config, model


def write_graph_stats(filename: str, rows: list):
    """write the degree statistics of every graph given as (name, statistics)"""

    data = []
    for name, stats in rows:
        pairs = " ".join("{0}-{1}:{2}".format(ipair[0], ipair[1], icount)
                         for ipair, icount in stats.get('class_pairs', {}).items())
        data.append([name, stats['vertices'], stats['edges'], stats['mean_degree'],
                     stats['isolated'], stats.get('inter_class_fraction', ''), pairs])
    spswriter.write_csv(filename, STATS_HEADERS, data)


# -- subcommands

# -----------------------------------------------------------------------------
# cmd_prepare
#
# build the train and test splits of half images and write them along with the
# manifest
# -----------------------------------------------------------------------------
def cmd_prepare(params):
    """build the train and test splits of half images and write them along with
       the manifest

    """

    outdir = utils.get_output_directory(params.out)
    raw = mnist.load_mnist(params.mnist_dir)
    train_per_class = params.train_per_class or mnist.TRAIN_PER_CLASS
    train_set, test_set = mnist.make_modified_dataset(raw, np.random.default_rng(params.seed),
                                                      train_per_class=train_per_class,
                                                      test_count=params.test_count)

    train_set.save(os.path.join(outdir, TRAIN_NAME))
    test_set.save(os.path.join(outdir, TEST_NAME))
    mnist.write_manifest(os.path.join(outdir, MANIFEST_NAME), train_set, test_set)

    settings = {'seed': params.seed, 'digits': list(mnist.DIGITS),
                'train_per_class': train_per_class}
    if params.test_count is not None:
        settings['test_count'] = params.test_count
    cnngatconf.write_settings(outdir, settings)

    LOGGER.info(INFO_DATASET_WRITTEN.format(outdir))
    return EXIT_SUCCESS


# -----------------------------------------------------------------------------
# cmd_build_graph
#
# build the graph of the requested setting over the train split and over the
# train split followed by the test split. The meta setting builds a single graph
# over the records of the metadata file
# -----------------------------------------------------------------------------
def cmd_build_graph(params):
    """build the graph of the requested setting over the train split and over the
       train split followed by the test split. The meta setting builds a single
       graph over the records of the metadata file

    """

    outdir = utils.get_output_directory(params.out)
    setting = params.setting
    settings = {'setting': setting}

    if setting == graph.SETTING_META:
        if not params.meta:
            raise cnngaterrors.ConfigurationError(ERROR_NEEDS_META.format(setting))
        affinity = graph.build_meta_rule_graph(mnist.load_meta_records(params.meta))
        affinity.save(graph_filename(outdir, setting))
        stats = [(setting, graph.degree_statistics(affinity))]
        settings['meta'] = os.path.abspath(params.meta)

    else:
        if not params.data:
            raise cnngaterrors.ConfigurationError(ERROR_NEEDS_DATA.format(setting))
        train_set, test_set = load_splits(params.data)
        datasets = {ROLE_TRAIN: train_set, ROLE_ALL: mnist.combine_splits(train_set, test_set)}

        # the graph over all images extends the one over the train split
        (stats, base) = ([], None)
        for role, dataset in datasets.items():
            affinity = _build(setting, dataset, params.theta,
                              np.random.default_rng([params.seed, len(stats)]), base)
            base = affinity
            affinity.save(graph_filename(outdir, setting, role))
            stats.append(("{0}-{1}".format(setting, role),
                          graph.degree_statistics(affinity, dataset.get_labels())))

        settings.update({'data': os.path.abspath(params.data), 'seed': params.seed})
        if setting in (graph.SETTING_THETA, graph.SETTING_RANDOM):
            settings['theta'] = params.theta

    for name, istats in stats:
        LOGGER.info(INFO_GRAPH_WRITTEN.format(name, istats['vertices'], istats['edges'],
                                              istats['mean_degree']))
    write_graph_stats(os.path.join(outdir, "graph-{0}-stats.csv".format(setting)), stats)
    cnngatconf.write_settings(outdir, settings)
    return EXIT_SUCCESS


def _build(setting: str, dataset: mnist.SplitDataset, theta: float, rng: np.random.Generator,
           base: graph.AffinityGraph = None):
    """return the graph of the given setting over all images of the dataset. The
       random graph matches the mean degree of the threshold graph and, if base is
       given, keeps its edges among the first vertices

    """

    if setting == graph.SETTING_THETA:
        return graph.build_l1_threshold_graph(dataset.get_affinity_vectors(), theta)
    if setting == graph.SETTING_RANDOM:
        reference = graph.build_l1_threshold_graph(dataset.get_affinity_vectors(), theta)
        degree = reference.get_degrees().mean()
        if base is None:
            return graph.build_random_graph(len(dataset), degree, rng)
        return graph.extend_random_graph(base, len(dataset), degree, rng)
    if setting == graph.SETTING_LABEL:
        return graph.build_label_graph(dataset.get_labels())
    return graph.build_label_graph(dataset.get_labels(), CLASS_LINK_PAIRS)


# -----------------------------------------------------------------------------
# cmd_train
#
# train every variant of the experiment with every seed. Each run is stored in
# a subdirectory of its own along with its resolved configuration
# -----------------------------------------------------------------------------
def cmd_train(params):
    """train every variant of the experiment with every seed. Each run is stored
       in a subdirectory of its own along with its resolved configuration

    """

    spec = cnngatconf.ExperimentSpec.parse(params.config, params.set)
    if params.variant or params.seed:
        spec = cnngatconf.ExperimentSpec(spec.get_config(),
                                         params.variant or spec.get_variants(),
                                         params.seed or spec.get_seeds())

    outdir = utils.get_output_directory(params.out)
    spec.write(outdir)

    train_set, test_set = load_splits(params.data)
    setting = spec.get_config().graph
    for ivariant in spec.get_variants():
        variant = hybrid.ModelVariant(ivariant)
        graph_train = load_graph(params.graphs, setting, ROLE_TRAIN, len(train_set), variant)
        graph_all = load_graph(params.graphs, setting, ROLE_ALL,
                               len(train_set) + len(test_set), variant)

        for iseed in spec.get_seeds():
            config = spec.get_run_config(ivariant, iseed)
            rundir = utils.get_output_directory(os.path.join(
                outdir, "{0}-{1}-seed{2}".format(ivariant, setting, iseed)))
            spec.for_run(ivariant, iseed).write(rundir)

            LOGGER.info(INFO_RUN.format(ivariant, setting, iseed, rundir))
            trainer.train(config, train_set, graph_train, test_set,
                          trainer.evaluation_graph(graph_all, len(train_set), config), rundir)

    return EXIT_SUCCESS


# -----------------------------------------------------------------------------
# cmd_eval
#
# compute the test accuracy of a trained run, overall and per class, and write
# it in the directory of the run
# -----------------------------------------------------------------------------
def cmd_eval(params):
    """compute the test accuracy of a trained run, overall and per class, and
       write it in the directory of the run

    """

    config, model = load_run(params.run)
    variant = model.get_variant()

    setting = config.graph
    if params.graph:
        if variant.uses_gat():
            setting = params.graph
        else:
            LOGGER.warning(WARNING_GRAPH_IGNORED.format(variant))

    train_set, test_set = load_splits(params.data)
    images = np.concatenate([train_set.get_images(), test_set.get_images()])
    graph_all = load_graph(params.graphs, setting, ROLE_ALL, len(images), variant)
    eval_graph = trainer.evaluation_graph(graph_all, len(train_set), config)
    test_ids = len(train_set) + np.arange(len(test_set))

    # the same stream used for the last evaluation of training
    rng = np.random.default_rng([config.seed, config.epochs, trainer.EVAL_STREAM])
    probs = hybrid.evaluate(model, images, eval_graph, test_ids, config.neighbors, rng,
                            config.batch_size, config.reuse_1hop)
    report = analysis.accuracy_report(probs, test_set.get_labels(), config.num_classes)
    LOGGER.info(INFO_ACCURACY.format(params.run, report))

    headers = ["graph", "accuracy", "lowest"] + \
        ["acc_class{0}".format(iclass) for iclass in range(config.num_classes)]
    spswriter.write_csv(os.path.join(params.run, ACCURACY_NAME), headers,
                        [[setting, report.get_overall(), report.get_lowest()] +
                         report.get_per_class()])
    print(report)

    if params.dump_attention and variant.uses_gat():
        batch = hybrid.assemble_batch(eval_graph, test_ids[:config.batch_size], config.neighbors,
                                      model.get_hops(), images, rng, config.reuse_1hop)
        model.forward(batch, training=False)
        layers = batch.get_layers()
        slot_ids = batch.get_vertex_ids()[:len(layers[0][0])] if len(layers) > 1 \
            else batch.get_vertex_ids()
        model.get_gat_layers()[-1].write_attention(params.dump_attention,
                                                   batch.get_main_ids(), slot_ids)

    return EXIT_SUCCESS


# -----------------------------------------------------------------------------
# cmd_occlusion
#
# compute the occlusion map of a random selection of test images. The mean of
# every map is written in the directory of the run, and the first maps are also
# exported as csv and pgm files
# -----------------------------------------------------------------------------
def cmd_occlusion(params):
    """compute the occlusion map of a random selection of test images. The mean of
       every map is written in the directory of the run, and the first maps are
       also exported as csv and pgm files

    """

    config, model = load_run(params.run)
    train_set, test_set = load_splits(params.data)
    images = np.concatenate([train_set.get_images(), test_set.get_images()])
    labels = np.concatenate([train_set.get_labels(), test_set.get_labels()])
    graph_all = load_graph(params.graphs, config.graph, ROLE_ALL, len(images),
                           model.get_variant())
    eval_graph = trainer.evaluation_graph(graph_all, len(train_set), config)

    # the selection only depends on the seed, so that runs can be paired
    count = min(params.count, len(test_set))
    selected = np.sort(np.random.default_rng(params.seed).choice(len(test_set), size=count,
                                                                 replace=False))

    mapsdir = utils.get_output_directory(os.path.join(params.run, MAPS_DIR)) \
        if params.maps > 0 else None
    rows = []
    for position, itest in enumerate(selected.tolist()):
        vertex = len(train_set) + itest
        occlusion, mean = analysis.occlusion_shift(
            model, vertex, images, labels, eval_graph, params.window, params.stride,
            params.fill, config.neighbors, np.random.default_rng([params.seed, itest]),
            config.reuse_1hop)
        rows.append([vertex, int(labels[vertex]), mean])

        if position < params.maps:
            basename = os.path.join(mapsdir, "occlusion-{0}".format(vertex))
            occlusion.write_csv(basename + ".csv")
            occlusion.write_pgm(basename + ".pgm")

    spswriter.write_csv(os.path.join(params.run, OCCLUSION_NAME), OCCLUSION_HEADERS, rows)
    if mapsdir is not None:
        cnngatconf.write_settings(mapsdir, {'count': count, 'window': params.window,
                                            'stride': params.stride, 'fill': params.fill,
                                            'seed': params.seed})

    overall = float(np.mean([irow[2] for irow in rows])) if rows else math.nan
    LOGGER.info(INFO_OCCLUSION.format(len(rows), overall))
    print("{0:.4f}".format(overall))
    return EXIT_SUCCESS


# -----------------------------------------------------------------------------
# RunSummary
#
# Test accuracies and occlusion means of a single trained run
# -----------------------------------------------------------------------------
class RunSummary():
    """Test accuracies and occlusion means of a single trained run"""

    def __init__(self, variant: str, setting: str, seed: int,
                 accuracy: float, lowest: float, occlusion: dict):
        """occlusion maps the ids of the occluded vertices to their means"""

        (self._variant, self._setting, self._seed) = (variant, setting, seed)
        (self._accuracy, self._lowest, self._occlusion) = (accuracy, lowest, occlusion)

    def get_variant(self):
        """return the name of the variant"""

        return self._variant

    def get_setting(self):
        """return the graph setting"""

        return self._setting

    def get_seed(self):
        """return the seed"""

        return self._seed

    def get_accuracy(self):
        """return the overall test accuracy"""

        return self._accuracy

    def get_lowest(self):
        """return the accuracy of the worst class"""

        return self._lowest

    def get_occlusion(self):
        """return a dictionary with the occlusion mean of every vertex"""

        return self._occlusion

    @classmethod
    def load(cls, rundir: str):
        """return the summary of the given run or None if it has no test accuracy.
           The accuracy written by eval takes precedence over the metric log

        """

        config = cnngatconf.ExperimentSpec.parse(os.path.join(rundir, cnngatconf.CONFIG_NAME)).get_config()

        accname = os.path.join(rundir, ACCURACY_NAME)
        if os.path.exists(accname):
            record = next(iter(spsreader.SpsReader(accname, ["accuracy", "lowest"])))
            accuracy, lowest = float(record['accuracy']), float(record['lowest'])
        else:
            records = [irecord for irecord in trainer.read_metrics(os.path.join(rundir, trainer.METRICS_NAME))
                       if not math.isnan(irecord['test_acc'])]
            if not records:
                return None
            per_class = [records[-1]['acc_class{0}'.format(iclass)]
                         for iclass in range(config.num_classes)]
            accuracy, lowest = records[-1]['test_acc'], float(np.nanmin(per_class))

        occlusion = {}
        occname = os.path.join(rundir, OCCLUSION_NAME)
        if os.path.exists(occname):
            occlusion = {int(irow['vertex']): float(irow['mean'])
                         for irow in spsreader.SpsReader(occname, OCCLUSION_HEADERS)}

        return cls(config.variant, config.graph, config.seed, accuracy, lowest, occlusion)


# -----------------------------------------------------------------------------
# collect_runs
#
# return the summaries of all runs found in the given directory grouped by
# (variant, setting)
# -----------------------------------------------------------------------------
def collect_runs(dirname: str):
    """return the summaries of all runs found in the given directory grouped by
       (variant, setting)

    """

    groups = defaultdict(list)
    for iname in sorted(os.listdir(dirname)):
        rundir = os.path.join(dirname, iname)
        if not os.path.exists(os.path.join(rundir, trainer.METRICS_NAME)) or \
           not os.path.exists(os.path.join(rundir, cnngatconf.CONFIG_NAME)):
            continue
        summary = RunSummary.load(rundir)
        if summary is None:
            LOGGER.warning(WARNING_NO_ACCURACY.format(rundir))
            continue
        groups[(summary.get_variant(), summary.get_setting())].append(summary)

    if not groups:
        raise cnngaterrors.DataError(ERROR_NO_RUNS.format(dirname))
    return groups


def paired_accuracies(runs: list, reference: list):
    """return the test accuracies of both groups of runs paired by seed"""

    seeds = {irun.get_seed(): irun.get_accuracy() for irun in reference}
    pairs = [(irun.get_accuracy(), seeds[irun.get_seed()])
             for irun in runs if irun.get_seed() in seeds]
    return [ipair[0] for ipair in pairs], [ipair[1] for ipair in pairs]


def paired_occlusions(runs: list, reference: list):
    """return the occlusion means of both groups of runs paired by seed and
       vertex

    """

    means = {(irun.get_seed(), ivertex): imean
             for irun in reference for ivertex, imean in irun.get_occlusion().items()}
    pairs = [(imean, means[(irun.get_seed(), ivertex)])
             for irun in runs for ivertex, imean in sorted(irun.get_occlusion().items())
             if (irun.get_seed(), ivertex) in means]
    return [ipair[0] for ipair in pairs], [ipair[1] for ipair in pairs]


def _pvalue(name: str, setting: str, reference: str, samples: tuple):
    """return the p-value of the Wilcoxon test of the given paired samples or nan
       if it is not defined

    """

    try:
        return analysis.wilcoxon_signed_rank(*samples).get_pvalue()
    except cnngaterrors.DegenerateInputError as exc:
        LOGGER.warning(WARNING_NO_PVALUE.format(name, setting, reference, exc))
        return math.nan


# -----------------------------------------------------------------------------
# cmd_report
#
# aggregate all runs over their seeds and compare every group with the runs of
# the reference variant (with the same graph if there are any)
# -----------------------------------------------------------------------------
def cmd_report(params):
    """aggregate all runs over their seeds and compare every group with the runs
       of the reference variant (with the same graph if there are any)

    """

    groups = collect_runs(params.runs)
    references = {setting: runs for (variant, setting), runs in groups.items()
                  if variant == params.reference}
    fallback = next(iter(references.values()), None)

    rows = []
    for (variant, setting), runs in sorted(groups.items()):
        accuracy = analysis.aggregate_runs([irun.get_accuracy() for irun in runs])
        lowest = analysis.aggregate_runs([irun.get_lowest() for irun in runs])
        occlusions = [np.mean(list(irun.get_occlusion().values()))
                      for irun in runs if irun.get_occlusion()]

        row = {'network': variant, 'affinity': setting,
               'accuracy_mean': accuracy[0], 'accuracy_std': accuracy[1],
               'lowest_mean': lowest[0], 'lowest_std': lowest[1],
               'occ_mean': float(np.mean(occlusions)) if occlusions else math.nan,
               'p_value': math.nan, 'occ_p_value': math.nan}

        reference = references.get(setting, fallback)
        if variant != params.reference and reference is not None:
            if params.pairing in (cnngatarg.PAIRING_SEEDS, cnngatarg.PAIRING_BOTH):
                row['p_value'] = _pvalue(variant, setting, params.reference,
                                         paired_accuracies(runs, reference))
            if params.pairing in (cnngatarg.PAIRING_OCCLUSION, cnngatarg.PAIRING_BOTH):
                row['occ_p_value'] = _pvalue(variant, setting, params.reference,
                                             paired_occlusions(runs, reference))
        rows.append(row)

    output = params.output or os.path.join(params.runs, REPORT_NAME)
    output = utils.normalize_filename(output, ".csv")
    analysis.write_report(output, rows,
                          utils.normalize_filename(output, ".xlsx") if params.xlsx else None)
    LOGGER.info(INFO_REPORT_WRITTEN.format(output))

    show_report(rows)
    return EXIT_SUCCESS


def show_report(rows: list):
    """print the report on the standard output"""

    colors.cprint("{0:<8} {1:<8} {2:>17} {3:>17} {4:>8} {5:>8} {6:>8}".format(
        "network", "affinity", "accuracy", "lowest", "occ", "p-val", "O. p-val"), bold=True)

    def _fmt(value):
        return "-" if math.isnan(value) else "{0:.3f}".format(value)

    for irow in rows:
        print("{0:<8} {1:<8} {2:>8.3f} ± {3:<6.3f} {4:>8.3f} ± {5:<6.3f} {6:>8} {7:>8} {8:>8}".format(
            irow['network'], irow['affinity'], irow['accuracy_mean'], irow['accuracy_std'],
            irow['lowest_mean'], irow['lowest_std'], _fmt(irow['occ_mean']),
            _fmt(irow['p_value']), _fmt(irow['occ_p_value'])))


COMMANDS = {'prepare': cmd_prepare,
            'build-graph': cmd_build_graph,
            'train': cmd_train,
            'eval': cmd_eval,
            'occlusion': cmd_occlusion,
            'report': cmd_report}


# main
# -----------------------------------------------------------------------------
def main(args=None):
    """main entry point"""

    # --initialization

    # invoke the parser and parse all commands
    params = cnngatarg.CnngatArg().parse(args)

    level = 'DEBUG' if params.debug else 'INFO' if params.verbose else 'WARNING'
    logger = utils.setup_logger(level)

    try:
        return COMMANDS[params.command](params)
    except cnngaterrors.NaNLossError as exc:
        logger.error(ERROR_RUNTIME.format(exc))
        return EXIT_RUNTIME
    except (cnngaterrors.CnngatError, OSError) as exc:
        logger.error(ERROR_RUNTIME.format(exc))
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())


# Local Variables:
# mode:python
# fill-column:80
# End:
