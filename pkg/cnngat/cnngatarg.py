#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cnngatarg.py
# Description: Definition of command line arguments to invoke the main script
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 17:20:03.550193618 (1792336203)>
#

"""
Definition of command line arguments to invoke the main script
"""

# imports
# -----------------------------------------------------------------------------
import argparse
import sys

if __package__ is None or __package__ == '':
    import cnngatversion
    import graph
    import hybrid
else:
    from . import cnngatversion
    from . import graph
    from . import hybrid

# globals
# -----------------------------------------------------------------------------
PAIRING_SEEDS = "seeds"
PAIRING_OCCLUSION = "occlusion"
PAIRING_BOTH = "both"


# -----------------------------------------------------------------------------
# CnngatArg
#
# provides the definition of the subcommands of cnngat and their arguments
# -----------------------------------------------------------------------------
class CnngatArg:
    """provides the definition of the subcommands of cnngat and their arguments"""

    def __init__(self):
        """defines the command argument parser"""

        self._parser = argparse.ArgumentParser(
            description="Train and analyze hybrid CNN/graph attention classifiers over affinity graphs")

        # miscellaneous arguments are shared by all subcommands
        self._misc = self._parser.add_argument_group('Miscellaneous')
        self._misc.add_argument('-v', '--verbose',
                                action='store_true',
                                help="shows additional information")
        self._misc.add_argument('-d', '--debug',
                                action='store_true',
                                help="shows even more information")
        self._misc.add_argument('-V', '--version',
                                action='version',
                                version=" %s %s" % (sys.argv[0], cnngatversion.__version__),
                                help="output version information and exit")

        self._subparsers = self._parser.add_subparsers(dest='command', metavar='command')
        self._subparsers.required = True

        self._add_prepare()
        self._add_build_graph()
        self._add_train()
        self._add_eval()
        self._add_occlusion()
        self._add_report()

    def _add_prepare(self):
        """arguments of the subcommand prepare"""

        parser = self._subparsers.add_parser('prepare',
                                             help="build the train and test splits of half images")
        mandatory = parser.add_argument_group("Mandatory arguments",
                                              "The following arguments are required")
        mandatory.add_argument('--mnist-dir',
                               required=True,
                               type=str,
                               help="directory with the four idx files of the standard MNIST distribution")
        mandatory.add_argument('--out',
                               required=True,
                               type=str,
                               help="output directory of the dataset")

        optional = parser.add_argument_group('Optional', "The following arguments are optional")
        optional.add_argument('--seed',
                              type=int,
                              default=0,
                              help="seed used to select the training images. By default, 0")
        optional.add_argument('--train-per-class',
                              type=int,
                              help="number of training images of every digit. By default, 2000")
        optional.add_argument('--test-count',
                              type=int,
                              help="if given, only this number of test images is randomly selected. By default, all of them are used")

    def _add_build_graph(self):
        """arguments of the subcommand build-graph"""

        parser = self._subparsers.add_parser('build-graph', help="build an affinity graph")
        mandatory = parser.add_argument_group("Mandatory arguments",
                                              "The following arguments are required")
        mandatory.add_argument('--setting',
                               required=True,
                               choices=graph.SETTINGS,
                               help="affinity rule")
        mandatory.add_argument('--out',
                               required=True,
                               type=str,
                               help="output directory of the graphs")

        optional = parser.add_argument_group('Optional', "The following arguments are optional")
        optional.add_argument('--data',
                              type=str,
                              help="directory of the dataset created with prepare. Required by all settings but 'meta'")
        optional.add_argument('--meta',
                              type=str,
                              help="csv file with columns patient_id, gender and age. Required by the setting 'meta'")
        optional.add_argument('--theta',
                              type=float,
                              default=0.1,
                              help="threshold of the mean absolute difference of affinity vectors. By default, 0.1")
        optional.add_argument('--seed',
                              type=int,
                              default=0,
                              help="seed of the random graph. By default, 0")

    def _add_run_arguments(self, parser, mandatory):
        """arguments shared by all subcommands that use a dataset and its graphs"""

        mandatory.add_argument('--data',
                               required=True,
                               type=str,
                               help="directory of the dataset created with prepare")
        mandatory.add_argument('--graphs',
                               required=True,
                               type=str,
                               help="directory of the graphs created with build-graph")

    def _add_train(self):
        """arguments of the subcommand train"""

        parser = self._subparsers.add_parser('train',
                                             help="train every variant with every seed")
        mandatory = parser.add_argument_group("Mandatory arguments",
                                              "The following arguments are required")
        self._add_run_arguments(parser, mandatory)
        mandatory.add_argument('--out',
                               required=True,
                               type=str,
                               help="output directory. Every run is stored in a subdirectory of its own")

        optional = parser.add_argument_group('Optional', "The following arguments are optional")
        optional.add_argument('-c', '--config',
                              type=str,
                              help="configuration file with lines 'key = value'")
        optional.add_argument('-s', '--set',
                              action='append',
                              default=[],
                              metavar='KEY=VALUE',
                              help="override a key of the configuration. It can be given several times")
        optional.add_argument('--variant',
                              action='append',
                              choices=list(hybrid.VARIANTS),
                              help="variant to train, overriding the configuration. It can be given several times")
        optional.add_argument('--seed',
                              action='append',
                              type=int,
                              help="seed to use, overriding the configuration. It can be given several times")

    def _add_eval(self):
        """arguments of the subcommand eval"""

        parser = self._subparsers.add_parser('eval', help="compute the accuracy of a trained run")
        mandatory = parser.add_argument_group("Mandatory arguments",
                                              "The following arguments are required")
        mandatory.add_argument('--run',
                               required=True,
                               type=str,
                               help="directory of a run created with train")
        self._add_run_arguments(parser, mandatory)

        optional = parser.add_argument_group('Optional', "The following arguments are optional")
        optional.add_argument('--graph',
                              choices=graph.SETTINGS,
                              help="affinity graph to use instead of the one used in training")
        optional.add_argument('--dump-attention',
                              type=str,
                              help="csv file where the attention coefficients of the last graph attention layer are written")

    def _add_occlusion(self):
        """arguments of the subcommand occlusion"""

        parser = self._subparsers.add_parser('occlusion',
                                             help="compute occlusion maps of random test images")
        mandatory = parser.add_argument_group("Mandatory arguments",
                                              "The following arguments are required")
        mandatory.add_argument('--run',
                               required=True,
                               type=str,
                               help="directory of a run created with train")
        self._add_run_arguments(parser, mandatory)

        optional = parser.add_argument_group('Optional', "The following arguments are optional")
        optional.add_argument('--count',
                              type=int,
                              default=1000,
                              help="number of test images. By default, 1000")
        optional.add_argument('--window',
                              type=int,
                              default=7,
                              help="size of the occluding window. By default, 7")
        optional.add_argument('--stride',
                              type=int,
                              default=1,
                              help="stride of the occluding window. By default, 1")
        optional.add_argument('--fill',
                              type=float,
                              default=0.0,
                              help="value of the occluded pixels. By default, 0")
        optional.add_argument('--seed',
                              type=int,
                              default=0,
                              help="seed used to select the images and to sample their neighborhoods. By default, 0")
        optional.add_argument('--maps',
                              type=int,
                              default=0,
                              help="number of maps exported as csv and pgm files. By default, none")

    def _add_report(self):
        """arguments of the subcommand report"""

        parser = self._subparsers.add_parser('report',
                                             help="aggregate all runs and compare them with a reference variant")
        mandatory = parser.add_argument_group("Mandatory arguments",
                                              "The following arguments are required")
        mandatory.add_argument('--runs',
                               required=True,
                               type=str,
                               help="directory with the runs created with train")

        optional = parser.add_argument_group('Optional', "The following arguments are optional")
        optional.add_argument('-o', '--output',
                              type=str,
                              help="name of the csv report. By default, 'report.csv' in the directory of the runs")
        optional.add_argument('-x', '--xlsx',
                              action='store_true',
                              help="also write the report as a xlsx spreadsheet")
        optional.add_argument('--reference',
                              choices=list(hybrid.VARIANTS),
                              default=hybrid.VARIANT_CNN,
                              help="variant every other one is compared with. By default, CNN")
        optional.add_argument('--pairing',
                              choices=[PAIRING_SEEDS, PAIRING_OCCLUSION, PAIRING_BOTH],
                              default=PAIRING_BOTH,
                              help="samples paired by the Wilcoxon tests: test accuracies of runs with the same seed, mean occlusion probabilities of the same images, or both. By default, both")

    def get_parser(self):
        """returns the parser"""

        return self._parser

    def parse(self, args=None):
        """parse the command line arguments and returns the result"""

        return self._parser.parse_args(args)


# Local Variables:
# mode:python
# fill-column:80
# End:
