#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cnngatconf.py
# Description: Experiment configuration files and command line overrides
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 16:31:44.095318102 (1792333304)>
#

"""
Experiment configuration files and command line overrides

Configuration files consist of lines 'key = value'. Everything after a '#' is
a comment and blank lines are ignored. Lists are given comma-separated and
booleans as true/false. Keys are the hyperparameters of a training run plus:

    preset      name of a preset applied before any other key
    variants    comma-separated list of variants to train
    seeds       comma-separated list of seeds
"""

# imports
# -----------------------------------------------------------------------------
import dataclasses
import os
import re

if __package__ is None or __package__ == '':
    import cnngaterrors
    import trainer
    import utils
else:
    from . import cnngaterrors
    from . import trainer
    from . import utils

# globals
# -----------------------------------------------------------------------------
LOGGER = utils.get_logger('cnngatconf')

# name of the file with the resolved configuration in every output directory
CONFIG_NAME = "config.txt"

# keys which are not hyperparameters of a training run
KEY_PRESET = "preset"
KEY_VARIANTS = "variants"
KEY_SEEDS = "seeds"

RE_LINE = re.compile(r'^\s*(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<value>.*?)\s*$')

TRUE_VALUES = ("true", "yes", "on", "1")
FALSE_VALUES = ("false", "no", "off", "0")

# debug
DEBUG_SETTING = "{0} = {1} ({2})"

# errors
ERROR_SYNTAX = "{0}, line {1}: '{2}' is not a legal 'key = value' line"
ERROR_UNKNOWN_KEY = "{0}: unknown key '{1}'"
ERROR_VALUE = "{0}: '{1}' is not a legal value of '{2}' ({3} expected)"
ERROR_OVERRIDE = "'{0}' is not a legal override. Use key=value"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# parse_lines
#
# return a dictionary with the raw values of all lines 'key = value' given in
# lines. source is used only in error messages
# -----------------------------------------------------------------------------
def parse_lines(lines, source: str):
    """return a dictionary with the raw values of all lines 'key = value' given in
       lines. source is used only in error messages

    """

    settings = {}
    for lineno, iline in enumerate(lines, start=1):
        content = iline.split('#', 1)[0]
        if not content.strip():
            continue
        match = RE_LINE.match(content)
        if not match:
            raise cnngaterrors.ConfigurationError(ERROR_SYNTAX.format(source, lineno,
                                                                      iline.rstrip()))
        settings[match.group('key')] = match.group('value')

    return settings


# -----------------------------------------------------------------------------
# parse_overrides
#
# return a dictionary with the raw values of overrides given as 'key=value'
# -----------------------------------------------------------------------------
def parse_overrides(overrides):
    """return a dictionary with the raw values of overrides given as 'key=value'"""

    settings = {}
    for ioverride in overrides or []:
        if '=' not in ioverride:
            raise cnngaterrors.ConfigurationError(ERROR_OVERRIDE.format(ioverride))
        key, value = ioverride.split('=', 1)
        settings[key.strip()] = value.strip()
    return settings


# -----------------------------------------------------------------------------
# coerce
#
# convert the raw value of the given key to the type of its default value
# -----------------------------------------------------------------------------
def coerce(key: str, raw: str, default, source: str = "configuration"):
    """convert the raw value of the given key to the type of its default value"""

    try:
        if isinstance(default, bool):
            if raw.lower() in TRUE_VALUES:
                return True
            if raw.lower() in FALSE_VALUES:
                return False
            raise ValueError(raw)
        if isinstance(default, list):
            itemtype = type(default[0]) if default else str
            return [itemtype(iitem.strip()) for iitem in raw.split(',') if iitem.strip()]
        return type(default)(raw)
    except ValueError as exc:
        raise cnngaterrors.ConfigurationError(ERROR_VALUE.format(source, raw, key,
                                                                 type(default).__name__)) from exc


# -----------------------------------------------------------------------------
# format_value
#
# return the textual representation of a value in configuration files
# -----------------------------------------------------------------------------
def format_value(value):
    """return the textual representation of a value in configuration files"""

    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(iitem) for iitem in value)
    return repr(value) if isinstance(value, float) else str(value)


# -----------------------------------------------------------------------------
# write_settings
#
# write a dictionary of settings in the configuration file of the given
# directory with its keys sorted
# -----------------------------------------------------------------------------
def write_settings(dirname: str, settings: dict):
    """write a dictionary of settings in the configuration file of the given
       directory with its keys sorted

    """

    filename = os.path.join(dirname, CONFIG_NAME)
    with open(filename, 'w') as stream:
        for key in sorted(settings):
            stream.write("{0} = {1}\n".format(key, format_value(settings[key])))
    return filename


# -----------------------------------------------------------------------------
# ExperimentSpec
#
# Hyperparameters of training along with the variants and seeds of an
# experiment
# -----------------------------------------------------------------------------
class ExperimentSpec():
    """Hyperparameters of training along with the variants and seeds of an
       experiment

    """

    def __init__(self, config: trainer.TrainConfig, variants: list = None, seeds: list = None):
        """by default, the experiment consists of the variant and seed of config"""

        self._config = config
        self._variants = [config.variant] if not variants else list(variants)
        self._seeds = [config.seed] if not seeds else list(seeds)

        # verify the variants by creating a configuration for each one
        for ivariant in self._variants:
            dataclasses.replace(config, variant=ivariant)

    @classmethod
    def parse(cls, filename: str = None, overrides=()):
        """create an experiment from a configuration file (if any) and the overrides
           given as 'key=value' which take precedence

        """

        settings = {}
        if filename:
            with open(filename, 'r') as stream:
                settings = parse_lines(stream, filename)
        settings.update(parse_overrides(overrides))
        return cls.from_settings(settings, filename or "command line")

    @classmethod
    def from_settings(cls, settings: dict, source: str = "configuration"):
        """create an experiment from a dictionary of raw values"""

        settings = dict(settings)
        base = trainer.TrainConfig.preset(settings.pop(KEY_PRESET, 'mnist'))
        defaults = dataclasses.asdict(base)

        values = {}
        for key, raw in settings.items():
            if key in (KEY_VARIANTS, KEY_SEEDS):
                continue
            if key not in defaults:
                raise cnngaterrors.ConfigurationError(ERROR_UNKNOWN_KEY.format(source, key))
            values[key] = coerce(key, raw, defaults[key], source)
            LOGGER.debug(DEBUG_SETTING.format(key, values[key], source))

        config = dataclasses.replace(base, **values)
        variants = coerce(KEY_VARIANTS, settings[KEY_VARIANTS], [""], source) \
            if KEY_VARIANTS in settings else None
        seeds = coerce(KEY_SEEDS, settings[KEY_SEEDS], [0], source) \
            if KEY_SEEDS in settings else None
        return cls(config, variants, seeds)

    def get_config(self):
        """return the base configuration of training"""

        return self._config

    def get_variants(self):
        """return the list of variants"""

        return self._variants

    def get_seeds(self):
        """return the list of seeds"""

        return self._seeds

    def get_run_config(self, variant: str, seed: int):
        """return the configuration of training of the given variant and seed"""

        return dataclasses.replace(self._config, variant=variant, seed=seed)

    def for_run(self, variant: str, seed: int):
        """return the experiment consisting only of the given variant and seed"""

        return ExperimentSpec(self.get_run_config(variant, seed), [variant], [seed])

    def to_dict(self):
        """return all settings as a dictionary"""

        settings = dataclasses.asdict(self._config)
        settings[KEY_VARIANTS] = self._variants
        settings[KEY_SEEDS] = self._seeds
        return settings

    def write(self, dirname: str):
        """write the resolved configuration in the given directory"""

        return write_settings(dirname, self.to_dict())


# Local Variables:
# mode:python
# fill-column:80
# End:
