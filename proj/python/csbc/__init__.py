# Copyright 2026 The csbc Authors.
# SPDX-License-Identifier: Apache-2.0
"""Python front end for the csbc simulator.

Configs and reports cross the boundary as JSON; these helpers take and
return plain dicts.
"""

import json

from ._csbc import (
    CapabilityError,
    ConfigError,
    binary_entropy,
    p_unveil,
    strategy_kinds,
)
from . import _csbc

__all__ = [
    "CapabilityError",
    "ConfigError",
    "binary_entropy",
    "detection_exact",
    "normalize_config",
    "p_unveil",
    "run",
    "strategy_kinds",
]


def run(config, threads=0):
    """Run an experiment config (dict or JSON text).

    JSON reports come back as dicts, CSV reports as text.
    """
    text = config if isinstance(config, str) else json.dumps(config)
    out = _csbc.run_experiment(text, threads)
    if out.startswith("{"):
        return json.loads(out)
    return out


def normalize_config(config):
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_csbc.normalize_config(text))


def detection_exact(committer, receiver, max_branches=1_000_000):
    """Exact detection report for two strategy records {kind, params}."""
    return json.loads(
        _csbc.detection_exact(json.dumps(committer), json.dumps(receiver), max_branches)
    )
