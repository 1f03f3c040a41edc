"""Python access to the deformed Fomin-Kirillov algebra verification engine."""

import json

from . import _efk
from ._efk import (
    ConfigError,
    EngineError,
    ParamError,
    hilbert_ranks,
    jacobi_sn,
    job_seed,
    sigma_lambda,
    theta,
    theta1,
    version,
    wp,
)

SUBCOMMANDS = (
    "verify identities",
    "verify pieri",
    "verify operators",
    "verify funceq",
    "hilbert",
    "degenerate",
)


def run(subcommand, **config):
    """Run a suite; returns (report dict, exit code, human summary)."""
    report, code, summary = _efk.run_json(subcommand, json.dumps(config))
    return json.loads(report), code, summary


def verify_pieri(n, k, index_set, family="elliptic", phi="auto"):
    """One deformed Pieri instance with both phi readings unless phi is fixed."""
    return json.loads(_efk.pieri_json(n, k, list(index_set), family, phi))


__all__ = [
    "ConfigError",
    "EngineError",
    "ParamError",
    "SUBCOMMANDS",
    "hilbert_ranks",
    "jacobi_sn",
    "job_seed",
    "run",
    "sigma_lambda",
    "theta",
    "theta1",
    "verify_pieri",
    "version",
    "wp",
]
