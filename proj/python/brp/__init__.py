"""Branched rough paths with exact rational arithmetic."""

import json

from ._core import (
    ConversionError,
    IoError,
    ParseError,
    antipode,
    canonical,
    coproduct,
    exp_star,
    gamma_to_level,
    log_star,
    phi_g,
    psi,
    run_cli,
    star,
    synth_random_walk_csv,
)
from . import _core


def lift(csv, mode="canonical", gamma="1/2", N=0):
    return json.loads(_core.lift_json(csv, mode, gamma, N))


def encode(rough_path):
    text = rough_path if isinstance(rough_path, str) else json.dumps(rough_path)
    return json.loads(_core.encode_json(text))


def verify(suite="all", N=3, d=2):
    return json.loads(_core.verify(suite, N, d))


__all__ = [
    "ConversionError", "IoError", "ParseError", "antipode", "canonical", "coproduct", "encode",
    "exp_star", "gamma_to_level", "lift", "log_star", "phi_g", "psi", "run_cli", "star",
    "synth_random_walk_csv", "verify",
]
