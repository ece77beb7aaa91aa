"""Exact verification of algebra in twisted graded categories."""

import json

from ._core import (
    InputError,
    canonical_rational,
    is_field_object,
    pentagon,
    run,
    transition,
)
from . import _core


def evaluate(command, input=None, sub="", seed=1, samples=None):
    """Run a command on a definition (dict) and return the report as a dict."""
    text = json.dumps(input if input is not None else {})
    return json.loads(_core.evaluate(command, sub, text, seed, samples))


def octonion_suite(seed=1, samples=200):
    return json.loads(_core.octonion_suite(seed, samples))


__all__ = [
    "InputError",
    "canonical_rational",
    "evaluate",
    "is_field_object",
    "octonion_suite",
    "pentagon",
    "run",
    "transition",
]
