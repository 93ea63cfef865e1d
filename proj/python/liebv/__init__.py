"""Exact shifted Lie bialgebras, BV operators and Chevalley-Eilenberg cohomology."""

import json as _json

from ._liebv import *  # noqa: F401,F403
from ._liebv import run_scenario_json as _run_scenario_json

__version__ = version()  # noqa: F405


def run_scenario(kind, dims=(), n=0, theta=(), dim_w=0, order=0):
    """Run a scenario and return the parsed report."""
    text = _run_scenario_json(kind, list(dims), n, list(theta), dim_w, order)
    return _json.loads(text)
