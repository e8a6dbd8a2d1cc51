"""Python access to the qkit simulator and its demos."""

import json

from ._qkit import *  # noqa: F401,F403
from ._qkit import DEFAULT_SEED, run_demo_json


def run_demo(name, seed=DEFAULT_SEED, trials=-1, dump_state=False, **params):
    """Run a demo and return its report as a dict. Parameters are passed as strings."""
    text = run_demo_json(name, {k: str(v) for k, v in params.items()}, seed, trials, dump_state)
    return json.loads(text)
