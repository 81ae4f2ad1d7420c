"""Random interlaced height fields: exact samplers, the finite-N kernel, the limit
surface and Airy-edge statistics."""

import json
from fractions import Fraction

from . import _dsos
from ._dsos import *  # noqa: F401,F403
from ._dsos import __version__


def normalization_constant(n):
    num, den = _dsos.normalization_constant(n)
    return Fraction(int(num), int(den))


def run_experiment(spec):
    """Run an experiment from a dict spec and return the manifest as a dict."""
    return json.loads(_dsos.run_experiment(json.dumps(spec)))
