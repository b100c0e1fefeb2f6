"""Exact cone computations for movable cones of elliptic fibrations."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    ConfigError,
    Error,
    FlopError,
    __version__,
    apply_flops,
    chamber_graph,
    covering,
    family,
    family_ids,
    family_json,
    nef_rays,
    sequences,
)

__all__ = [
    "ConfigError",
    "Error",
    "FlopError",
    "__version__",
    "apply_flops",
    "chamber_graph",
    "cone_from_generators",
    "cone_from_inequalities",
    "covering",
    "family",
    "family_ids",
    "family_json",
    "nef_rays",
    "reduce",
    "sequences",
    "verify",
]


def _wire(values):
    return [[str(Fraction(x)) for x in row] for row in values]


def _ints(rows):
    return [[int(x) for x in row] for row in rows]


def _cone(d):
    return {key: (_ints(val) if isinstance(val, list) else val) for key, val in d.items()}


def cone_from_generators(generators, dim):
    """Canonical cone spanned by rational generators (ints, Fractions or "p/q")."""
    return _cone(_core.cone_from_generators(_wire(generators), dim))


def cone_from_inequalities(inequalities, dim):
    """Canonical cone {x : a.x >= 0 for every row a}."""
    return _cone(_core.cone_from_inequalities(_wire(inequalities), dim))


def reduce(family_id, coords, sections=False):
    """Reduce a class into the fundamental domain.

    coords is (f, a_2, ..., a_k) in the chart, or S_1..S_k coordinates when
    sections is true.
    """
    d = _core.reduce(family_id, [str(Fraction(x)) for x in coords], sections)
    d["translation"] = [int(x) for x in d["translation"]]
    d["reduced"] = [Fraction(x) for x in d["reduced"]]
    d["chart"] = [Fraction(x) for x in d["chart"]]
    return d


def verify(families=None, seed=None, radius=0, samples=1000):
    """Run the verification pipeline and return the parsed JSON report."""
    ids = list(families) if families else list(family_ids())
    kwargs = {"radius": radius, "samples": samples}
    if seed is not None:
        kwargs["seed"] = seed
    return json.loads(_core.verify_json(ids, **kwargs))
