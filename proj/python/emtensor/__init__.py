"""Energy-momentum tensors of bundle-valued forms on model spaces."""

import json

from ._emtensor import (
    ModelSpace,
    UsageError,
    check_tags,
    example_info,
    examples,
    geometry_bounds,
    run_json,
    theta_profile,
)

__all__ = [
    "ModelSpace",
    "UsageError",
    "check_tags",
    "example_info",
    "examples",
    "geometry_bounds",
    "run",
    "run_json",
    "theta_profile",
]


def run(**config):
    """Run a suite; keyword arguments mirror the JSON configuration keys."""
    return json.loads(run_json(json.dumps(config)))
