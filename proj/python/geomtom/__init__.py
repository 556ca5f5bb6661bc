"""Numerical geometric tomography: isotropy, sections, and symmetry groups.

Bodies and groups are JSON specs, passed as dicts or strings::

    geomtom.body_isotropy({"kind": "ellipsoid", "axes": [1, 1, 2]})
"""

import json as _json

from _geomtom import (
    b_functional,
    b_functional_moment,
    calibrate,
    body_isotropy,
    centroid_body_support,
    equator_isotropy_scan,
    group_info,
    mean_width_functional,
    sphere_area,
    theorem_chain,
)

_SPEC_FUNCS = (
    "b_functional",
    "b_functional_moment",
    "body_isotropy",
    "centroid_body_support",
    "equator_isotropy_scan",
    "group_info",
    "mean_width_functional",
    "theorem_chain",
)


def _accept_dict_specs(func):
    def wrapper(spec, *args, **kwargs):
        if isinstance(spec, dict):
            spec = _json.dumps(spec)
        return func(spec, *args, **kwargs)

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper


for _name in _SPEC_FUNCS:
    globals()[_name] = _accept_dict_specs(globals()[_name])

__all__ = ["calibrate", "sphere_area", *_SPEC_FUNCS]
