"""Tail bounds for normalized sums of independent centered random variables.

Thin wrapper over the C++ extension: descriptors are plain dicts in the same
schema the CLI configs use and are serialized to JSON at the boundary.
"""

import json as _json

try:
    from ._tailbound import *  # noqa: F401,F403
    from . import _tailbound as _ext
except ImportError:  # in-tree builds put the extension on PYTHONPATH
    from _tailbound import *  # noqa: F401,F403
    import _tailbound as _ext

__version__ = "0.1.0"


def rv(kind, label="", **params):
    """Random-variable descriptor, e.g. rv("gaussian", sigma=2.0)."""
    return {"kind": kind, "params": params, "label": label}


def space_lp(p):
    return {"space": "lp", "p": p}


def space_gls(**psi):
    return {"space": "gls", "psi": psi}


def space_bphi(**phi):
    return {"space": "bphi", "phi": phi}


def problem(members, n):
    return {"members": list(members), "n": n}


def _s(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def sample(spec, count, seed):
    return _ext.sample(_s(spec), count, seed)


def abs_moment(spec, p):
    return _ext.abs_moment(_s(spec), p)


def variance(spec):
    return _ext.variance(_s(spec))


def mgf(spec, lam):
    return _ext.mgf(_s(spec), lam)


def tail(spec, t):
    return _ext.tail(_s(spec), t)


def check_bernstein_condition(specs, nu, kappa_c, m_max):
    return _ext.check_bernstein_condition([_s(s) for s in specs], nu, kappa_c, m_max)


def nu_transform(phi, x):
    return _ext.nu_transform(_s(phi), x)


def h_star(psi, y):
    return _ext.h_star(_s(psi), y)


def lp_norm(spec, p):
    return _ext.lp_norm(_s(spec), p)


def space_norm(spec, space):
    return _ext.space_norm(_s(spec), _s(space))


def tail_characteristic(space, t):
    return _ext.tail_characteristic(_s(space), t)


def is_phi_conv(phi):
    return _ext.is_phi_conv(_s(phi))


def kappa_relative(prob, space):
    return _ext.kappa_relative(_s(prob), _s(space))


def modified_tail_bound(prob, space_x, space_y, u_const, t_grid):
    return _ext.modified_tail_bound(_s(prob), _s(space_x), _s(space_y), u_const, list(t_grid))


def psi_envelope(prob, p_grid):
    return _ext.psi_envelope(_s(prob), list(p_grid))


def simulate_sn(prob, reps, seed, maximal=False, threads=1):
    return _ext.simulate_sn(_s(prob), reps, seed, maximal, threads)


def empirical_tail(samples, t_grid, delta):
    return _ext.empirical_tail(list(samples), list(t_grid), delta)


def estimate_tail_exponent(samples, t_lo, t_hi, grid_points=25):
    return _ext.estimate_tail_exponent(list(samples), t_lo, t_hi, grid_points)
