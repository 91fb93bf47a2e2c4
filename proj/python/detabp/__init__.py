"""Exact conversions between determinantal representations and branching programs.

Thin dict-level wrappers over the compiled ``_core`` module, which speaks json
strings. Pencils and programs are plain dicts matching the file schemas used
by the command line tool.
"""

import json

from ._core import (
    convert as _convert,
    elem_sym as _elem_sym,
    eval_at as _eval_at,
    power_sum as _power_sum,
    random_hom as _random_hom,
    stats as _stats,
    to_pencil as _to_pencil,
    verify as _verify,
)

__all__ = [
    "power_sum",
    "elem_sym",
    "random_hom",
    "to_pencil",
    "convert",
    "verify",
    "stats",
    "eval_at",
]


def power_sum(n, d):
    """Program computing x_0^d + ... + x_{n-1}^d."""
    return json.loads(_power_sum(n, d))


def elem_sym(n, k):
    """Program computing the k-th elementary symmetric polynomial."""
    return json.loads(_elem_sym(n, k))


def random_hom(n, d, w, seed):
    """Seed-deterministic homogeneous program with d-1 width-w layers."""
    return json.loads(_random_hom(n, d, w, seed))


def to_pencil(abp):
    """Determinantal representation of a program computing f with f(0) = 0."""
    return json.loads(_to_pencil(json.dumps(abp)))


def convert(pencil, mode="auto", degree=None):
    """Pencil to program; returns (abp, report)."""
    out = json.loads(_convert(json.dumps(pencil), mode, degree))
    return out["abp"], out["report"]


def verify(a, b, trials=200, seed=1, symbolic=False):
    """Identity-test two pencil/program dicts; returns the verdict dict."""
    return json.loads(_verify(json.dumps(a), json.dumps(b), trials, seed, symbolic))


def stats(obj):
    """Resource measurements of a pencil or program dict."""
    return json.loads(_stats(json.dumps(obj)))


def eval_at(obj, point):
    """Evaluate at a point of scalar strings; pencils evaluate to their determinant."""
    return _eval_at(json.dumps(obj), [str(t) for t in point])
