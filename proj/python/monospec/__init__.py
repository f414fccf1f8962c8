"""Monomial matrix groups whose ring commutators have real spectra."""

import json

from . import _core

Error = _core.Error

__all__ = [
    "Error",
    "error_info",
    "j_cardinality",
    "j_plus",
    "verify",
    "commutators",
    "recover",
    "monomialize",
    "split",
    "spectrum",
    "run_cli",
]


def error_info(exc):
    """Returns the {"error", "message", "detail"} payload of a monospec.Error."""
    return json.loads(str(exc))


def _doc(value):
    return value if isinstance(value, str) else json.dumps(value)


def j_cardinality(n):
    rank_exponent, formula_exponent = _core.j_cardinality(n)
    return {"n": n, "rank_exponent": rank_exponent, "formula_exponent": formula_exponent}


def j_plus(n, enumerate=False):
    return json.loads(_core.j_plus(n, enumerate))


def verify(n, d=None, sample=None, seed=None):
    return json.loads(_core.verify(n, None if d is None else _doc(d), sample, seed))


def commutators(group, sample=None, seed=None):
    return json.loads(_core.commutators(_doc(group), sample, seed))


def recover(group):
    return json.loads(_core.recover(_doc(group)))


def monomialize(group):
    return json.loads(_core.monomialize(_doc(group)))


def split(group, x_order, y_order):
    return json.loads(_core.split(_doc(group), x_order, y_order))


def spectrum(document):
    return json.loads(_core.spectrum(_doc(document)))


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit_code, parsed output)."""
    code, out = _core.run_cli([str(a) for a in args])
    return code, json.loads(out)
