"""Exact computation of M(n, k, p), the largest probability that all n bits
are one under a k-wise independent distribution with Bernoulli(p) marginals."""

import json
from fractions import Fraction

from . import _kwise
from ._kwise import FormulaDomainError, OracleMismatch, ParameterError, TilingError

SCHEMA = _kwise.SCHEMA

__all__ = [
    "SCHEMA",
    "FormulaDomainError",
    "OracleMismatch",
    "ParameterError",
    "TilingError",
    "bonferroni",
    "distribution",
    "m_value",
    "piecewise",
    "run_cli",
    "simplex_value",
    "study",
    "verify",
]


def _text(p):
    if isinstance(p, float):
        raise TypeError("pass p as a Fraction, int or 'a/b' string, not a float")
    if isinstance(p, Fraction):
        return f"{p.numerator}/{p.denominator}"
    return str(p)


def m_value(n, k, p, mode="piecewise"):
    """M(n, k, p) as a Fraction. mode: 'piecewise', 'oracle' or 'checked'."""
    return Fraction(_kwise.m_value(n, k, _text(p), mode))


def simplex_value(n, k, p):
    """Optimum of the moment LP from the exact simplex oracle."""
    return Fraction(_kwise.simplex_value(n, k, _text(p)))


def piecewise(n, k, jobs=1):
    """Breakpoints and pieces of M(n, k, .) in the kwise/1 JSON layout."""
    return json.loads(_kwise.piecewise_json(n, k, jobs))


def distribution(n, k, p):
    """An optimal distribution at p; v and w as Fractions."""
    d = json.loads(_kwise.distribution_json(n, k, _text(p)))
    d["v"] = [Fraction(x) for x in d["v"]]
    d["w"] = [Fraction(x) for x in d["w"]]
    return d


def verify(n, k, theorems=("all",)):
    """Validator verdicts for the requested groups."""
    return json.loads(_kwise.verify_json(n, k, set(theorems)))


def study(n, k):
    """Realizable bases, transitions, exceptional points and conjecture verdicts."""
    return json.loads(_kwise.study_json(n, k))


def bonferroni(m, l):
    """Coefficients of B(m, l, x) in increasing degree."""
    return [Fraction(c) for c in _kwise.bonferroni(m, l)]


def run_cli(*args):
    """Runs the command-line interface in process; returns (code, stdout, stderr)."""
    return _kwise.run_cli([str(a) for a in args])
