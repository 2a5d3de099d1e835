"""Stochastic Kronecker graphs: regime classification, spectra and sampling."""

import json
from fractions import Fraction

from . import _skg
from ._skg import DomainError, GuardError, ValidationError

__all__ = [
    "classify", "walk_spectrum", "mixing_steps", "rpd_delta", "kron_spectrum",
    "subcritical_delta", "sample", "sample_naive", "expected_edge_count",
    "component_stats", "sample_stats", "DomainError", "GuardError", "ValidationError",
]


def _exact(x):
    return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)


def _matrix_json(p):
    """Accepts a k x k nested sequence of numbers, strings like "1/2", or Fractions."""
    rows = [list(r) for r in p]
    k = len(rows)
    exact = any(isinstance(x, (str, Fraction)) for r in rows for x in r)
    doc = {"k": k, "entries": [[float(_exact(x)) if exact else float(x) for x in r] for r in rows]}
    if exact:
        doc["rational"] = [[str(_exact(x)) for x in r] for r in rows]
    return json.dumps(doc)


def classify(p, tol=1e-12):
    return json.loads(_skg.classify_json(_matrix_json(p), tol))


def walk_spectrum(p):
    return _skg.walk_spectrum(_matrix_json(p))


def mixing_steps(p, eps, literal_gap=False):
    return _skg.mixing_steps(_matrix_json(p), eps, literal_gap)


def rpd_delta(p, steps):
    return _skg.rpd_delta(_matrix_json(p), steps)


def kron_spectrum(p, t):
    """Distinct eigenvalues of the Kronecker power's Laplacian with integer multiplicities."""
    return [(v, int(m)) for v, m in _skg.kron_spectrum(_matrix_json(p), t)]


def subcritical_delta(p):
    return _skg.subcritical_delta(_matrix_json(p))


def sample(p, t, seed, workers=1):
    """Edges (u < v) as an (m, 2) uint64 array."""
    return _skg.sample(_matrix_json(p), t, seed, workers)


def sample_naive(p, t, seed):
    return _skg.sample_naive(_matrix_json(p), t, seed)


def expected_edge_count(p, t):
    return _skg.expected_edge_count(_matrix_json(p), t)


def component_stats(edges, n):
    return _skg.component_stats(edges, n)


def sample_stats(p, t, seed):
    """Component statistics of one sample, without materializing the edges."""
    return _skg.sample_stats(_matrix_json(p), t, seed)
