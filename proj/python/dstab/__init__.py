"""Exact D-stability certification for rational matrices.

Thin wrapper over the native extension: structured results cross the
boundary as canonical JSON and are decoded here.
"""

import json

try:
    from ._dstab import (
        DimensionError,
        ParseError,
        __version__,
        digest,
        replay,
    )
    from ._dstab import check as _check
    from ._dstab import oracle as _oracle
    from ._dstab import sweep as _sweep
except ImportError:  # extension on sys.path directly (build-tree layout)
    from _dstab import (
        DimensionError,
        ParseError,
        __version__,
        digest,
        replay,
    )
    from _dstab import check as _check
    from _dstab import oracle as _oracle
    from _dstab import sweep as _sweep

__all__ = [
    "DimensionError",
    "ParseError",
    "__version__",
    "check",
    "check_json",
    "digest",
    "oracle",
    "oracle_json",
    "replay",
    "sweep",
]


def check(document, pivot_chain=None, all_chains=False, assume_level=0):
    """Certify a concrete matrix document (JSON or CSV text).

    Returns the report as a dict; ``report["certificate"]["kind"]`` is one of
    ``d_stable``, ``not_stable``, ``necessary_failed`` or ``inconclusive``.
    """
    return json.loads(check_json(document, pivot_chain, all_chains, assume_level))


def check_json(document, pivot_chain=None, all_chains=False, assume_level=0):
    """Same as :func:`check` but returns the canonical JSON string."""
    return _check(document, pivot_chain, all_chains, assume_level)


def oracle(document, trials=10000, seed=0):
    """Search for a positive diagonal scaling that destabilizes the matrix.

    Returns the report as a dict; ``report["oracle"]["found"]`` is ``None``
    when no counterexample turned up.
    """
    return json.loads(oracle_json(document, trials, seed))


def oracle_json(document, trials=10000, seed=0):
    """Same as :func:`oracle` but returns the canonical JSON string."""
    return _oracle(document, trials, seed)


def sweep(document, params, oracle_trials=0, seed=0):
    """Evaluate a parametric template over a rational grid; returns CSV text.

    ``params`` is a list of ``NAME=MIN:MAX:STEP`` axes and ``NAME=EXPR``
    derived values, as accepted by the command-line tool.
    """
    return _sweep(document, list(params), oracle_trials, seed)
