"""Python bindings for the percolation laboratory."""

import json as _json

from ._perclab import (
    CapExceeded,
    __version__,
    chain_bound_exponents,
    count_open,
    covering_check,
    edge_count,
    fixed_point,
    has_h_crossing,
    has_v_crossing,
    normalize_region,
    one_dep_series,
    run_cli,
    sample,
    series_threshold,
)
from . import _perclab


def estimate(region, event, p, samples, seed, workers=1):
    """Monte Carlo estimate as a dict with the CSV schema's fields."""
    return _json.loads(_perclab.estimate_json(region, event, p, samples, seed, workers))


def exact(region, event, p="1/2", cap=22):
    """Exact counts by number of open edges, and the probability at rational p."""
    return _json.loads(_perclab.exact_json(region, event, p, cap))


def run(*args):
    """Run a CLI subcommand; returns (exit code, stdout, stderr)."""
    return run_cli([str(a) for a in args])
