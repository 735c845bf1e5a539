"""Exact independence checks, independence-preserving extensions and seeded
limit-theorem runs on finite spaces."""

import json as _json

from ._indep import (
    IndepError,
    check_logical_independence,
    check_probabilistic_independence,
    example,
    extend,
    jordan,
    lindeberg_sum,
    roundtrip_problem,
    sigma_algebra_blocks,
)
from ._indep import run_problem as _run_problem

__all__ = [
    "IndepError",
    "check_logical_independence",
    "check_probabilistic_independence",
    "example",
    "extend",
    "jordan",
    "lindeberg_sum",
    "roundtrip_problem",
    "run",
    "sigma_algebra_blocks",
]


def run(text, threads=1):
    """Run a problem file given as text; returns (report dict, exit code)."""
    report, code = _run_problem(text, threads)
    return _json.loads(report), code
