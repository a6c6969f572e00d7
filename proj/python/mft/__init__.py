"""Python face of the matrix field theory toolkit.

Structured results come out of the extension as JSON text; this wrapper
decodes them so callers get plain dicts and lists with exact rationals
kept as strings.
"""

import json as _json

from _mft import (  # noqa: F401
    BudgetError,
    ConsistencyError,
    DomainError,
    ToleranceError,
    catalan_count,
    catalan_verify,
    cubic_c_series,
    cubic_lambda_critical,
    cubic_one_point,
    cubic_solve_c,
    dilog,
    hyp2f1,
    loop_equation_zero,
    moyal4_fredholm_residual,
    moyal4_g2,
    moyal4_measure,
    moyal4_summary,
    n_point_from_w,
    quartic_two_point,
)
import _mft as _ext

__all__ = [
    "BudgetError",
    "ConsistencyError",
    "DomainError",
    "ToleranceError",
    "catalan_count",
    "catalan_verify",
    "correlation",
    "cubic_c_series",
    "cubic_lambda_critical",
    "cubic_one_point",
    "cubic_solve_c",
    "dilog",
    "expand_planar",
    "free_energy",
    "hyp2f1",
    "intersection_numbers",
    "loop_equation_zero",
    "moyal4_fredholm_residual",
    "moyal4_g2",
    "moyal4_measure",
    "moyal4_summary",
    "n_point_from_w",
    "quartic_two_point",
    "virasoro",
]


def free_energy(genus, route="both"):
    return _json.loads(_ext.free_energy_json(genus, route))


def intersection_numbers(genus):
    table = _json.loads(_ext.intersection_numbers_json(genus))
    return {entry["key"]: entry["value"] for entry in table["entries"]}


def correlation(genus, boundaries):
    return _json.loads(_ext.correlation_json(genus, boundaries))


def virasoro(n, order=3):
    return _json.loads(_ext.virasoro_json(n, order))


def expand_planar(n):
    return _json.loads(_ext.expand_planar_json(n))
