"""Exact minimum sample sizes by finite candidate-set reduction.

Exact inputs (margins, interval ends, delta, theta) may be given as ``str``,
``int`` or ``fractions.Fraction``; floats are refused so that no value is
rounded through binary floating point. Exact outputs are ``Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational as _RationalNumber
from typing import Any

from . import _core
from ._core import Criterion, DomainError, Estimator, HypothesisError, family_names, set_thread_count, thread_count

__all__ = [
    "Criterion",
    "Estimator",
    "DomainError",
    "HypothesisError",
    "bounds_abs",
    "bounds_rel",
    "candidates",
    "coverage",
    "family_names",
    "grid_min_coverage",
    "indicator_coverage",
    "min_coverage",
    "min_sample_size",
    "pmf",
    "prob_range",
    "set_thread_count",
    "thread_count",
]


def _exact(value: Any) -> str:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact value expected (str, int or Fraction), got {value!r}")
    if isinstance(value, (str, int, _RationalNumber)):
        return str(value)
    raise TypeError(f"exact value expected (str, int or Fraction), got {type(value).__name__}")


def _decode(node: Any) -> Any:
    if isinstance(node, dict):
        if set(node) == {"exact", "float"}:
            return Fraction(node["exact"])
        return {key: _decode(value) for key, value in node.items()}
    if isinstance(node, list):
        return [_decode(item) for item in node]
    return node


def _estimator(estimator: Estimator | None) -> Estimator:
    return Estimator.unbiased() if estimator is None else estimator


def pmf(family: str, n: int, theta, k: int) -> float:
    return _core.pmf(family, n, _exact(theta), k)


def prob_range(family: str, n: int, k: int, l: int, theta) -> float:
    return _core.prob_range(family, n, k, l, _exact(theta))


def bounds_abs(n: int, eps, theta) -> tuple[int, int]:
    return _core.bounds_abs(n, _exact(eps), _exact(theta))


def bounds_rel(n: int, eps, theta) -> tuple[int, int]:
    return _core.bounds_rel(n, _exact(eps), _exact(theta))


def coverage(family: str, n: int, criterion: Criterion, theta, estimator: Estimator | None = None) -> float:
    return _core.coverage(family, n, criterion, _estimator(estimator), _exact(theta))


def indicator_coverage(family: str, n: int, criterion: Criterion, theta, estimator: Estimator | None = None) -> float:
    return _core.indicator_coverage(family, n, criterion, _estimator(estimator), _exact(theta))


def candidates(n: int, criterion: Criterion, a, b, estimator: Estimator | None = None) -> dict:
    """Candidate set with rule, provenance per point and the cardinality bound."""
    raw = json.loads(_core.candidates_json(n, criterion, _estimator(estimator), _exact(a), _exact(b)))
    points = [{"theta": Fraction(p["exact"]), "provenance": p["provenance"]} for p in raw["points"]]
    return {
        "rule": raw["rule"],
        "a": Fraction(raw["a"]),
        "b": Fraction(raw["b"]),
        "cardinality_bound": Fraction(raw["cardinality_bound"]),
        "points": points,
    }


def min_coverage(family: str, n: int, criterion: Criterion, a, b, estimator: Estimator | None = None) -> dict:
    raw = json.loads(_core.min_coverage_json(family, n, criterion, _estimator(estimator), _exact(a), _exact(b)))
    return {
        "n": raw["n"],
        "min_coverage": raw["min_coverage"],
        "argmin_theta": Fraction(raw["argmin_theta"]["exact"]),
        "evaluations": [(Fraction(e["exact"]), e["coverage"]) for e in raw["evaluations"]],
    }


def min_sample_size(
    family: str,
    criterion: Criterion,
    a,
    b,
    delta,
    estimator: Estimator | None = None,
    *,
    n_start: int = 2,
    n_max: int = 1_000_000,
    guard_band: bool = False,
    trace: bool = False,
) -> dict:
    """Smallest n in [n_start, n_max] whose worst-case coverage exceeds 1 - delta.

    ``n_min`` is ``None`` when no such n exists up to ``n_max``.
    """
    raw = json.loads(
        _core.min_sample_size_json(
            family, criterion, _estimator(estimator), _exact(a), _exact(b), _exact(delta), n_start, n_max,
            guard_band, trace,
        )
    )
    result = _decode(raw)
    if trace:
        for entry in result["trace"]:
            entry["argmin_theta"] = Fraction(entry["argmin_theta"])
    return result


def grid_min_coverage(
    family: str, n: int, criterion: Criterion, a, b, step, estimator: Estimator | None = None, *,
    include_candidates: bool = False,
) -> tuple[float, Fraction, int]:
    value, argmin, scanned = _core.grid_min_coverage(
        family, n, criterion, _estimator(estimator), _exact(a), _exact(b), _exact(step), include_candidates
    )
    return value, Fraction(argmin), scanned
