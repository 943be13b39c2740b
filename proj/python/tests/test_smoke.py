from fractions import Fraction

import pytest

import covmin
from covmin import Criterion, Estimator


def test_pmf_and_range():
    assert covmin.pmf("bernoulli", 10, "1/2", 5) == pytest.approx(0.24609375, abs=1e-15)
    assert covmin.prob_range("bernoulli", 10, 3, 7, "0.5") == pytest.approx(0.890625, abs=1e-15)
    assert covmin.pmf("poisson", 1, 1, 0) == pytest.approx(0.36787944117144233, rel=1e-15)
    assert set(covmin.family_names()) >= {"bernoulli", "poisson"}


def test_bounds():
    assert covmin.bounds_abs(10, "3/10", "1/2") == (3, 7)
    assert covmin.bounds_rel(12, "1/2", 1) == (7, 17)


def test_candidates_are_exact():
    result = covmin.candidates(10, Criterion.absolute("0.05"), "0.2", "0.8")
    assert [p["theta"] for p in result["points"]] == [
        Fraction(1, 5), Fraction(1, 4), Fraction(7, 20), Fraction(9, 20),
        Fraction(11, 20), Fraction(13, 20), Fraction(3, 4), Fraction(4, 5),
    ]
    assert result["rule"] == "absolute"
    assert result["cardinality_bound"] == 16


def test_min_coverage_and_oracle_agree():
    crit = Criterion.mixed("0.1", "0.3")
    est = Estimator.range_preserving("0.05", "0.9")
    report = covmin.min_coverage("bernoulli", 12, crit, "0.05", "0.9", est)
    value, argmin, scanned = covmin.grid_min_coverage(
        "bernoulli", 12, crit, "0.05", "0.9", "0.0017", est, include_candidates=True
    )
    assert abs(report["min_coverage"] - value) <= 5e-10
    assert scanned > 500
    theta = report["argmin_theta"]
    assert covmin.coverage("bernoulli", 12, crit, theta, est) == pytest.approx(
        covmin.indicator_coverage("bernoulli", 12, crit, theta, est), abs=1e-12
    )


def test_min_sample_size():
    result = covmin.min_sample_size("bernoulli", Criterion.absolute("0.1"), 0, 1, "0.05", trace=True)
    assert result["n_min"] == 101
    assert result["argmin_theta"] == Fraction(499, 1010)
    assert [t["n"] for t in result["trace"]] == list(range(2, 102))
    missing = covmin.min_sample_size("bernoulli", Criterion.absolute("0.01"), 0, 1, "0.05", n_max=10)
    assert missing["n_min"] is None and not missing["found"]


def test_errors():
    with pytest.raises(covmin.HypothesisError):
        covmin.candidates(2, Criterion.mixed("0.5", "0.25"), 0, 1)
    with pytest.raises(covmin.DomainError):
        covmin.min_coverage("bernoulli", 5, Criterion.absolute("0.1"), 0, 2)
    with pytest.raises(ValueError):
        Criterion.relative("1.5")
    with pytest.raises(TypeError):
        covmin.pmf("bernoulli", 3, 0.5, 1)


def test_factories_accept_exact_types():
    est = Estimator.range_preserving(1, Fraction(10))
    report = covmin.min_coverage("poisson", 40, Criterion.mixed("0.3", Fraction(1, 10)), 1, 10, est)
    assert 0.0 <= report["min_coverage"] <= 1.0
    assert 1 <= report["argmin_theta"] <= 10
    with pytest.raises(TypeError):
        Criterion.absolute(0.1)


def test_thread_count_roundtrip():
    saved = covmin.thread_count()
    covmin.set_thread_count(3)
    assert covmin.thread_count() == 3
    covmin.set_thread_count(saved)
