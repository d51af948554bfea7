from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from minkpot.adscalar import sin
from minkpot.catalog import generators_of, get_entry, random_instance
from minkpot.errors import DomainTooThin, InsufficientPoints, NotMarkedEmpty
from minkpot.geometry import CovectorFieldInstance, TwoFormField, parse_generator
from minkpot.verify import (
    VerificationReport,
    appendix_crosscheck,
    certify_emptiness,
    detect_symmetry_algebra,
    detected_dimension,
    finite_difference_oracle,
    invariance_residual,
    sample_domain,
    verify_class,
)


def pts(n=40, seed=0):
    return np.random.default_rng(seed).uniform(-2, 2, size=(n, 4))


def test_sampling_respects_domain_and_seed():
    e = get_entry("P5.7")
    x = sample_domain(e, 50, 3, {"B": 1.0, "C": 0.0})
    assert x.shape == (50, 4) and np.all(x[:, 1] + x[:, 3] > 0)
    assert np.array_equal(x, sample_domain(e, 50, 3, {"B": 1.0, "C": 0.0}))


def test_thin_domain_is_reported():
    e = get_entry("P5.7")
    thin = dataclasses.replace(e, extra_domain=lambda x, p: np.abs(x[..., 0] - 0.123) < 1e-12)
    with pytest.raises(DomainTooThin):
        sample_domain(thin, 10, 0, {"B": 1.0, "C": 0.0})


def test_verify_class_passes_and_records_generators():
    r = verify_class("P3.20", seed=1)
    assert r.passed and r.max_residual <= 1e-9 and r.n_points == 300
    assert [g for g, _ in r.per_generator] == list(get_entry("P3.20").generators)
    d = r.to_dict()
    assert d["pass"] is True and "passed" not in d


def test_verify_class_skips_empty():
    r = verify_class("P6.1")
    assert r.status == "SKIP(EMPTY)" and r.passed


def test_broken_field_fails_invariance():
    # a rotation-invariant potential spoiled by an x1 term
    A = CovectorFieldInstance(lambda X: [0.0, 0.0, 0.0, sin(X[0] * X[0] + X[1] * X[1]) + X[0] * 1e-3])
    res, per = invariance_residual(A, [parse_generator("e12")], pts())
    assert res > 1e-6


def test_detector_sanity():
    zero = TwoFormField(lambda X: [0.0] * 6)
    assert detect_symmetry_algebra(zero, pts()).dim == 10
    const = CovectorFieldInstance(lambda X: [0.0, 0.0, 0.0, 1.0])
    sb = detect_symmetry_algebra(const, pts())
    assert sb.dim == 7
    for lb in ["e1", "e2", "e3", "e4", "e12", "e13", "e23"]:
        assert sb.contains(parse_generator(lb)) < 1e-8
    with pytest.raises(InsufficientPoints):
        detect_symmetry_algebra(const, pts(3))


def test_detector_scale_invariance():
    A, p = random_instance("P4.20", seed=4)
    x = sample_domain(get_entry("P4.20"), 40, 4, p)
    b1 = detect_symmetry_algebra(A, x).coefficients()
    b2 = detect_symmetry_algebra(A.scaled(-37.5), x).coefficients()
    assert b1.shape == b2.shape
    # equal subspaces: projections agree
    assert np.allclose(b1.T @ b1, b2.T @ b2, atol=1e-8)


@pytest.mark.parametrize("cid", ["P2.1a", "P3.19", "P4.13", "P5.8", "C4.16"])
def test_detected_span_contains_class_algebra(cid):
    field, p = random_instance(cid, seed=9)
    x = sample_domain(get_entry(cid), 40, 9, p)
    sb = detect_symmetry_algebra(field, x)
    gens = generators_of(cid, p)
    assert sb.dim >= len(gens)
    assert all(sb.contains(g) <= 1e-6 for g in gens)


def test_emptiness_certificates():
    for cid in ["P5.2", "P6.1", "P6.2"]:
        assert certify_emptiness(cid, trials=20, seed=3)
    with pytest.raises(NotMarkedEmpty):
        certify_emptiness("P6.3")


def test_finite_difference_oracle_matches_jets():
    A, p = random_instance("P2.3", seed=2)
    x = sample_domain(get_entry("P2.3"), 1, 2, p)[0]
    d1, d2 = finite_difference_oracle(A, x)
    ev = A.evaluate(x)
    assert np.allclose(ev.dA[0], d1, rtol=1e-6, atol=1e-7)
    assert np.allclose(ev.ddA[0], d2, rtol=1e-4, atol=1e-4)


def test_appendix_examples():
    r = appendix_crosscheck("C319_example")
    assert r.passed and r.max_residual <= 1e-9
    r = appendix_crosscheck("C416_example", K=2.0, lam=-0.5)
    assert r.passed and r.max_residual <= 1e-12
    with pytest.raises(ValueError):
        appendix_crosscheck("C999_example")


def test_genericity_counts():
    assert detected_dimension("C5.9") == 5
    assert detected_dimension("C6.7") == 6


def test_zero_field_is_flagged():
    r = verify_class("C6.5", params={"lambda": 0.0}, slots={})
    assert r.note == "ZERO-FIELD" and r.status == "ZERO-FIELD"


def test_report_status():
    assert VerificationReport("X", 1, 1.0).status == "FAIL"
    assert VerificationReport("X", 1, 0.0, passed=True).status == "PASS"
