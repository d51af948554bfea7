from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minkpot.adscalar import sin
from minkpot.errors import OutOfDomain
from minkpot.geometry import (
    BASIS_LABELS,
    CovectorFieldInstance,
    PoincareGenerator,
    TwoFormField,
    bracket,
    closedness_residual,
    exterior_derivative,
    exterior_field,
    format_generator,
    generator_value,
    lie_derivative_covector,
    lie_derivative_twoform,
    parse_generator,
)

BASIS = [PoincareGenerator.basis(lb) for lb in BASIS_LABELS]
coeffs = st.lists(st.floats(-3, 3, allow_nan=False), min_size=10, max_size=10)


def test_generator_vector_fields():
    x = np.array([1.0, 2.0, 3.0, 4.0])
    expected = {
        "e1": [1, 0, 0, 0], "e4": [0, 0, 0, 1],
        "e12": [-2, 1, 0, 0], "e13": [3, 0, -1, 0], "e23": [0, -3, 2, 0],
        "e14": [4, 0, 0, 1], "e24": [0, 4, 0, 2], "e34": [0, 0, 4, 3],
    }
    for lb, v in expected.items():
        assert np.array_equal(generator_value(parse_generator(lb), x), v), lb


def test_parse_and_format_roundtrip():
    g = parse_generator("e12-e14+λe3", {"lambda": 2.5})
    assert format_generator(g) == "2.5e3+e12-e14"
    assert parse_generator(format_generator(g)) == g
    assert parse_generator("e13+λe24").is_zero() is False
    with pytest.raises(ValueError):
        parse_generator("e15")
    with pytest.raises(ValueError):
        parse_generator("x1+e2")


@given(coeffs)
def test_parse_format_inverse(c):
    g = PoincareGenerator.from_coefficients(np.round(c, 3))
    assert np.allclose(parse_generator(format_generator(g)).coefficients, g.coefficients)


def test_structure_constants():
    e = {lb: PoincareGenerator.basis(lb) for lb in BASIS_LABELS}
    # rotations in the spatial planes close among themselves, translations commute
    assert not bracket(e["e1"], e["e2"]).coefficients.any()
    for a, b in [("e12", "e13"), ("e12", "e23"), ("e13", "e23")]:
        c = bracket(e[a], e[b]).coefficients
        assert np.count_nonzero(c) == 1 and np.flatnonzero(c)[0] >= 4
    # a rotation moves translations within its plane
    assert np.count_nonzero(bracket(e["e12"], e["e1"]).coefficients[:4]) == 1


def test_bracket_matches_vector_field_commutator():
    rng = np.random.default_rng(3)
    g1 = PoincareGenerator.from_coefficients(rng.normal(size=10))
    g2 = PoincareGenerator.from_coefficients(rng.normal(size=10))
    x = rng.normal(size=4)
    h = 1e-6
    def dir_deriv(f, v):
        return (f(x + h * v) - f(x - h * v)) / (2 * h)
    xi = lambda y: generator_value(g1, y)  # noqa: E731
    eta = lambda y: generator_value(g2, y)  # noqa: E731
    want = dir_deriv(eta, xi(x)) - dir_deriv(xi, eta(x))
    assert np.allclose(generator_value(bracket(g1, g2), x), want, atol=1e-8)


def test_jacobi_identity_exact_on_basis():
    for a, b, c in itertools.combinations(BASIS, 3):
        s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        assert s.is_zero()


@given(coeffs, coeffs)
def test_bracket_antisymmetric(c1, c2):
    g1, g2 = PoincareGenerator.from_coefficients(c1), PoincareGenerator.from_coefficients(c2)
    assert np.allclose(bracket(g1, g2).coefficients, -bracket(g2, g1).coefficients, atol=1e-9)


def _rotational_potential():
    # A = f(r^2) dt is invariant under spatial rotations and time translation
    return CovectorFieldInstance(lambda X: [0.0, 0.0, 0.0, sin(X[0] * X[0] + X[1] * X[1] + X[2] * X[2])])


def test_lie_derivative_vanishes_for_symmetry():
    A = _rotational_potential()
    x = np.random.default_rng(0).uniform(-2, 2, size=(30, 4))
    for lb in ["e12", "e13", "e23", "e4"]:
        assert np.max(np.abs(lie_derivative_covector(A, parse_generator(lb), x))) < 1e-12
    assert np.max(np.abs(lie_derivative_covector(A, parse_generator("e1"), x))) > 1e-3


def test_lie_derivative_of_constant_covector_under_boost():
    A = CovectorFieldInstance(lambda X: [0.0, 0.0, 0.0, 1.0])
    x = np.zeros((1, 4))
    L = lie_derivative_covector(A, parse_generator("e14"), x)
    # L_xi A_i = A_j d_i xi^j ; with xi = (x4, 0, 0, x1), d_1 xi^4 = 1
    assert np.allclose(L[0], [1.0, 0.0, 0.0, 0.0])


def test_exterior_derivative_is_closed_and_antisymmetric():
    A = CovectorFieldInstance(lambda X: [X[1] * X[3], sin(X[0]) * X[2], X[0] * X[0], X[1] * X[2] * X[3]])
    x = np.random.default_rng(1).normal(size=(20, 4))
    F = exterior_derivative(A, x)
    assert np.allclose(F, -np.swapaxes(F, -1, -2))
    assert F[0, 0, 1] == pytest.approx(np.cos(x[0, 0]) * x[0, 2] - x[0, 3])
    assert np.max(np.abs(closedness_residual(A, x))) < 1e-12
    dF = exterior_field(A)
    assert np.allclose(dF(x), F)


def test_non_closed_twoform_is_detected():
    F = TwoFormField(lambda X: [X[2], 0.0, 0.0, 0.0, 0.0, 0.0])  # d_3 F_12 != 0
    x = np.random.default_rng(2).normal(size=(5, 4))
    assert np.max(np.abs(closedness_residual(F, x))) == pytest.approx(1.0)


def test_lie_derivative_twoform_uniform_field():
    F = TwoFormField(lambda X: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    x = np.zeros((1, 4))
    assert not np.any(lie_derivative_twoform(F, parse_generator("e12"), x))
    assert np.any(lie_derivative_twoform(F, parse_generator("e13"), x))


def test_domain_is_enforced():
    A = CovectorFieldInstance(lambda X: [X[0], 0.0, 0.0, 0.0], domain=lambda x: x[..., 0] > 0)
    with pytest.raises(OutOfDomain):
        A(np.array([-1.0, 0.0, 0.0, 0.0]))
    with pytest.raises(OutOfDomain):
        A(np.array([np.nan, 0.0, 0.0, 0.0]))
    assert A(np.array([1.0, 0.0, 0.0, 0.0]))[0] == 1.0
