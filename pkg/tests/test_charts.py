from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkpot.adscalar import seed_coordinates
from minkpot.charts import CHARTS, SAMPLE_PARAMS, get_chart, rectification_residual
from minkpot.errors import OutOfDomain

CASES = [(name, p) for name, plist in SAMPLE_PARAMS.items() for p in plist]


@pytest.mark.parametrize("name,params", CASES)
def test_roundtrips(name, params):
    c = get_chart(name, **params)
    rng = np.random.default_rng(7)
    u = c.sample_adapted(rng, 1000)
    x = c.forward(u)
    assert np.max(np.abs(c.inverse(x) - u) / (1 + np.abs(u))) <= 1e-10
    assert np.max(np.abs(c.forward(c.inverse(x)) - x) / (1 + np.abs(x))) <= 1e-10


@pytest.mark.parametrize("name,params", CASES)
def test_rectification(name, params):
    c = get_chart(name, **params)
    assert c.rectifies, "every chart straightens at least one generator"
    u = c.sample_adapted(np.random.default_rng(8), 200)
    assert rectification_residual(c, u) <= 1e-9


def test_all_charts_have_sample_params():
    assert set(SAMPLE_PARAMS) == set(CHARTS)


def test_inverse_outside_domain_raises():
    c = get_chart("null_pair")
    with pytest.raises(OutOfDomain):
        c.inverse(np.array([[0.0, -1.0, 0.0, -1.0]]))


def test_unknown_chart():
    with pytest.raises(KeyError):
        get_chart("spherical")


def test_jets_pass_through_charts():
    c = get_chart("elliptic", lam=0.7, mu=0.0)
    x = np.array([[0.5, 0.8, -0.3, 1.2]])
    U = c.inverse_raw(seed_coordinates(x))
    # gradient of the adapted coordinates equals the inverse of the forward jacobian
    G = np.stack([u.grad[0] for u in U])
    J = c.forward_jacobian(c.inverse(x))[0]
    assert np.allclose(G @ J, np.eye(4), atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_null_pair_roundtrip_property(s, a, b, c):
    ch = get_chart("null_pair")
    x = np.array([[a, b + 0.5 * s, c, 0.5 * s - b]])  # x2 + x4 = s > 0
    assert np.allclose(ch.forward(ch.inverse(x)), x, rtol=1e-10, atol=1e-10)
