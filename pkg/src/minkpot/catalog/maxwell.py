"""Maxwell classes C<dim>.<index>: closed invariant 2-forms.

Builders return the six components (F12, F13, F14, F23, F24, F34).
"""
from __future__ import annotations

import numpy as np

from ..charts import MARGIN, cos, ln, sin
from ..errors import SlotRelationViolation
from .potentials import _consts, _interval, _s, _slots, entry
from .registry import register, s_positive
from .slots import Slot, poly1d_slot, random_elementary

RELATION_TOL = 1e-8
RELATION_GRID = np.linspace(-3.0, 3.0, 41)


# ---------------------------------------------------------------- C3.19

def c319_relations(lam: float, s: dict, t=RELATION_GRID) -> tuple[float, float]:
    """Residuals of the derivative relations tying Phi3, Phi4 to Phi1, Phi2 (scaled)."""
    f1, d1 = s["Phi1"].value_and_derivative(t)
    f2, d2 = s["Phi2"].value_and_derivative(t)
    _, d3 = s["Phi3"].value_and_derivative(t)
    _, d4 = s["Phi4"].value_and_derivative(t)
    rhs3 = f1 / (2 * lam) - 0.5 * t * d2 - f2
    rhs4 = f2 / (2 * lam) + 0.5 * t * d1 + f1
    r3 = np.max(np.abs(d3 - rhs3)) / (1.0 + np.max(np.abs(rhs3)))
    r4 = np.max(np.abs(d4 - rhs4)) / (1.0 + np.max(np.abs(rhs4)))
    return float(r3), float(r4)


def _c319_validate(p, s):
    r3, r4 = c319_relations(p["lambda"], s)
    if r3 > RELATION_TOL or r4 > RELATION_TOL:
        raise SlotRelationViolation(
            f"C3.19: Phi3/Phi4 do not satisfy their derivative relations (residuals {r3:.2e}, {r4:.2e})")


def c319_completion(lam: float, c1, c2, k3: float = 0.0, k4: float = 0.0):
    """Polynomial coefficients of Phi3, Phi4 for polynomial Phi1, Phi2 (integration constants k3, k4)."""
    P = np.polynomial.polynomial
    c1 = np.atleast_1d(np.asarray(c1, dtype=float))
    c2 = np.atleast_1d(np.asarray(c2, dtype=float))
    rhs3 = P.polysub(P.polysub(c1 / (2 * lam), 0.5 * P.polymulx(P.polyder(c2))), c2)
    rhs4 = P.polyadd(P.polyadd(c2 / (2 * lam), 0.5 * P.polymulx(P.polyder(c1))), c1)
    return P.polyint(rhs3, k=k3), P.polyint(rhs4, k=k4)


def c319_slots(lam: float, c1, c2, c5, k3: float = 0.0, k4: float = 0.0) -> dict:
    c3, c4 = c319_completion(lam, c1, c2, k3, k4)
    return {"Phi1": poly1d_slot(c1, "Phi1"), "Phi2": poly1d_slot(c2, "Phi2"), "Phi3": poly1d_slot(c3, "Phi3"),
            "Phi4": poly1d_slot(c4, "Phi4"), "Phi5": poly1d_slot(c5, "Phi5")}


def _c319_draw(p, rng, family):
    c1, c2, c5 = (rng.uniform(-1.0, 1.0, size=4) for _ in range(3))
    k3, k4 = rng.uniform(-1.0, 1.0, size=2)
    out = c319_slots(p["lambda"], c1, c2, c5, k3, k4)
    if family != "poly":
        # Phi5 is unconstrained, so it can carry the elementary family
        out["Phi5"] = random_elementary(rng, 1, "Phi5", "sin")
    return out


def _c319(X, U, p, s):
    y1, y2, y3, y4 = U
    G1, G2, G3, G4, F5 = (s[f"Phi{k}"](y4) for k in (1, 2, 3, 4, 5))
    # the slot pairs (Phi1, Phi2) and (Phi3, Phi4) turn with the angle ln(y1)/lambda
    a = ln(y1) / p["lambda"]
    c, sn = cos(a), sin(a)
    F1, F2 = c * G1 + sn * G2, c * G2 - sn * G1
    F3, F4 = c * G3 + sn * G4, c * G4 - sn * G3
    F12 = -0.5 * y1 * F2 * (1.0 + y2 * y2 - y3 * y3) - y1 * y2 * y3 * F1 + F3 / y1 - y2 * F5
    F13 = y1 * (y2 * F1 - y3 * F2)
    F23 = -0.5 * y1 * F1 * (1.0 - y2 * y2 + y3 * y3) - y1 * y2 * y3 * F2 - F4 / y1 - y3 * F5
    F24 = y1 * (y2 * F2 + y3 * F1) + F5
    return F12, F13, F12 + y1 * F2, F23, F24, -F23 - y1 * F1


# ---------------------------------------------------------------- C4.16

def _c416_ok(x, p):
    u = x[..., 1] + x[..., 3]
    return u * u + p["lambda"] ** 2 >= MARGIN


def c416_relation(s: dict, t=RELATION_GRID) -> float:
    """Scaled residual of I2' = Phi2."""
    f2, _ = s["Phi2"].value_and_derivative(t)
    _, di = s["I2"].value_and_derivative(t)
    return float(np.max(np.abs(di - f2)) / (1.0 + np.max(np.abs(f2))))


def _c416_validate(p, s):
    r = c416_relation(s)
    if r > RELATION_TOL:
        raise SlotRelationViolation(f"C4.16: I2 is not an antiderivative of Phi2 (residual {r:.2e})")


def c416_slots(c2, k: float = 0.0) -> dict:
    c2 = np.atleast_1d(np.asarray(c2, dtype=float))
    return {"Phi2": poly1d_slot(c2, "Phi2"), "I2": poly1d_slot(np.polynomial.polynomial.polyint(c2, k=k), "I2")}


def _c416_draw(p, rng, family):
    if family == "poly":
        return c416_slots(rng.uniform(-1.0, 1.0, size=4), rng.uniform(-1.0, 1.0))
    b0, b1 = rng.uniform(-1.0, 1.0), rng.uniform(0.25, 1.0)
    return {"Phi2": Slot(1, lambda u: sin(u * b1 + b0), "Phi2"),
            "I2": Slot(1, lambda u: cos(u * b1 + b0) * (-1.0 / b1), "I2")}


def _c416(X, U, p, s):
    x1, x2, x3, x4 = X
    L = p["lambda"]
    u = _s(X)
    D = u * u + L * L
    phi = (L * x1 + u * x3) / D
    psi = (L * x3 - x1 * u) / D
    F2 = s["Phi2"](u)
    F1 = (p["K"] + 2.0 * L * s["I2"](u)) / D
    F12 = -phi * F1 + psi * F2
    F23 = phi * F2 + psi * F1
    return F12, F1, F12, F23, -F2, -F23


# ---------------------------------------------------------------- C4.17 .. C6.7

def _c417(X, U, p, s):
    x1, x2, x3, x4 = X
    t = _s(X)
    a = ln(t) / p["lambda"]
    A, B, C = p["A"], p["B"], p["C"]
    F12 = (A * cos(a) + B * sin(a) + C * x1) / t
    F23 = (A * sin(a) - B * cos(a) - C * x3) / t
    return F12, 0.0, F12, F23, C, -F23


def _lightcone_form(Phi, X):
    x1, x2, x3, x4 = X
    t = _s(X)
    F12 = x1 * Phi / t
    F23 = -x3 * Phi / t
    return F12, 0.0, F12, F23, Phi, -F23


def _c420(X, U, p, s):
    return _lightcone_form(s["Phi"](_interval(X)), X)


def _c65(X, U, p, s):
    L = p["lambda"]
    if L == 0.0:
        return (0.0,) * 6
    a = _s(X) / L
    C1, C2 = p["C1"], p["C2"]
    F12 = C1 * sin(a) + C2 * cos(a)
    F23 = C2 * sin(a) - C1 * cos(a)
    return F12, 0.0, F12, F23, 0.0, -F23


def _c67(X, U, p, s):
    t = _s(X)
    a = ln(t) / p["lambda"]
    a1, a2 = p["a1"], p["a2"]
    Phi = (a1 * cos(a) - a2 * sin(a)) / t
    Psi = (a1 * sin(a) + a2 * cos(a)) / t
    return Phi, 0.0, Phi, Psi, 0.0, -Psi


_G319 = ["e12-e14", "e23+e34", "e13+λe24"]
_G416 = ["e12-e14+λe3", "e23+e34+λe1", "e13", "e2-e4"]

ENTRIES = [
    entry("C3.19", _G319, _c319, params="lambda:nonzero", slots=_slots("Phi1 Phi2 Phi3 Phi4 Phi5", 1, "y4"),
          chart="null_pair", validate=_c319_validate, default_slots=_c319_draw,
          statement="closed invariant 2-forms; genericity φ′≠0 gives exactly G3.19"),
    entry("C4.16", _G416, _c416, params="lambda", consts=_consts("K"), slots=_slots("Phi2 I2", 1, "x2+x4"),
          domain=_c416_ok, validate=_c416_validate, default_slots=_c416_draw, statement="closed invariant 2-forms; K≠0 gives exactly G4.16"),
    entry("C4.17", ["e12-e14", "e23+e34", "e13+λe24", "e2-e4"], _c417, params="lambda:nonzero",
          consts=_consts("A B C"), domain=s_positive,
          statement="closed invariant 2-forms; C≠0 and (A,B)≠0 gives exactly G4.17"),
    entry("C4.20", ["e12-e14", "e23+e34", "e13", "e24"], _c420, slots=_slots("Phi", 1, "x1²+x2²+x3²-x4²"),
          domain=s_positive, statement="closed invariant 2-forms; Φ′≠0 gives exactly G4.20"),
    entry("C5.9", ["e12-e14", "e23+e34", "e13", "e24", "e2-e4"], lambda X, U, p, s: _lightcone_form(p["C"], X),
          consts=_consts("C"), domain=s_positive, statement="closed invariant 2-forms; C≠0 gives exactly G5.9"),
    entry("C6.5", ["e12-e14", "e23+e34", "e13+λe2", "e1", "e3", "e2-e4"], _c65, params="lambda:branch",
          branch="lambda", consts=_consts("C1 C2", "ne0"),
          statement="closed invariant 2-forms; zero when λ=0"),
    entry("C6.7", ["e12-e14", "e23+e34", "e13+λe24", "e1", "e3", "e2-e4"], _c67, params="lambda:nonzero",
          consts=_consts("a1 a2"), domain=s_positive,
          statement="closed invariant 2-forms; (a1,a2)≠0 gives exactly G6.7"),
]

register(ENTRIES)

__all__ = ["c319_relations", "c319_completion", "c319_slots", "c416_relation", "c416_slots", "RELATION_TOL"]
