"""Worked examples: named instances with closed-form field tensors."""
from __future__ import annotations

import numpy as np

from ..geometry import CovectorFieldInstance, TwoFormField, _antisym
from .registry import instantiate_maxwell, instantiate_potential
from .slots import Slot, constant_slot, polynomial_slot


def identity_slot(label: str = "phi") -> Slot:
    return polynomial_slot({(1,): 1.0}, label, 1)


def p319_example(phi: Slot | None = None, lam: float = 1.0) -> CovectorFieldInstance:
    """P3.19 with C1 = C2 = C3 = 0 and C4 = phi(y4); phi defaults to the identity."""
    phi = phi or identity_slot()
    zero = constant_slot(0.0, 1)
    return instantiate_potential("P3.19", {"lambda": lam}, {"C1": zero, "C2": zero, "C3": zero, "C4": phi})


def c319_example_closed_form(x, phi: Slot | None = None, lam: float = 1.0) -> np.ndarray:
    """Field tensor of the P3.19 example written directly in Galilean coordinates."""
    phi = phi or identity_slot()
    x = np.atleast_2d(np.asarray(x, dtype=float))
    x1, x2, x3, x4 = x.T
    s = x2 + x4
    f, df = phi.value_and_derivative(x1 * x1 + x2 * x2 + x3 * x3 - x4 * x4)
    a = np.log(s) / lam
    sn, cs = np.sin(a), np.cos(a)
    F12 = -((2 * x1 * x1 * df + f) / s + 2 * x2 * df) * sn - (2 * lam * x1 * x3 * df + f) / (lam * s) * cs
    F13 = 2 * df * (x1 * cs - x3 * sn)
    F14 = F12 + 2 * s * df * sn
    F23 = ((2 * x3 * x3 * df + f) / s + 2 * x2 * df) * cs + (2 * lam * x1 * x3 * df - f) / (lam * s) * sn
    F24 = -2 * df * (x1 * sn + x3 * cs)
    F34 = -F23 + 2 * s * df * cs
    return _antisym(np.stack([F12, F13, F14, F23, F24, F34], axis=-1))


def c416_example(K: float = 1.0, lam: float = 1.0) -> TwoFormField:
    """C4.16 with Phi2 = 0."""
    return instantiate_maxwell("C4.16", {"lambda": lam, "K": K}, {"Phi2": constant_slot(0.0, 1), "I2": constant_slot(0.0, 1)})


def c416_example_closed_form(x, K: float = 1.0, lam: float = 1.0) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    x1, x2, x3, x4 = x.T
    s = x2 + x4
    D = s * s + lam * lam
    F12 = -K * (lam * x1 + s * x3) / D**2
    F23 = K * (lam * x3 - x1 * s) / D**2
    z = np.zeros_like(s)
    return _antisym(np.stack([F12, K / D, F12, F23, z, -F23], axis=-1))


def example_slots(cid: str) -> dict[str, Slot]:
    """Slots of the worked example attached to a class (named preset ``"example"``)."""
    zero = constant_slot(0.0, 1)
    if str(cid) == "P3.19":
        return {"C1": zero, "C2": zero, "C3": zero, "C4": identity_slot("C4")}
    if str(cid) == "C4.16":
        return {"Phi2": zero, "I2": zero}
    raise KeyError(f"no example preset for {cid}")


PRESETS = {
    "P3.19 example": p319_example,
    "C4.16 example": c416_example,
}
