"""Function slots: the arbitrary functions that parameterise each class."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import adscalar as ad
from ..adscalar import Jet2
from ..errors import ArityMismatch


@dataclass(frozen=True)
class SlotSpec:
    label: str
    arity: int  # 0 marks a constant
    args: str = ""
    when: str | None = None  # restrict to a parameter branch: "eq0" or "ne0"


@dataclass(frozen=True)
class Slot:
    """A smooth function of ``arity`` jets built from adscalar operations."""

    arity: int
    impl: Callable = field(repr=False)
    label: str = ""

    def __call__(self, *args) -> Jet2:
        if len(args) != self.arity:
            raise ArityMismatch(f"slot {self.label or '?'} takes {self.arity} arguments, got {len(args)}")
        shape = args[0].shape if isinstance(args[0], Jet2) else np.shape(args[0])
        out = self.impl(*args)
        return out if isinstance(out, Jet2) else Jet2.constant(out, shape)

    def value_and_derivative(self, t) -> tuple[np.ndarray, np.ndarray]:
        """Value and derivative of a one-argument slot at the array ``t``."""
        if self.arity != 1:
            raise ArityMismatch("value_and_derivative needs a one-argument slot")
        t = np.asarray(t, dtype=float)
        grad = np.zeros(t.shape + (4,))
        grad[..., 0] = 1.0
        j = self(Jet2(t, grad, np.zeros(t.shape + (4, 4))))
        return j.val, j.grad[..., 0]


def monomials(arity: int, degree: int = 3) -> list[tuple[int, ...]]:
    return [e for e in itertools.product(range(degree + 1), repeat=arity) if sum(e) <= degree]


def _poly_impl(coeffs: dict[tuple[int, ...], float]):
    items = [(e, c) for e, c in sorted(coeffs.items()) if c != 0]
    top = max((max(e) for e, _ in items), default=0)

    def impl(*args):
        shape = args[0].shape
        powers = []
        for a in args:
            pw = [None, a]
            for k in range(2, top + 1):
                pw.append(pw[-1] * a)
            powers.append(pw)
        acc = Jet2.constant(0.0, shape)
        for e, c in items:
            term = None
            for var, k in enumerate(e):
                if k:
                    term = powers[var][k] if term is None else term * powers[var][k]
            acc = acc + (c if term is None else term * c)
        return acc

    return impl


def polynomial_slot(coeffs: dict[tuple[int, ...], float], label: str = "", arity: int | None = None) -> Slot:
    if arity is None:
        if not coeffs:
            raise ArityMismatch("cannot infer arity of an empty polynomial")
        arity = len(next(iter(coeffs)))
    for e in coeffs:
        if len(e) != arity or any(k < 0 for k in e):
            raise ArityMismatch(f"monomial {e} does not match arity {arity}")
    slot = Slot(arity, _poly_impl(dict(coeffs)), label)
    object.__setattr__(slot, "coeffs", dict(coeffs))
    return slot


def slot_from_table(table: dict, arity: int, label: str = "") -> Slot:
    """Parse ``{"2,0": 1.0, "0,1": 1.0}`` style tables (exponent tuple -> coefficient)."""
    coeffs = {}
    for key, val in table.items():
        try:
            e = tuple(int(t) for t in str(key).replace(" ", "").split(",")) if str(key) else ()
        except ValueError:
            raise ValueError(f"bad monomial key {key!r} for slot {label}") from None
        if len(e) != arity:
            raise ArityMismatch(f"slot {label} has arity {arity}; monomial key {key!r} has {len(e)} exponents")
        if any(k < 0 for k in e):
            raise ValueError(f"negative exponent in {key!r}")
        coeffs[e] = coeffs.get(e, 0.0) + float(val)
    return polynomial_slot(coeffs, label, arity)


def constant_slot(c: float, arity: int, label: str = "") -> Slot:
    return polynomial_slot({(0,) * arity: float(c)}, label, arity)


def random_polynomial(rng: np.random.Generator, arity: int, label: str = "", degree: int = 3) -> Slot:
    mons = monomials(arity, degree)
    c = rng.uniform(-1.0, 1.0, size=len(mons))
    return polynomial_slot(dict(zip(mons, c)), label, arity)


def random_elementary(rng: np.random.Generator, arity: int, label: str = "", fn: str = "sin") -> Slot:
    """``fn(b0 + b . args)`` with coefficients uniform in [-1, 1]."""
    b = rng.uniform(-1.0, 1.0, size=arity + 1)
    f = ad.ELEMENTARY[fn]

    def impl(*args):
        acc = args[0] * b[1] + b[0]
        for k in range(1, arity):
            acc = acc + args[k] * b[k + 1]
        return f(acc)

    return Slot(arity, impl, label)


def poly1d_antiderivative(coeffs: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyint(coeffs)


def poly1d_slot(coeffs, label: str = "") -> Slot:
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
    return polynomial_slot({(k,): float(c) for k, c in enumerate(coeffs)}, label, 1)
