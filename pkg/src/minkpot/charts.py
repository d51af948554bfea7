"""Adapted coordinate systems and their maps to and from Galilean coordinates.

Every chart works on plain arrays and on :class:`Jet2` tuples alike, so a
class formula written in adapted coordinates can be pulled back to Galilean
coordinates with its derivatives intact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import adscalar as ad
from .adscalar import Jet2
from .errors import OutOfDomain
from .geometry import PoincareGenerator, generator_value, parse_generator

MARGIN = 1e-3  # distance kept from singular surfaces when sampling


# -- scalar functions that accept arrays or jets -----------------------------

def _lift(jet_fn, np_fn):
    def f(a, *rest):
        if isinstance(a, Jet2) or any(isinstance(r, Jet2) for r in rest):
            return jet_fn(*(ad.as_jet(t, np.shape(getattr(a, "val", a))) for t in (a,) + rest))
        return np_fn(a, *rest)

    return f


sin = _lift(ad.sin, np.sin)
cos = _lift(ad.cos, np.cos)
sinh = _lift(ad.sinh, np.sinh)
cosh = _lift(ad.cosh, np.cosh)
exp = _lift(ad.exp, np.exp)
ln = _lift(ad.ln, np.log)
sqrt = _lift(ad.sqrt, np.sqrt)
atan2 = _lift(ad.atan2, np.arctan2)


def _split(p):
    p = np.asarray(p, dtype=float)
    return p[..., 0], p[..., 1], p[..., 2], p[..., 3]


# -- chart object -------------------------------------------------------------

@dataclass(frozen=True)
class Rectification:
    """``generator`` acts as ``factor * d/du[index]`` on functions that do not
    depend on the adapted coordinates listed in ``ignore``."""

    generator: PoincareGenerator
    index: int
    factor: float = 1.0
    ignore: tuple[int, ...] = ()


@dataclass(frozen=True)
class Chart:
    id: str
    coords: tuple[str, str, str, str]
    params: dict
    fwd: Callable = field(repr=False)
    inv: Callable = field(repr=False)
    dom: Callable = field(repr=False)
    adom: Callable = field(repr=False)
    box: tuple = field(repr=False)  # adapted sampling box, 4 (lo, hi) pairs
    rectifies: tuple[Rectification, ...] = ()

    # maps on tuples of arrays or jets, no domain checks
    def forward_raw(self, u):
        return tuple(self.fwd(*u))

    def inverse_raw(self, x):
        return tuple(self.inv(*x))

    def domain(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            return np.asarray(self.dom(*_split(x)), dtype=bool) & np.all(np.isfinite(x), axis=-1)

    def adapted_domain(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        with np.errstate(all="ignore"):
            return np.asarray(self.adom(*_split(u)), dtype=bool) & np.all(np.isfinite(u), axis=-1)

    def forward(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if not np.all(self.adapted_domain(u)):
            raise OutOfDomain(f"adapted point outside the domain of chart {self.id}")
        return np.stack(np.broadcast_arrays(*self.fwd(*_split(u))), axis=-1)

    def inverse(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if not np.all(self.domain(x)):
            raise OutOfDomain(f"point outside the domain of chart {self.id}")
        return np.stack(np.broadcast_arrays(*self.inv(*_split(x))), axis=-1)

    def forward_jacobian(self, u) -> np.ndarray:
        """``J[n, i, k] = d x^i / d u^k``."""
        u = np.atleast_2d(np.asarray(u, dtype=float))
        xs = self.fwd(*ad.seed_coordinates(u))
        n = u.shape[0]
        return np.stack([ad.as_jet(c, (n,)).grad for c in xs], axis=1)

    def sample_adapted(self, rng: np.random.Generator, n: int) -> np.ndarray:
        lo = np.array([b[0] for b in self.box])
        hi = np.array([b[1] for b in self.box])
        out = []
        total = 0
        while total < n:
            u = rng.uniform(lo, hi, size=(4 * n, 4))
            u = u[self.adapted_domain(u)]
            out.append(u)
            total += len(u)
        return np.concatenate(out)[:n]


def rectification_residual(c: Chart, u) -> float:
    """Largest deviation of each designated generator from ``factor * d/du[index]``.

    The generator is written in the adapted frame, ``eta = J^-1 xi``; components
    along the ignored coordinates are allowed to be anything.
    """
    u = np.atleast_2d(np.asarray(u, dtype=float))
    J = c.forward_jacobian(u)
    x = c.forward(u)
    worst = 0.0
    for r in c.rectifies:
        xi = generator_value(r.generator, x)
        eta = np.linalg.solve(J, xi[..., None])[..., 0]
        want = np.zeros(4)
        want[r.index] = r.factor
        dev = np.abs(eta - want)
        dev[:, list(r.ignore)] = 0.0
        worst = max(worst, float(np.max(dev)) / (1.0 + abs(r.factor)))
    return worst


def chart_forward(c: Chart, u) -> np.ndarray:
    return c.forward(u)


def chart_inverse(c: Chart, x) -> np.ndarray:
    return c.inverse(x)


def _everywhere(*a):
    return np.ones(np.broadcast(*a).shape, dtype=bool)


BOX2 = ((-2.0, 2.0),) * 4


# -- chart factories ------------------------------------------------------------

def isotropic() -> Chart:
    # v = (x1, x2+x4, x3, x2-x4)
    return Chart(
        "isotropic", ("v1", "v2", "v3", "v4"), {},
        lambda v1, v2, v3, v4: (v1, 0.5 * (v2 + v4), v3, 0.5 * (v2 - v4)),
        lambda x1, x2, x3, x4: (x1, x2 + x4, x3, x2 - x4),
        _everywhere, _everywhere, BOX2,
        (Rectification(parse_generator("e2+e4"), 1, 2.0),),
    )


def elliptic(lam: float = 0.0, mu: float = 0.0) -> Chart:
    # x1 = r sin(phi), x2 = lam phi + y2, x3 = r cos(phi), x4 = mu phi + y4
    def fwd(r, y2, phi, y4):
        return r * sin(phi), lam * phi + y2, r * cos(phi), mu * phi + y4

    def inv(x1, x2, x3, x4):
        phi = atan2(x1, x3)
        return sqrt(x1 * x1 + x3 * x3), x2 - lam * phi, phi, x4 - mu * phi

    return Chart(
        "elliptic", ("r", "y2", "phi", "y4"), {"lambda": lam, "mu": mu},
        fwd, inv,
        lambda x1, x2, x3, x4: np.hypot(x1, x3) >= MARGIN,
        lambda r, y2, phi, y4: (r > 0) & (phi > -np.pi) & (phi <= np.pi),
        ((0.1, 2.0), (-2.0, 2.0), (-3.0, 3.0), (-2.0, 2.0)),
        (Rectification(_label("e13", (lam, "e2"), (mu, "e4")), 2),),
    )


def hyperbolic(lam: float = 0.0, along: int = 1) -> Chart:
    """``x^along = lam phi + y^along``, ``x2 = r ch(phi)``, ``x4 = r sh(phi)``; along is 1 or 3."""
    if along not in (1, 3):
        raise ValueError("hyperbolic helix axis must be e1 or e3")

    def fwd(y1, r, y3, phi):
        a1 = lam * phi + y1 if along == 1 else y1
        a3 = lam * phi + y3 if along == 3 else y3
        return a1, r * cosh(phi), a3, r * sinh(phi)

    def inv(x1, x2, x3, x4):
        phi = 0.5 * (ln(x2 + x4) - ln(x2 - x4))
        r = sqrt((x2 + x4) * (x2 - x4))
        y1 = x1 - lam * phi if along == 1 else x1
        y3 = x3 - lam * phi if along == 3 else x3
        return y1, r, y3, phi

    name = "hyperbolic" if along == 1 else "hyperbolic_a"
    return Chart(
        name, ("y1", "r", "y3", "phi"), {"lambda": lam},
        fwd, inv,
        lambda x1, x2, x3, x4: x2 - np.abs(x4) >= MARGIN,
        lambda y1, r, y3, phi: r > 0,
        ((-2.0, 2.0), (0.1, 2.0), (-2.0, 2.0), (-2.0, 2.0)),
        (Rectification(_label("e24", (lam, f"e{along}")), 3),),
    )


def _s_positive(x1, x2, x3, x4):
    return x2 + x4 >= MARGIN


PARABOLIC_BOX = ((0.1, 3.0), (-3.0, 3.0), (-2.0, 2.0), (-3.0, 3.0))


def parabolic(mu: float = 0.0) -> Chart:
    """Null-rotation chart; ``mu != 0`` gives the helix variant with the e3 shift."""
    # y1 = s, y2 = -x1/s, y3 = x3 + mu x1/s, y4 = x1^2/2 + x2 s   (s = x2 + x4)
    def fwd(y1, y2, y3, y4):
        x1 = -y2 * y1
        x2 = (y4 - 0.5 * x1 * x1) / y1
        return x1, x2, y3 + mu * y2, y1 - x2

    def inv(x1, x2, x3, x4):
        s = x2 + x4
        y2 = -x1 / s
        return s, y2, x3 - mu * y2, 0.5 * x1 * x1 + x2 * s

    return Chart(
        "parabolic_b" if mu else "parabolic_a", ("y1", "y2", "y3", "y4"), {"mu": mu},
        fwd, inv, _s_positive,
        lambda y1, y2, y3, y4: y1 > 0,
        PARABOLIC_BOX,
        (Rectification(_label("e12-e14", (mu, "e3")), 1),),
    )


def parabolic_c(lam: float) -> Chart:
    if lam == 0:
        raise ValueError("parabolic chart c needs lambda != 0")

    # y1 = 2 lam x1 + s^2, y2 = s/lam, y3 = x3, y4 = lam x4 + x1 s + s^3/(3 lam)
    def fwd(y1, y2, y3, y4):
        s = lam * y2
        x1 = (y1 - s * s) / (2 * lam)
        x4 = (y4 - x1 * s - s * s * s / (3 * lam)) / lam
        return x1, s - x4, y3, x4

    def inv(x1, x2, x3, x4):
        s = x2 + x4
        return 2 * lam * x1 + s * s, s / lam, x3, lam * x4 + x1 * s + s * s * s / (3 * lam)

    return Chart(
        "parabolic_c", ("y1", "y2", "y3", "y4"), {"lambda": lam},
        fwd, inv, _everywhere, _everywhere, BOX2,
        (Rectification(_label("e12-e14", (lam, "e2")), 1),),
    )


def birotation(lam: float) -> Chart:
    if lam == 0:
        raise ValueError("bi-rotation chart needs lambda != 0")

    # x1 = r cos(th - phi), x2 = rho ch(lam phi), x3 = r sin(th - phi), x4 = rho sh(lam phi)
    def fwd(r, rho, th, phi):
        return r * cos(th - phi), rho * cosh(lam * phi), r * sin(th - phi), rho * sinh(lam * phi)

    def inv(x1, x2, x3, x4):
        phi = 0.5 * (ln(x2 + x4) - ln(x2 - x4)) / lam
        return sqrt(x1 * x1 + x3 * x3), sqrt((x2 + x4) * (x2 - x4)), atan2(x3, x1) + phi, phi

    def adom(r, rho, th, phi):
        d = th - phi
        return (r > 0) & (rho > 0) & (d > -np.pi) & (d <= np.pi)

    return Chart(
        "birotation", ("r", "rho", "theta", "phi"), {"lambda": lam},
        fwd, inv,
        lambda x1, x2, x3, x4: (np.hypot(x1, x3) >= MARGIN) & (x2 - np.abs(x4) >= MARGIN),
        adom,
        ((0.1, 2.0), (0.1, 2.0), (-3.0, 3.0), (-1.5, 1.5)),
        (Rectification(_label("e13", (lam, "e24")), 3),),
    )


def null_pair() -> Chart:
    """Chart rectifying both e12-e14 and e23+e34."""
    # y1 = s, y2 = -x1/s, y3 = x3/s, y4 = x1^2 + x2^2 + x3^2 - x4^2
    def fwd(y1, y2, y3, y4):
        x1 = -y2 * y1
        x3 = y3 * y1
        d = (y4 - x1 * x1 - x3 * x3) / y1  # x2 - x4
        return x1, 0.5 * (y1 + d), x3, 0.5 * (y1 - d)

    def inv(x1, x2, x3, x4):
        s = x2 + x4
        return s, -x1 / s, x3 / s, x1 * x1 + x3 * x3 + s * (x2 - x4)

    return Chart(
        "null_pair", ("y1", "y2", "y3", "y4"), {},
        fwd, inv, _s_positive,
        lambda y1, y2, y3, y4: y1 > 0,
        PARABOLIC_BOX,
        (Rectification(parse_generator("e12-e14"), 1), Rectification(parse_generator("e23+e34"), 2)),
    )


def parabolic_log(lam: float) -> Chart:
    """Null-rotation chart followed by ``u = y3 - lam ln y1``, ``v = y4 - y1^2/2``."""
    base = parabolic()

    def fwd(y1, y2, u, v):
        return base.fwd(y1, y2, u + lam * ln(y1), v + 0.5 * y1 * y1)

    def inv(x1, x2, x3, x4):
        y1, y2, y3, y4 = base.inv(x1, x2, x3, x4)
        return y1, y2, y3 - lam * ln(y1), y4 - 0.5 * y1 * y1

    return Chart(
        "parabolic_log", ("y1", "y2", "u", "v"), {"lambda": lam},
        fwd, inv, _s_positive,
        lambda y1, y2, u, v: y1 > 0,
        PARABOLIC_BOX,
        (Rectification(parse_generator("e12-e14"), 1),),
    )


def parabolic_exp(mu: float) -> Chart:
    """Null-rotation chart followed by ``u = y3 - mu ln y1``, ``v = ln y1``."""
    base = parabolic()

    def fwd(v, y2, u, y4):
        return base.fwd(exp(v), y2, u + mu * v, y4)

    def inv(x1, x2, x3, x4):
        y1, y2, y3, y4 = base.inv(x1, x2, x3, x4)
        v = ln(y1)
        return v, y2, y3 - mu * v, y4

    return Chart(
        "parabolic_exp", ("v", "y2", "u", "y4"), {"mu": mu},
        fwd, inv, _s_positive, _everywhere,
        ((-2.0, 1.0), (-3.0, 3.0), (-2.0, 2.0), (-3.0, 3.0)),
        (Rectification(parse_generator("e12-e14"), 1),),
    )


def parabolic_pair(mu: float) -> Chart:
    """Helix chart b followed by ``u = y1 y3/(y1^2 - mu^2)``, ``v = (y1 y3)^2/2 + y4 (y1^2 - mu^2)``."""
    if mu == 0:
        raise ValueError("this chart needs mu != 0")
    base = parabolic(mu)

    def fwd(y1, y2, u, v):
        q = y1 * y1 - mu * mu
        y3 = u * q / y1
        y4 = (v - 0.5 * (y1 * y3) ** 2) / q
        return base.fwd(y1, y2, y3, y4)

    def inv(x1, x2, x3, x4):
        y1, y2, y3, y4 = base.inv(x1, x2, x3, x4)
        q = y1 * y1 - mu * mu
        return y1, y2, y1 * y3 / q, 0.5 * (y1 * y3) ** 2 + y4 * q

    def dom(x1, x2, x3, x4):
        s = x2 + x4
        return (s >= MARGIN) & (np.abs(s * s - mu * mu) >= MARGIN)

    return Chart(
        "parabolic_pair", ("y1", "y2", "u", "v"), {"mu": mu},
        fwd, inv, dom,
        lambda y1, y2, u, v: (y1 > 0) & (np.abs(y1 * y1 - mu * mu) >= MARGIN),
        PARABOLIC_BOX,
        (Rectification(_label("e12-e14", (mu, "e3")), 1),),
    )


def null_helix_pair(lam: float, mu: float, nu: float) -> Chart:
    """``u = x2+x4``, linear angles ``phi, psi`` in the (x1, x3) plane, ``w = x2-x4``."""

    def fwd(u, phi, psi, w):
        x1 = nu * phi - (u - lam) * psi
        x3 = (u + lam) * phi + mu * psi
        return x1, 0.5 * (u + w), x3, 0.5 * (u - w)

    def inv(x1, x2, x3, x4):
        u = x2 + x4
        d = u * u - lam * lam + mu * nu
        return u, (mu * x1 + (u - lam) * x3) / d, (nu * x3 - (u + lam) * x1) / d, x2 - x4

    def dom(x1, x2, x3, x4):
        u = x2 + x4
        return np.abs(u * u - lam * lam + mu * nu) >= MARGIN

    # both helices also move w = x2 - x4; class fields never depend on it
    return Chart(
        "null_helix_pair", ("u", "phi", "psi", "w"), {"lambda": lam, "mu": mu, "nu": nu},
        fwd, inv, dom,
        lambda u, phi, psi, w: np.abs(u * u - lam * lam + mu * nu) >= MARGIN,
        BOX2,
        (
            Rectification(_label("e12-e14", (lam, "e1"), (mu, "e3")), 2, 1.0, (3,)),
            Rectification(_label("e23+e34", (nu, "e1"), (lam, "e3")), 1, 1.0, (3,)),
        ),
    )


def _label(base: str, *terms) -> PoincareGenerator:
    g = parse_generator(base)
    for c, e in terms:
        g = g + c * PoincareGenerator.basis(e)
    return g


CHARTS: dict[str, Callable[..., Chart]] = {
    "isotropic": isotropic,
    "elliptic": elliptic,
    "hyperbolic": hyperbolic,
    "hyperbolic_a": lambda lam=0.0: hyperbolic(lam, along=3),
    "parabolic_a": lambda: parabolic(0.0),
    "parabolic_b": parabolic,
    "parabolic_c": parabolic_c,
    "birotation": birotation,
    "null_pair": null_pair,
    "parabolic_log": parabolic_log,
    "parabolic_exp": parabolic_exp,
    "parabolic_pair": parabolic_pair,
    "null_helix_pair": null_helix_pair,
}


def get_chart(name: str, **params) -> Chart:
    try:
        factory = CHARTS[name]
    except KeyError:
        raise KeyError(f"unknown chart {name!r}") from None
    return factory(**params)


# A representative parameter set per chart, used by roundtrip tests.
SAMPLE_PARAMS = {
    "isotropic": [{}],
    "elliptic": [{"lam": 0.0, "mu": 0.0}, {"lam": 0.7, "mu": 0.0}, {"lam": 0.0, "mu": -1.3}, {"lam": 1.1, "mu": 0.4}],
    "hyperbolic": [{"lam": 0.0}, {"lam": -0.8}],
    "hyperbolic_a": [{"lam": 1.2}],
    "parabolic_a": [{}],
    "parabolic_b": [{"mu": 0.9}],
    "parabolic_c": [{"lam": 0.6}, {"lam": -1.5}],
    "birotation": [{"lam": 1.0}, {"lam": -0.45}],
    "null_pair": [{}],
    "parabolic_log": [{"lam": 0.8}, {"lam": 0.0}],
    "parabolic_exp": [{"mu": -0.6}],
    "parabolic_pair": [{"mu": 0.7}],
    "null_helix_pair": [{"lam": 0.5, "mu": 1.2, "nu": -0.7}, {"lam": 0.0, "mu": 1.3, "nu": 1.3}],
}
