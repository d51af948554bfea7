"""Minkowski-space primitives: Poincare generators, Lie derivatives, dA and dF."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .adscalar import Jet2, seed_coordinates
from .errors import OutOfDomain

METRIC = np.diag([-1.0, -1.0, -1.0, 1.0])
METRIC.setflags(write=False)

TRANSLATION_LABELS = ("e1", "e2", "e3", "e4")
ROTATION_LABELS = ("e12", "e13", "e23", "e14", "e24", "e34")
BASIS_LABELS = TRANSLATION_LABELS + ROTATION_LABELS

# (row, col) of the +1 entry in the rotation matrix; the mirror entry is
# -1 for the compact rotations and +1 for the boosts.
_ROTATION_SLOTS = {
    # e12 = (-x2, x1, 0, 0)
    "e12": ((1, 0), -1.0),
    # e13 = (x3, 0, -x1, 0)
    "e13": ((0, 2), -1.0),
    # e23 = (0, -x3, x2, 0)
    "e23": ((2, 1), -1.0),
    # e14 = (x4, 0, 0, x1)
    "e14": ((0, 3), 1.0),
    # e24 = (0, x4, 0, x2)
    "e24": ((1, 3), 1.0),
    # e34 = (0, 0, x4, x3)
    "e34": ((2, 3), 1.0),
}

TWOFORM_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
TWOFORM_LABELS = ("F12", "F13", "F14", "F23", "F24", "F34")


def _rotation_matrix(label: str) -> np.ndarray:
    (i, j), mirror = _ROTATION_SLOTS[label]
    m = np.zeros((4, 4))
    m[i, j] = 1.0
    m[j, i] = mirror
    return m


_ROTATION_MATRICES = np.stack([_rotation_matrix(lb) for lb in ROTATION_LABELS])


@dataclass(frozen=True)
class PoincareGenerator:
    """Affine vector field ``xi(x) = a + M x`` in the ten-element basis."""

    a: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    w: tuple[float, float, float, float, float, float] = (0.0,) * 6

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "w", tuple(float(v) for v in self.w))
        if len(self.a) != 4 or len(self.w) != 6:
            raise ValueError("a generator has 4 translation and 6 rotation coefficients")

    @classmethod
    def from_coefficients(cls, c) -> PoincareGenerator:
        c = [float(v) for v in c]
        return cls(tuple(c[:4]), tuple(c[4:]))

    @classmethod
    def basis(cls, label: str) -> PoincareGenerator:
        c = np.zeros(10)
        c[BASIS_LABELS.index(label)] = 1.0
        return cls.from_coefficients(c)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array(self.a + self.w)

    def __add__(self, other):
        return PoincareGenerator.from_coefficients(self.coefficients + other.coefficients)

    def __sub__(self, other):
        return PoincareGenerator.from_coefficients(self.coefficients - other.coefficients)

    def __mul__(self, c):
        return PoincareGenerator.from_coefficients(float(c) * self.coefficients)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def __str__(self):
        return format_generator(self)


def format_generator(g: PoincareGenerator) -> str:
    parts = []
    for c, lb in zip(g.coefficients, BASIS_LABELS):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else np.format_float_positional(mag, trim="-")
        parts.append(f"{sign}{coef}{lb}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


_TERM = re.compile(r"([+-]?)\s*(\d+(?:\.\d*)?)?\s*(λ|μ|ν)?\s*(e\d{1,2})")
PARAM_SYMBOLS = {"λ": "lambda", "μ": "mu", "ν": "nu"}


def parse_generator(label: str, params: dict | None = None) -> PoincareGenerator:
    """Build a generator from a label such as ``"e12-e14+λe2+μe3"``."""
    params = params or {}
    text = label.replace(" ", "")
    if text == "0":
        return PoincareGenerator()
    pos = 0
    c = np.zeros(10)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse generator label {label!r}")
        sign, num, sym, base = m.groups()
        if base not in BASIS_LABELS:
            raise ValueError(f"unknown basis element {base!r} in {label!r}")
        coef = float(num) if num else 1.0
        if sym:
            coef *= float(params.get(PARAM_SYMBOLS[sym], 0.0))
        if sign == "-":
            coef = -coef
        c[BASIS_LABELS.index(base)] += coef
        pos = m.end()
    return PoincareGenerator.from_coefficients(c)


def generator_jacobian(g: PoincareGenerator) -> np.ndarray:
    """Constant matrix ``M`` with ``xi(x) = a + M x``; ``M[j, i] = d_i xi^j``."""
    return np.tensordot(np.asarray(g.w), _ROTATION_MATRICES, axes=1)


def generator_value(g: PoincareGenerator, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.asarray(g.a) + x @ generator_jacobian(g).T


def _coefficients_of_matrix(m: np.ndarray) -> np.ndarray:
    w = np.array([m[i, j] for (i, j), _ in (_ROTATION_SLOTS[lb] for lb in ROTATION_LABELS)])
    if not np.array_equal(np.tensordot(w, _ROTATION_MATRICES, axes=1), m):
        raise ValueError("matrix is not in the Lorentz algebra")
    return w


def bracket(g1: PoincareGenerator, g2: PoincareGenerator) -> PoincareGenerator:
    """Commutator ``[xi, eta]^i = xi^j d_j eta^i - eta^j d_j xi^i``."""
    m, n = generator_jacobian(g1), generator_jacobian(g2)
    a, b = np.asarray(g1.a), np.asarray(g2.a)
    trans = n @ a - m @ b
    rot = _coefficients_of_matrix(n @ m - m @ n)
    return PoincareGenerator(tuple(trans), tuple(rot))


# -- fields -----------------------------------------------------------------

Domain = Callable[[np.ndarray], np.ndarray]


def everywhere(x: np.ndarray) -> np.ndarray:
    return np.ones(np.asarray(x).shape[:-1], dtype=bool)


def _as_points(x) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    return np.atleast_2d(x), single


def _check_domain(domain: Domain, pts: np.ndarray):
    if not np.all(np.isfinite(pts)):
        raise OutOfDomain("points must be finite")
    ok = domain(pts)
    if not np.all(ok):
        bad = pts[~ok][0]
        raise OutOfDomain(f"point {bad.tolist()} is outside the field's domain")


@dataclass(frozen=True)
class CovectorEval:
    """Batched values ``A[n, i]``, ``dA[n, i, j] = d_j A_i``, ``ddA[n, i, j, k]``."""

    A: np.ndarray
    dA: np.ndarray
    ddA: np.ndarray


@dataclass(frozen=True)
class TwoFormEval:
    """Batched ``F[n, i, j]`` (antisymmetric) and ``dF[n, i, j, k] = d_k F_ij``."""

    F: np.ndarray
    dF: np.ndarray


def _antisym(comps: np.ndarray) -> np.ndarray:
    """Expand the six stored components (last axis) into a 4x4 antisymmetric block."""
    shape = comps.shape[:-1]
    out = np.zeros(shape + (4, 4))
    for c, (i, j) in enumerate(TWOFORM_PAIRS):
        out[..., i, j] = comps[..., c]
        out[..., j, i] = -comps[..., c]
    return out


@dataclass(frozen=True)
class TwoForm:
    comp: tuple[float, float, float, float, float, float]

    def F(self, i: int, j: int) -> float:
        """Signed component, 1-based indices."""
        if i == j:
            return 0.0
        if i < j:
            return self.comp[TWOFORM_PAIRS.index((i - 1, j - 1))]
        return -self.comp[TWOFORM_PAIRS.index((j - 1, i - 1))]

    def matrix(self) -> np.ndarray:
        return _antisym(np.asarray(self.comp))


@dataclass(frozen=True)
class CovectorFieldInstance:
    """A covector field assembled from jet arithmetic.

    ``build`` maps the four coordinate jets to the four component jets.
    """

    build: Callable[[tuple[Jet2, ...]], Sequence[Jet2]]
    domain: Domain = everywhere
    label: str = ""

    def jets(self, x) -> tuple[Jet2, ...]:
        pts, _ = _as_points(x)
        _check_domain(self.domain, pts)
        comps = self.build(seed_coordinates(pts))
        n = pts.shape[0]
        return tuple(c if isinstance(c, Jet2) else Jet2.constant(c, (n,)) for c in comps)

    def evaluate(self, x) -> CovectorEval:
        comps = self.jets(x)
        n = np.atleast_2d(np.asarray(x, dtype=float)).shape[0]
        A = np.stack([np.broadcast_to(c.val, (n,)) for c in comps], axis=-1)
        dA = np.stack([np.broadcast_to(c.grad, (n, 4)) for c in comps], axis=1)
        ddA = np.stack([np.broadcast_to(c.hess, (n, 4, 4)) for c in comps], axis=1)
        return CovectorEval(A, dA, ddA)

    def __call__(self, x) -> np.ndarray:
        pts, single = _as_points(x)
        A = self.evaluate(pts).A
        return A[0] if single else A

    def scaled(self, c: float) -> CovectorFieldInstance:
        return CovectorFieldInstance(lambda X: [c * comp for comp in self.build(X)], self.domain, self.label)


@dataclass(frozen=True)
class TwoFormField:
    """A 2-form field; ``build`` returns the six components (F12, F13, F14, F23, F24, F34)."""

    build: Callable[[tuple[Jet2, ...]], Sequence[Jet2]]
    domain: Domain = everywhere
    label: str = ""

    def evaluate(self, x) -> TwoFormEval:
        pts, _ = _as_points(x)
        _check_domain(self.domain, pts)
        n = pts.shape[0]
        comps = [c if isinstance(c, Jet2) else Jet2.constant(c, (n,)) for c in self.build(seed_coordinates(pts))]
        vals = np.stack([np.broadcast_to(c.val, (n,)) for c in comps], axis=-1)
        grads = np.stack([np.broadcast_to(c.grad, (n, 4)) for c in comps], axis=-2)
        F = _antisym(vals)
        dF = np.moveaxis(_antisym(np.moveaxis(grads, -1, -2)), -3, -1)
        return TwoFormEval(F, dF)

    def __call__(self, x) -> np.ndarray:
        pts, single = _as_points(x)
        F = self.evaluate(pts).F
        return F[0] if single else F

    def scaled(self, c: float) -> TwoFormField:
        return TwoFormField(lambda X: [c * comp for comp in self.build(X)], self.domain, self.label)


def exterior_derivative(A: CovectorFieldInstance, x) -> np.ndarray:
    """``F[i, j] = d_i A_j - d_j A_i`` at the point(s) ``x``."""
    pts, single = _as_points(x)
    ev = A.evaluate(pts)
    F = _exterior_from(ev)
    return F[0] if single else F


def _exterior_from(ev: CovectorEval) -> np.ndarray:
    dA = ev.dA
    return np.swapaxes(dA, -1, -2) - dA


def exterior_field(A: CovectorFieldInstance) -> "DerivedTwoForm":
    return DerivedTwoForm(A)


@dataclass(frozen=True)
class DerivedTwoForm:
    """``dA`` as a 2-form field, derivatives taken from the second-order jets of ``A``."""

    potential: CovectorFieldInstance

    @property
    def domain(self):
        return self.potential.domain

    def evaluate(self, x) -> TwoFormEval:
        ev = self.potential.evaluate(x)
        ddA = ev.ddA  # [n, i, j, k] = d_j d_k A_i
        # d_k F_ij = d_i d_k A_j - d_j d_k A_i
        dF = np.einsum("njik->nijk", ddA) - ddA
        return TwoFormEval(_exterior_from(ev), dF)

    def __call__(self, x) -> np.ndarray:
        pts, single = _as_points(x)
        F = self.evaluate(pts).F
        return F[0] if single else F


def lie_derivative_covector(A, g: PoincareGenerator, x) -> np.ndarray:
    """``(L_xi A)_i = xi^j d_j A_i + A_j d_i xi^j`` at the point(s) ``x``."""
    pts, single = _as_points(x)
    ev = A.evaluate(pts) if not isinstance(A, CovectorEval) else A
    out = lie_derivative_from(ev, g, pts)
    return out[0] if single else out


def lie_derivative_from(ev: CovectorEval, g: PoincareGenerator, pts: np.ndarray) -> np.ndarray:
    xi = generator_value(g, pts)
    m = generator_jacobian(g)
    return np.einsum("nij,nj->ni", ev.dA, xi) + ev.A @ m


def lie_derivative_twoform(F, g: PoincareGenerator, x) -> np.ndarray:
    """``(L_xi F)_ij = xi^k d_k F_ij + F_kj d_i xi^k + F_ik d_j xi^k``."""
    pts, single = _as_points(x)
    ev = F.evaluate(pts) if not isinstance(F, TwoFormEval) else F
    out = lie_twoform_from(ev, g, pts)
    return out[0] if single else out


def lie_twoform_from(ev: TwoFormEval, g: PoincareGenerator, pts: np.ndarray) -> np.ndarray:
    xi = generator_value(g, pts)
    m = generator_jacobian(g)
    return np.einsum("nijk,nk->nij", ev.dF, xi) + np.einsum("ki,nkj->nij", m, ev.F) + ev.F @ m


CLOSEDNESS_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def cyclic_sum(dF: np.ndarray) -> np.ndarray:
    """``d_i F_jk + d_j F_ki + d_k F_ij`` for the four index triples; ``dF[n, i, j, k] = d_k F_ij``."""
    out = []
    for i, j, k in CLOSEDNESS_TRIPLES:
        out.append(dF[:, j, k, i] + dF[:, k, i, j] + dF[:, i, j, k])
    return np.stack(out, axis=-1)


def closedness_residual(field, x) -> np.ndarray:
    """Cyclic sums of ``dF`` for a potential (``F = dA``) or a 2-form field."""
    pts, single = _as_points(x)
    if isinstance(field, CovectorFieldInstance):
        ev = DerivedTwoForm(field).evaluate(pts)
    else:
        ev = field.evaluate(pts)
    out = cyclic_sum(ev.dF)
    return out[0] if single else out


def covector_scale(ev: CovectorEval, pts: np.ndarray) -> np.ndarray:
    """Per-point normaliser ``1 + max|A| + max|dA| (1 + max|x|)``."""
    xmax = np.max(np.abs(pts), axis=-1)
    return 1.0 + np.max(np.abs(ev.A), axis=-1) + np.max(np.abs(ev.dA), axis=(-1, -2)) * (1.0 + xmax)


def closedness_scale(ev: CovectorEval, pts: np.ndarray) -> np.ndarray:
    # the cyclic sum cancels second derivatives, so they enter the normaliser
    return covector_scale(ev, pts) + np.max(np.abs(ev.ddA), axis=(-1, -2, -3))


def twoform_scale(ev: TwoFormEval, pts: np.ndarray) -> np.ndarray:
    xmax = np.max(np.abs(pts), axis=-1)
    return 1.0 + np.max(np.abs(ev.F), axis=(-1, -2)) + np.max(np.abs(ev.dF), axis=(-1, -2, -3)) * (1.0 + xmax)
