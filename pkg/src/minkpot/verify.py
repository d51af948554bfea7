"""Sampling, residual checks, symmetry detection and emptiness certificates."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .catalog import registry as reg
from .catalog.presets import c319_example_closed_form, c416_example, c416_example_closed_form, p319_example
from .errors import DomainTooThin, InsufficientPoints, NotMarkedEmpty, OutOfDomain
from .geometry import (
    BASIS_LABELS,
    CovectorEval,
    CovectorFieldInstance,
    DerivedTwoForm,
    PoincareGenerator,
    closedness_scale,
    covector_scale,
    cyclic_sum,
    exterior_derivative,
    format_generator,
    lie_derivative_from,
    lie_twoform_from,
    parse_generator,
    twoform_scale,
)

TOL = 1e-9
SV_TOL = 1e-8
DETECT_POINTS = 40
EMPTY_THRESHOLD = 1e-3
BOX = 2.0
MAX_PROPOSALS = 100_000


@dataclass
class VerificationReport:
    class_id: str
    n_points: int
    max_residual: float
    per_generator: list = field(default_factory=list)  # (label, max residual)
    closedness_max: float = 0.0
    detected_dim: int | None = None
    passed: bool = False
    seed: int = 42
    note: str = ""

    @property
    def status(self) -> str:
        if self.note.startswith("SKIP") or (self.passed and self.note == "ZERO-FIELD"):
            return self.note
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d["per_generator"] = [[g, r] for g, r in self.per_generator]
        return d


@dataclass
class SymmetryBasis:
    dim: int
    basis: list  # PoincareGenerator, orthonormal in coefficient space
    singular_values: np.ndarray

    def coefficients(self) -> np.ndarray:
        return np.array([g.coefficients for g in self.basis]).reshape(len(self.basis), 10)

    def contains(self, g: PoincareGenerator) -> float:
        """Relative distance of ``g`` from the detected span."""
        c = g.coefficients
        B = self.coefficients()
        proj = B.T @ (B @ c) if len(B) else np.zeros(10)
        return float(np.linalg.norm(c - proj) / max(np.linalg.norm(c), 1e-300))


# -- sampling ---------------------------------------------------------------------

def sample_domain(entry, n: int, seed=42, params: dict | None = None) -> np.ndarray:
    """``n`` points uniform in [-2, 2]^4 that satisfy the entry's domain predicate."""
    if n < 1:
        raise ValueError("need at least one point")
    if isinstance(entry, (str, reg.ClassId)):
        entry = reg.get_entry(entry)
    if isinstance(seed, np.random.Generator):
        rng = seed
    else:
        rng = reg.class_rng(entry.id, seed, 7919)
    if params is None:
        params = _default_params(entry)
    return _rejection(entry.domain(params), n, rng)


def _rejection(dom, n: int, rng: np.random.Generator) -> np.ndarray:
    out, kept, proposed = [], 0, 0
    batch = max(4 * n, 1000)
    while kept < n:
        x = rng.uniform(-BOX, BOX, size=(batch, 4))
        ok = x[dom(x)]
        out.append(ok)
        kept += len(ok)
        proposed += batch
        if proposed >= MAX_PROPOSALS and kept < n and kept / proposed < 0.01:
            raise DomainTooThin(f"acceptance rate {kept / proposed:.2e} after {proposed} proposals")
    return np.concatenate(out)[:n]


def _default_params(entry) -> dict:
    rng = reg.class_rng(entry.id, 0, 0)
    p = reg.draw_params(entry, rng, 1) if not entry.empty else {}
    return p


# -- residuals --------------------------------------------------------------------

def _generators(gens, params=None) -> list[PoincareGenerator]:
    return [g if isinstance(g, PoincareGenerator) else parse_generator(g, params) for g in gens]


def invariance_residual(A, gens, points) -> tuple[float, list]:
    """Max over points and generators of ``|L_g A|_inf / scale``; works for potentials and 2-forms."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    gens = _generators(gens)
    ev = A.evaluate(pts)
    per = []
    for g in gens:
        if isinstance(ev, CovectorEval):
            L = np.max(np.abs(lie_derivative_from(ev, g, pts)), axis=-1) / covector_scale(ev, pts)
        else:
            L = np.max(np.abs(lie_twoform_from(ev, g, pts)), axis=(-1, -2)) / twoform_scale(ev, pts)
        per.append((format_generator(g), float(np.max(L)) if len(L) else 0.0))
    worst = max((r for _, r in per), default=0.0)
    return worst, per


def closedness_max(field, points) -> float:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if isinstance(field, CovectorFieldInstance):
        ev = field.evaluate(pts)
        res = cyclic_sum(DerivedTwoForm(field).evaluate(pts).dF)
        scale = closedness_scale(ev, pts)
    else:
        ev = field.evaluate(pts)
        res = cyclic_sum(ev.dF)
        scale = twoform_scale(ev, pts)
    return float(np.max(np.max(np.abs(res), axis=-1) / scale))


# -- detection --------------------------------------------------------------------

def _basis_generators() -> list[PoincareGenerator]:
    return [PoincareGenerator.basis(lb) for lb in BASIS_LABELS]


def _lie_matrix(field, points) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ev = field.evaluate(pts)
    cols = []
    for g in _basis_generators():
        if isinstance(ev, CovectorEval):
            L = lie_derivative_from(ev, g, pts) / covector_scale(ev, pts)[:, None]
        else:
            L = lie_twoform_from(ev, g, pts)
            iu = np.triu_indices(4, 1)
            L = L[:, iu[0], iu[1]] / twoform_scale(ev, pts)[:, None]
        cols.append(L.reshape(-1))
    return np.stack(cols, axis=1)


def detect_symmetry_algebra(field, points, tol_sv: float = SV_TOL) -> SymmetryBasis:
    """Annihilating subalgebra of ``field`` from the null space of the stacked Lie-derivative matrix."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(pts) < 5:
        raise InsufficientPoints(f"need at least 5 points, got {len(pts)}")
    M = _lie_matrix(field, pts)
    _, sv, vt = np.linalg.svd(M, full_matrices=True)
    sv = np.concatenate([sv, np.zeros(10 - len(sv))])
    smax = sv[0]
    null = np.arange(10) if smax == 0 else np.nonzero(sv <= tol_sv * smax)[0]
    basis = [PoincareGenerator.from_coefficients(vt[k]) for k in null]
    return SymmetryBasis(len(basis), basis, sv)


def detected_dimension(cid, seed: int = 42, draws: int = 3, n: int = DETECT_POINTS, params=None, slots=None) -> int:
    """Minimum detected dimension over generic draws (admissible nonzero parameters)."""
    entry = reg.get_entry(cid, params)
    dims = []
    for d in range(draws):
        field_, p = _instance(entry, seed, d + 1, params, slots)
        pts = sample_domain(entry, n, reg.class_rng(entry.id, seed, d + 1, 31), p)
        dims.append(detect_symmetry_algebra(field_, pts).dim)
    return min(dims)


# -- class verification -------------------------------------------------------------

def _instance(entry, seed, draw, params=None, slots=None, family="poly"):
    rng = reg.class_rng(entry.id, seed, draw, 0 if family == "poly" else 1)
    if params is None:
        p = reg.draw_params(entry, rng, draw)
    else:
        p = dict(params)
    if slots is None:
        s = reg.draw_slots(entry, reg.check_params(entry, p), rng, family)
    else:
        s = slots
    return reg.instantiate(entry.id, p, s), reg.check_params(entry, p)


def verify_class(cid, seed: int = 42, points: int = 100, draws: int = 3, tol: float = TOL, params=None,
                 slots=None, family: str = "poly", detect: bool = False) -> VerificationReport:
    entry = reg.get_entry(cid, params)
    if entry.empty:
        return VerificationReport(str(entry.id), 0, 0.0, [], 0.0, None, True, seed, "SKIP(EMPTY)")
    if params is not None or slots is not None:
        draws = 1
    worst, closed, per = 0.0, 0.0, {}
    total, amp = 0, 0.0
    for d in range(draws):
        field_, p = _instance(entry, seed, d, params, slots, family)
        pts = sample_domain(entry, points, reg.class_rng(entry.id, seed, d, 17), p)
        gens = [parse_generator(g, p) for g in entry.generators]
        r, pg = invariance_residual(field_, gens, pts)
        c = closedness_max(field_, pts)
        amp = max(amp, float(np.max(np.abs(field_(pts)))))
        worst, closed = max(worst, r), max(closed, c)
        for k, (lb, v) in enumerate(pg):
            key = entry.generators[k]
            per[key] = max(per.get(key, 0.0), v)
        total += len(pts)
    dim = detected_dimension(entry.id, seed, 3, params=params, slots=slots) if detect else None
    ok = bool(worst <= tol and closed <= tol)
    note = "ZERO-FIELD" if amp == 0.0 else ""
    return VerificationReport(str(entry.id), total, worst, list(per.items()), closed, dim, ok, seed, note)


# -- emptiness ----------------------------------------------------------------------

def certify_emptiness(cid, trials: int = 100, seed: int = 42) -> bool:
    """True iff every nonzero parent instance is destroyed by the extending generators."""
    entry = reg.get_entry(cid)
    if not entry.empty:
        raise NotMarkedEmpty(f"{entry.id} is not marked empty")
    parent = reg.get_entry(entry.parent)
    for t in range(trials):
        rng = reg.class_rng(entry.id, seed, t)
        pe = reg.draw_params(entry, rng, 1)
        gens = [parse_generator(g, pe) for g in entry.extending]
        pp = reg.draw_params(parent, rng, 1 + t % 2)
        A = reg.instantiate(parent.id, pp, reg.draw_slots(parent, pp, rng))
        pts = sample_domain(parent, 20, rng, pp)
        amp = np.max(np.abs(A(pts)))
        if amp == 0:
            return False
        A = A.scaled(1.0 / amp)
        ev = A.evaluate(pts)
        scale = covector_scale(ev, pts)
        res = max(float(np.max(np.max(np.abs(lie_derivative_from(ev, g, pts)), axis=-1) / scale)) for g in gens)
        if not res > EMPTY_THRESHOLD:
            return False
    return True


# -- finite differences --------------------------------------------------------------

def finite_difference_oracle(A, x, h: float = 1e-5) -> tuple[np.ndarray, np.ndarray]:
    """Central-difference ``dA[i, j] = d_j A_i`` and ``ddA[i, j, k] = d_j d_k A_i`` at one point."""
    x = np.asarray(x, dtype=float)
    E = np.eye(4) * h
    stencil = [x]
    for j in range(4):
        for sj in (1, -1):
            stencil.append(x + sj * E[j])
            for k in range(j + 1, 4):
                for sk in (1, -1):
                    stencil.append(x + sj * E[j] + sk * E[k])
    stencil = np.array(stencil)
    if not np.all(A.domain(stencil)):
        raise OutOfDomain("finite-difference stencil leaves the field's domain")
    f = lambda y: A(np.atleast_2d(y))[0]  # noqa: E731
    f0 = f(x)
    d1 = np.zeros((4, 4))
    d2 = np.zeros((4, 4, 4))
    for j in range(4):
        fp, fm = f(x + E[j]), f(x - E[j])
        d1[:, j] = (fp - fm) / (2 * h)
        d2[:, j, j] = (fp - 2 * f0 + fm) / (h * h)
        for k in range(j + 1, 4):
            v = (f(x + E[j] + E[k]) - f(x + E[j] - E[k]) - f(x - E[j] + E[k]) + f(x - E[j] - E[k])) / (4 * h * h)
            d2[:, j, k] = d2[:, k, j] = v
    return d1, d2


# -- worked examples ------------------------------------------------------------------

EXAMPLES = ("C319_example", "C416_example")


def _relative_deviation(F, G) -> float:
    d = np.max(np.abs(F - G), axis=(-1, -2))
    return float(np.max(d / np.maximum(1.0, np.max(np.abs(G), axis=(-1, -2)))))


def appendix_crosscheck(example: str, seed: int = 42, n: int = 100, phi=None, lam: float = 1.0,
                        K: float = 1.0) -> VerificationReport:
    if example == "C319_example":
        A = p319_example(phi, lam)
        entry = reg.get_entry("P3.19")
        pts = sample_domain(entry, n, reg.class_rng("C319_example", seed), {"lambda": lam})
        dev = _relative_deviation(exterior_derivative(A, pts), c319_example_closed_form(pts, phi, lam))
        tol = 1e-9
        closed = closedness_max(A, pts)
        label = "P3.19 example: dA vs closed form"
    elif example == "C416_example":
        F = c416_example(K, lam)
        entry = reg.get_entry("C4.16")
        pts = sample_domain(entry, n, reg.class_rng("C416_example", seed), {"lambda": lam, "K": K})
        dev = _relative_deviation(F(pts), c416_example_closed_form(pts, K, lam))
        tol = 1e-12
        closed = closedness_max(F, pts)
        label = "C4.16 example: constructor vs closed form"
    else:
        raise ValueError(f"unknown example {example!r}; choose from {EXAMPLES}")
    return VerificationReport(example, len(pts), dev, [], closed, None, bool(dev <= tol and closed <= TOL), seed,
                              label)


__all__ = [
    "VerificationReport", "SymmetryBasis", "sample_domain", "invariance_residual", "closedness_max",
    "detect_symmetry_algebra", "detected_dimension", "verify_class", "certify_emptiness",
    "finite_difference_oracle", "appendix_crosscheck", "TOL",
]
