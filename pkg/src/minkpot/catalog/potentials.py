"""Invariant potential classes P<dim>.<index>.

Each builder receives the coordinate jets ``X``, the adapted coordinates ``U``
(``None`` for chart-free classes), the parameter/constant dict ``p`` and the
slot dict ``s``, and returns the four Galilean components.
"""
from __future__ import annotations

import numpy as np

from ..charts import MARGIN, cos, cosh, exp, ln, sin, sinh, sqrt
from .registry import ClassEntry, ClassId, ParamSpec, d_nonzero, d_positive, register, s_positive
from .slots import SlotSpec

T = ("e1", "e2", "e3", "e4")


def _id(text: str) -> ClassId:
    return ClassId.parse(text)


def _params(text: str) -> tuple[ParamSpec, ...]:
    if not text:
        return ()
    out = []
    for item in text.split(","):
        name, kind = item.split(":") if ":" in item else (item, "any")
        out.append(ParamSpec(name.strip(), kind.strip()))
    return tuple(out)


def _slots(labels: str, arity: int, args: str, when: str | None = None) -> tuple[SlotSpec, ...]:
    return tuple(SlotSpec(lb, arity, args, when) for lb in labels.split())


def _consts(labels: str, when: str | None = None) -> tuple[SlotSpec, ...]:
    return tuple(SlotSpec(lb, 0, "", when) for lb in labels.split())


def entry(cid: str, gens, build, *, params="", slots=(), consts=(), chart=None, chart_args=None,
          domain=None, branch=None, constraint=None, elementary=None, statement="", **kw) -> ClassEntry:
    gens = tuple(gens)
    if elementary is None:
        # exp of a linear form is safe only where the arguments stay bounded
        elementary = "exp" if chart is None and domain is None else "sin"
    return ClassEntry(
        _id(cid), gens, _params(params), tuple(consts), tuple(slots), chart, chart_args, build, domain,
        statement=statement or "fields invariant under " + ", ".join(gens),
        branch=branch, constraint=constraint, elementary=elementary, **kw,
    )


LAM_MU_ZERO = ("λμ=0", lambda p: p.get("lambda", 0.0) * p.get("mu", 0.0) == 0.0)

# -- shared forms -----------------------------------------------------------------


def _rot(C1, C2, phi):
    """(A1, A3) = (C1 cos φ + C2 sin φ, -C1 sin φ + C2 cos φ)."""
    c, sn = cos(phi), sin(phi)
    return C1 * c + C2 * sn, -C1 * sn + C2 * c


def _boost(C1, C2, phi):
    """(A2, A4) = (C1 ch φ + C2 sh φ, -C1 sh φ - C2 ch φ)."""
    ch, sh = cosh(phi), sinh(phi)
    return C1 * ch + C2 * sh, -C1 * sh - C2 * ch


def _null(y2, C1, C2, C3, A3):
    """Null-rotation invariant form in the adapted coordinate y2."""
    A1 = C2 * y2 + C3
    A2 = 0.5 * C2 * y2 * y2 + C3 * y2 + C1
    return A1, A2, A3, A2 + C2


def _null_pair(y2, y3, Phi, Psi, Xi, Theta):
    """Form invariant under both e12-e14 and e23+e34."""
    A1 = -y2 * Phi + Psi
    A2 = -0.5 * Phi * (y2 * y2 + y3 * y3) + y2 * Psi - y3 * Xi + Theta
    A3 = y3 * Phi + Xi
    return A1, A2, A3, A2 - Phi


def _free(sel):
    def build(X, U, p, s):
        args = sel(X, U, p)
        return [s[f"A{i}"](*args) for i in (1, 2, 3, 4)]

    return build


def _s(X):
    return X[1] + X[3]


def _d(X):
    return X[1] - X[3]


A4 = "A1 A2 A3 A4"
lam = lambda p: p["lambda"]  # noqa: E731

ENTRIES: list[ClassEntry] = []
add = ENTRIES.append

# ---------------------------------------------------------------- dimension 1

add(entry("P1.1a", ["e1"], _free(lambda X, U, p: (X[1], X[2], X[3])), slots=_slots(A4, 3, "x2,x3,x4")))
add(entry("P1.1b", ["e4"], _free(lambda X, U, p: (X[0], X[1], X[2])), slots=_slots(A4, 3, "x1,x2,x3")))
add(entry("P1.1c", ["e2+e4"], _free(lambda X, U, p: (U[0], U[2], U[3])), slots=_slots(A4, 3, "x1,x3,x2-x4"),
          chart="isotropic"))


def _p12(X, U, p, s):
    r, y2, phi, y4 = U
    A1, A3 = _rot(s["C1"](r, y2, y4), s["C2"](r, y2, y4), phi)
    return A1, s["A2"](r, y2, y4), A3, s["A4"](r, y2, y4)


add(entry("P1.2", ["e13+λe2+μe4"], _p12, params="lambda,mu", slots=_slots("C1 C2 A2 A4", 3, "r,y2,y4"),
          chart="elliptic", chart_args=lambda p: dict(lam=p["lambda"], mu=p["mu"])))


def _p13(X, U, p, s):
    y1, r, y3, phi = U
    A2, A4 = _boost(s["C1"](y1, r, y3), s["C2"](y1, r, y3), phi)
    return s["A1"](y1, r, y3), A2, s["A3"](y1, r, y3), A4


add(entry("P1.3", ["e24+λe1"], _p13, params="lambda", slots=_slots("A1 A3 C1 C2", 3, "y1,r,y3"),
          chart="hyperbolic", chart_args=lambda p: dict(lam=p["lambda"])))


def _p14(X, U, p, s):
    y1, y2, y3, y4 = U
    a = (y1, y3, y4)
    return _null(y2, s["C1"](*a), s["C2"](*a), s["C3"](*a), s["A3"](*a))


_P14 = dict(constraint=LAM_MU_ZERO)
add(entry("P1.4a", ["e12-e14+λe2+μe3"], _p14, params="lambda:zero,mu:zero", slots=_slots("A3 C1 C2 C3", 3, "y1,y3,y4"),
          chart="parabolic_a", **_P14))
add(entry("P1.4b", ["e12-e14+λe2+μe3"], _p14, params="lambda:zero,mu:nonzero", slots=_slots("A3 C1 C2 C3", 3, "y1,y3,y4"),
          chart="parabolic_b", chart_args=lambda p: dict(mu=p["mu"]), **_P14))
add(entry("P1.4c", ["e12-e14+λe2+μe3"], _p14, params="lambda:nonzero,mu:zero", slots=_slots("A3 C1 C2 C3", 3, "y1,y3,y4"),
          chart="parabolic_c", chart_args=lambda p: dict(lam=p["lambda"]), **_P14))


def _p15(X, U, p, s):
    r, rho, th, phi = U
    a = (rho, r, th)
    A1, A3 = _rot(s["C1"](*a), s["C2"](*a), phi)
    A2, A4 = _boost(s["C3"](*a), s["C4"](*a), p["lambda"] * phi)
    return A1, A2, A3, A4


BIROT = dict(chart="birotation", chart_args=lambda p: dict(lam=p["lambda"]))
BIROT1 = dict(chart="birotation", chart_args=lambda p: dict(lam=1.0))
add(entry("P1.5", ["e13+λe24"], _p15, params="lambda:nonzero", slots=_slots("C1 C2 C3 C4", 3, "rho,r,theta"), **BIROT))

# ---------------------------------------------------------------- dimension 2

add(entry("P2.1a", ["e1", "e2"], _free(lambda X, U, p: (X[2], X[3])), slots=_slots(A4, 2, "x3,x4")))
add(entry("P2.1b", ["e2", "e4"], _free(lambda X, U, p: (X[0], X[2])), slots=_slots(A4, 2, "x1,x3")))
add(entry("P2.1c", ["e1", "e2+e4"], _free(lambda X, U, p: (X[2], _d(X))), slots=_slots(A4, 2, "x3,x2-x4")))


def _elliptic_form(args):
    def build(X, U, p, s):
        a = args(U)
        A1, A3 = _rot(s["C1"](*a), s["C2"](*a), U[2])
        return A1, s["A2"](*a), A3, s["A4"](*a)

    return build


add(entry("P2.2", ["e13+μe4", "e2"], _elliptic_form(lambda U: (U[0], U[3])), params="mu",
          slots=_slots("C1 C2 A2 A4", 2, "r,y4"), chart="elliptic", chart_args=lambda p: dict(lam=0.0, mu=p["mu"])))
add(entry("P2.3", ["e13+λe2", "e4"], _elliptic_form(lambda U: (U[0], U[1])), params="lambda:nonzero",
          slots=_slots("C1 C2 A2 A4", 2, "r,y2"), chart="elliptic", chart_args=lambda p: dict(lam=p["lambda"], mu=0.0)))
add(entry("P2.4", ["e13+λe2", "e2+e4"], _elliptic_form(lambda U: (U[0], U[1] - U[3])), params="lambda:nonzero",
          slots=_slots("C1 C2 A2 A4", 2, "r,y2-y4"), chart="elliptic", chart_args=lambda p: dict(lam=p["lambda"], mu=0.0)))


def _p25(X, U, p, s):
    y1, r, y3, phi = U
    A2, A4 = _boost(s["C1"](r, y3), s["C2"](r, y3), phi)
    return s["A1"](r, y3), A2, s["A3"](r, y3), A4


HYP_A = dict(chart="hyperbolic_a", chart_args=lambda p: dict(lam=p["lambda"]))
add(entry("P2.5", ["e24+λe3", "e1"], _p25, params="lambda", slots=_slots("A1 A3 C1 C2", 2, "r,y3"), **HYP_A))


def _helix_boost(args):
    # a_k, A1, A3 depend on the arguments; the boost coefficients carry ch/sh(ln r)
    def build(X, U, p, s):
        y1, r, y3, phi = U
        w = y3 - p["lambda"] * ln(r)
        a = args(y1, w)
        a1, a2 = s["a1"](*a), s["a2"](*a)
        lr = ln(r)
        C1 = a1 * cosh(lr) + a2 * sinh(lr)
        C2 = a1 * sinh(lr) + a2 * cosh(lr)
        A2, A4 = _boost(C1, C2, phi)
        return s["A1"](*a), A2, s["A3"](*a), A4

    return build


add(entry("P2.6", ["e24+λe3", "e2-e4"], _helix_boost(lambda y1, w: (y1, w)), params="lambda",
          slots=_slots("a1 a2 A1 A3", 2, "y1,y3-λ ln r"), **HYP_A))


def _p27(X, U, p, s):
    y1, y2, y3, y4 = U
    return _null(y2, s["C1"](y1, y3), s["C2"](y1, y3), s["C3"](y1, y3), s["A3"](y1, y3))


_G27 = ["e12-e14+λe2+μe3", "e2-e4"]
add(entry("P2.7a", _G27, _p27, params="lambda:zero,mu:zero", slots=_slots("A3 C1 C2 C3", 2, "y1,y3"),
          chart="parabolic_a", **_P14))
add(entry("P2.7b", _G27, _p27, params="lambda:zero,mu:nonzero", slots=_slots("A3 C1 C2 C3", 2, "y1,y3"),
          chart="parabolic_b", chart_args=lambda p: dict(mu=p["mu"]), **_P14))
add(entry("P2.7c", _G27, _p27, params="lambda:nonzero,mu:zero", slots=_slots("A3 C1 C2 C3", 2, "y1,y3"),
          chart="parabolic_c", chart_args=lambda p: dict(lam=p["lambda"]), **_P14))


def _p28(X, U, p, s):
    y1, y2, y3, y4 = U
    return _null(y2, s["C1"](y1, y4), s["C2"](y1, y4), s["C3"](y1, y4), s["A3"](y1, y4))


PARA_C = dict(chart="parabolic_c", chart_args=lambda p: dict(lam=p["lambda"]))
add(entry("P2.8", ["e12-e14+λe2", "e3"], _p28, params="lambda:nonzero", slots=_slots("A3 C1 C2 C3", 2, "y1,y4"), **PARA_C))


def _p29(X, U, p, s):
    r, rho, th, phi = U
    L = p["lambda"]
    a = (r, L * th + ln(rho))
    F1, F2, F3 = s["Phi1"](*a), s["Phi2"](*a), s["Phi3"](*a)
    b = ln(rho) / L
    C1 = F1 * cos(b) + F2 * sin(b)
    C2 = -F1 * sin(b) + F2 * cos(b)
    A1, A3 = _rot(C1, C2, phi)
    A2 = rho * F3 * exp(L * phi)
    return A1, A2, A3, -A2


add(entry("P2.9", ["e13+λe24", "e2-e4"], _p29, params="lambda:nonzero",
          slots=_slots("Phi1 Phi2 Phi3", 2, "r,λθ+ln ρ"), **BIROT))


def _p210(X, U, p, s):
    r, rho, th, phi = U
    t1, t2, t3, t4 = (s[f"t{k}"](r, rho) for k in (1, 2, 3, 4))
    a = th - phi
    ep, em = exp(phi), exp(-phi)
    return (-t1 * sin(a) + t2 * cos(a), t3 * ep + t4 * em, t1 * cos(a) + t2 * sin(a), -t3 * ep + t4 * em)


add(entry("P2.10", ["e13", "e24"], _p210, slots=_slots("t1 t2 t3 t4", 2, "r,rho"), **BIROT1))


def _p211(X, U, p, s):
    y1, y2, u, v = U
    mu = p["mu"]
    Phi, C1, C2, C3 = (s[k](y1, v) for k in ("Phi", "C1", "C2", "C3"))
    Psi = -mu * u * Phi / y1 + C1
    Ups = -Phi * u + C2
    Xi = (mu * mu + y1 * y1) / (2 * y1 * y1) * Phi * u * u - (mu * C1 + y1 * C2) * u / y1 + C3
    return _null(y2, Xi, Phi, Psi, Ups)


add(entry("P2.11", ["e12-e14+λe1+μe3", "e23+e34-μe1+λe3"], _p211, params="lambda:zero,mu:nonzero",
          slots=_slots("Phi C1 C2 C3", 2, "y1,v"), chart="parabolic_pair", chart_args=lambda p: dict(mu=p["mu"])))


def _p211a(X, U, p, s):
    y1, y2, y3, y4 = U
    f = [s[k](y1, y4) for k in ("Phi", "Psi", "Xi", "Theta")]
    return _null_pair(y2, y3, *f)


NULLPAIR = dict(chart="null_pair")
add(entry("P2.11a", ["e12-e14", "e23+e34"], _p211a, slots=_slots("Phi Psi Xi Theta", 2, "y1,y4"), **NULLPAIR))


def _log_form(args):
    def build(X, U, p, s):
        y1, y2, u, v = U
        a = args(u, v)
        F1, F2, F3, F4 = (s[f"Phi{k}"](*a) for k in (1, 2, 3, 4))
        A1 = y1 * y2 * F1 + F3
        common = y2 * F3 + F2 / y1
        A2 = 0.5 * y1 * (y2 * y2 - 1.0) * F1 + common
        A4 = 0.5 * y1 * (y2 * y2 + 1.0) * F1 + common
        return A1, A2, F4, A4

    return build


add(entry("P2.12", ["e12-e14", "e24+λe3"], _log_form(lambda u, v: (u, v)), params="lambda",
          slots=_slots("Phi1 Phi2 Phi3 Phi4", 2, "u,v"), chart="parabolic_log", chart_args=lambda p: dict(lam=p["lambda"])))

# ---------------------------------------------------------------- dimension 3

add(entry("P3.1a", ["e1", "e2", "e3"], _free(lambda X, U, p: (X[3],)), slots=_slots(A4, 1, "x4")))
add(entry("P3.1b", ["e1", "e2", "e4"], _free(lambda X, U, p: (X[2],)), slots=_slots(A4, 1, "x3")))
add(entry("P3.1c", ["e1", "e3", "e2+e4"], _free(lambda X, U, p: (_d(X),)), slots=_slots(A4, 1, "x2-x4")))


def _p32(X, U, p, s):
    x1, x2, x3, x4 = X
    L = p["lambda"]
    if L == 0.0:
        return 0.0, s["A2"](x2, x4), 0.0, s["A4"](x2, x4)
    a = x2 / L
    C1, C2 = s["C1"](x4), s["C2"](x4)
    return C1 * sin(a) + C2 * cos(a), s["A2"](x4), C1 * cos(a) - C2 * sin(a), s["A4"](x4)


add(entry("P3.2", ["e13+λe2", "e1", "e3"], _p32, params="lambda:branch", branch="lambda",
          slots=_slots("C1 C2 A2 A4", 1, "x4", "ne0") + _slots("A2 A4", 2, "x2,x4", "eq0")))


def _p33(X, U, p, s):
    x1, x2, x3, x4 = X
    a = x4 / p["mu"]
    C1, C2 = s["C1"](x2), s["C2"](x2)
    return C1 * sin(a) + C2 * cos(a), s["A2"](x2), C1 * cos(a) - C2 * sin(a), s["A4"](x2)


add(entry("P3.3", ["e13+μe4", "e1", "e3"], _p33, params="mu:nonzero", slots=_slots("C1 C2 A2 A4", 1, "x2")))


def _p34(X, U, p, s):
    u, v = _s(X), _d(X)
    a = u / (2 * p["lambda"])
    C1, C2 = s["C1"](v), s["C2"](v)
    return C1 * sin(a) + C2 * cos(a), s["A2"](v), C1 * cos(a) - C2 * sin(a), s["A4"](v)


add(entry("P3.4", ["e13+λe2+λe4", "e1", "e3"], _p34, params="lambda:nonzero", slots=_slots("C1 C2 A2 A4", 1, "x2-x4")))


def _p35(X, U, p, s):
    y1, r, y3, phi = U
    A2, A4 = _boost(s["C1"](r), s["C2"](r), phi)
    return s["A1"](r), A2, s["A3"](r), A4


HYP0 = dict(chart="hyperbolic", chart_args=lambda p: dict(lam=0.0))
add(entry("P3.5", ["e24", "e1", "e3"], _p35, slots=_slots("A1 A3 C1 C2", 1, "rho"), **HYP0))


def _p36(X, U, p, s):
    x1, x2, x3, x4 = X
    L = p["lambda"]
    if L == 0.0:
        return s["A1"](x1, x3), 0.0, s["A3"](x1, x3), 0.0
    A2, A4 = _boost(s["C1"](x1), s["C2"](x1), x3 / L)
    return s["A1"](x1), A2, s["A3"](x1), A4


add(entry("P3.6", ["e24+λe3", "e2", "e4"], _p36, params="lambda:branch", branch="lambda",
          slots=_slots("A1 A3 C1 C2", 1, "x1", "ne0") + _slots("A1 A3", 2, "x1,x3", "eq0")))
add(entry("P3.7", ["e24+λe3", "e1", "e2-e4"], _helix_boost(lambda y1, w: (w,)), params="lambda",
          slots=_slots("a1 a2 A1 A3", 1, "y3-λ ln r"), **HYP_A))


def _null_of(arg):
    def build(X, U, p, s):
        a = arg(U, p)
        return _null(U[1], s["C1"](*a), s["C2"](*a), s["C3"](*a), s["A3"](*a))

    return build


add(entry("P3.8", ["e12-e14+λe2", "e3", "e2-e4"], _null_of(lambda U, p: (U[0],)), params="lambda:nonzero",
          slots=_slots("A3 C1 C2 C3", 1, "y1"), **PARA_C))


def _p39a(X, U, p, s):
    y1, y2, y3, y4 = U
    C1 = s["C1"](y1, y3)
    return 0.0, C1, s["A3"](y1, y3), C1


def _p39b(X, U, p, s):
    y1, y2, y3, y4 = U
    mu = p["mu"]
    F, P, Q = s["Phi"](y1), s["Psi"](y1), s["Xi"](y1)
    C1 = y3 * y3 * F / (2 * mu * mu) + y3 * P / mu + Q
    C3 = y3 * F / mu + P
    return _null(y2, C1, F, C3, s["A3"](y1))


_G39 = ["e12-e14+λe2+μe3", "e1", "e2-e4"]
add(entry("P3.9a", _G39, _p39a, params="lambda:zero,mu:zero", slots=_slots("A3 C1", 2, "y1,y3"),
          chart="parabolic_a", **_P14))
add(entry("P3.9b", _G39, _p39b, params="lambda:zero,mu:nonzero", slots=_slots("A3 Phi Psi Xi", 1, "y1"),
          chart="parabolic_b", chart_args=lambda p: dict(mu=p["mu"]), **_P14))
add(entry("P3.9c", _G39, _null_of(lambda U, p: (U[2],)), params="lambda:nonzero,mu:zero",
          slots=_slots("A3 C1 C2 C3", 1, "y3"), chart="parabolic_c", chart_args=lambda p: dict(lam=p["lambda"]), **_P14))


def _p310b(X, U, p, s):
    y1, y2, y3, y4 = U
    mu = p["mu"]
    F, P, Q = s["Phi"](y1), s["Psi"](y1), s["Xi"](y1)
    C1 = y3 * y3 * F / (2 * mu * mu * y1 * y1) + y3 * P / (mu * y1) + Q
    C3 = y3 * F / (mu * y1) + P
    return _null(y2, C1, F, C3, s["A3"](y1))


_G310 = ["e12-e14+λe2", "e1+μe3", "e2-e4"]
add(entry("P3.10a", _G310, _null_of(lambda U, p: (p["mu"] * U[0] - 2 * p["lambda"] * U[2],)),
          params="lambda:nonzero,mu:nonzero", slots=_slots("A3 C1 C2 C3", 1, "μy1-2λy3"), **PARA_C))
add(entry("P3.10b", _G310, _p310b, params="lambda:zero,mu:nonzero", slots=_slots("A3 Phi Psi Xi", 1, "y1"),
          chart="parabolic_a"))


def _p311(X, U, p, s):
    r, rho, th, phi = U
    A1, A3 = _rot(s["C1"](rho), s["C2"](rho), phi)
    A2, A4 = _boost(s["C3"](rho), s["C4"](rho), p["lambda"] * phi)
    return A1, A2, A3, A4


add(entry("P3.11", ["e13+λe24", "e1", "e3"], _p311, params="lambda:nonzero", slots=_slots("C1 C2 C3 C4", 1, "rho"), **BIROT))


def _p312(X, U, p, s):
    r, rho, th, phi = U
    a1, a2, a3, a4 = (s[f"a{k}"](r) for k in (1, 2, 3, 4))
    a = th - phi
    b = p["lambda"] * a
    return (a1 * sin(a) + a2 * cos(a), a3 * sinh(b) + a4 * cosh(b),
            -a1 * cos(a) + a2 * sin(a), a3 * cosh(b) + a4 * sinh(b))


add(entry("P3.12", ["e13+λe24", "e2", "e4"], _p312, params="lambda:nonzero", slots=_slots("a1 a2 a3 a4", 1, "r"), **BIROT))


def _p313(X, U, p, s):
    r, rho, th, phi = U
    t1, t2, C, D = s["t1"](r), s["t2"](r), s["C"](r), s["D"](r)
    a = th - phi
    up = rho * C * exp(phi)
    dn = D * exp(-phi) / rho
    return -t1 * sin(a) + t2 * cos(a), up + dn, t1 * cos(a) + t2 * sin(a), -up + dn


add(entry("P3.13", ["e13", "e24", "e2-e4"], _p313, slots=_slots("t1 t2 C D", 1, "r"), **BIROT1))


def _p314(X, U, p, s):
    u, phi, psi, w = U
    C3 = s["C3"](u)
    A2 = psi * C3 + s["C1"](u)
    return C3, A2, 0.0, A2


add(entry("P3.14", ["e12-e14+λe1+μe3", "e23+e34+νe1+λe3", "e2-e4"], _p314, params="lambda,mu,nu",
          slots=_slots("C1 C3", 1, "u"), chart="null_helix_pair",
          chart_args=lambda p: dict(lam=p["lambda"], mu=p["mu"], nu=p["nu"])))
add(entry("P3.15", ["e12-e14", "e24", "e3"], _log_form(lambda u, v: (v,)),
          slots=_slots("Phi1 Phi2 Phi3 Phi4", 1, "v"), chart="parabolic_log", chart_args=lambda p: dict(lam=0.0)))


def _p316(X, U, p, s):
    v, y2, u, y4 = U
    L = p["lambda"]
    F1, F2, F3, F4 = (s[f"Phi{k}"](u) for k in (1, 2, 3, 4))
    ev, emv = exp(v), exp(-v)
    C1 = F3 * emv - 0.5 * F1 * ev + v * emv * (0.5 * L * L * v * F1 + L * F2)
    C2 = F1 * ev
    C3 = L * v * F1 + F2
    return _null(y2, C1, C2, C3, F4)


add(entry("P3.16", ["e12-e14", "e24+λe1+μe3", "e2-e4"], _p316, params="lambda,mu",
          slots=_slots("Phi1 Phi2 Phi3 Phi4", 1, "u"), chart="parabolic_exp", chart_args=lambda p: dict(mu=p["mu"])))


def _p317(X, U, p, s):
    y1, y2, y3, y4 = U
    C1, C2, C3, C4 = (s[f"C{k}"](y4) for k in (1, 2, 3, 4))
    return _null_pair(y2, y3, y1 * C1, C2, C3, 0.5 * y1 * C1 + C4 / y1)


add(entry("P3.17", ["e12-e14", "e23+e34", "e24"], _p317, slots=_slots("C1 C2 C3 C4", 1, "y4"), **NULLPAIR))


def _p318a(X, U, p, s):
    y1, y2, y3, y4 = U
    a = y4 / (2 * p["lambda"] * y1)
    C1, C2, C3, C4 = (s[f"C{k}"](y1) for k in (1, 2, 3, 4))
    Psi = C1 * cos(a) + C2 * sin(a)
    Xi = -C1 * sin(a) + C2 * cos(a)
    return _null_pair(y2, y3, C3, Psi, Xi, C4)


def _p318b(X, U, p, s):
    y1, y2, y3, y4 = U
    return _null_pair(y2, y3, s["Phi"](y1, y4), 0.0, 0.0, s["Theta"](y1, y4))


_G318 = ["e12-e14", "e23+e34", "e13+λe2-λe4"]
add(entry("P3.18a", _G318, _p318a, params="lambda:nonzero", slots=_slots("C1 C2 C3 C4", 1, "y1"), **NULLPAIR))
add(entry("P3.18b", _G318, _p318b, params="lambda:zero", slots=_slots("Phi Theta", 2, "y1,y4"), **NULLPAIR))


def _p319(X, U, p, s):
    y1, y2, y3, y4 = U
    b = ln(y1) / p["lambda"]
    C1, C2, C3, C4 = (s[f"C{k}"](y4) for k in (1, 2, 3, 4))
    Psi = C3 * cos(b) + C4 * sin(b)
    Xi = -C3 * sin(b) + C4 * cos(b)
    return _null_pair(y2, y3, y1 * C1, Psi, Xi, 0.5 * y1 * C1 + C2 / y1)


add(entry("P3.19", ["e12-e14", "e23+e34", "e13+λe24"], _p319, params="lambda:nonzero",
          slots=_slots("C1 C2 C3 C4", 1, "y4"), **NULLPAIR))


def _rho(X):
    return sqrt(X[0] * X[0] + X[1] * X[1] + X[2] * X[2])


def _rho_ok(x, p=None):
    return np.sqrt(x[..., 0] ** 2 + x[..., 1] ** 2 + x[..., 2] ** 2) >= MARGIN


def _u(X):
    return sqrt(X[0] * X[0] + X[1] * X[1] - X[3] * X[3])


def _u_ok(x, p=None):
    return x[..., 0] ** 2 + x[..., 1] ** 2 - x[..., 3] ** 2 >= MARGIN


add(entry("P3.20", ["e12", "e13", "e23"], lambda X, U, p, s: (0.0, 0.0, 0.0, s["A4"](_rho(X), X[3])),
          slots=_slots("A4", 2, "rho,x4"), domain=_rho_ok))
add(entry("P3.21", ["e12", "e14", "e24"], lambda X, U, p, s: (0.0, 0.0, s["A3"](_u(X), X[2]), 0.0),
          slots=_slots("A3", 2, "u,x3"), domain=_u_ok))

# ---------------------------------------------------------------- dimension 4

add(entry("P4.1", list(T), lambda X, U, p, s: (p["A1"], p["A2"], p["A3"], p["A4"]), consts=_consts(A4)))


def _trig_consts(angle):
    def build(X, U, p, s):
        a = angle(X, p)
        C1, C2 = p["C1"], p["C2"]
        return C1 * sin(a) + C2 * cos(a), p["C3"], C1 * cos(a) - C2 * sin(a), p["C4"]

    return build


add(entry("P4.2", ["e13+μe4", "e1", "e2", "e3"], _trig_consts(lambda X, p: X[3] / p["mu"]), params="mu:nonzero",
          consts=_consts("C1 C2 C3 C4")))


def _branch_trig(angle, arg):
    trig = _trig_consts(angle)

    def build(X, U, p, s):
        if p["lambda"] == 0.0:
            a = arg(X)
            return 0.0, s["A2"](a), 0.0, s["A4"](a)
        return trig(X, U, p, s)

    return build


add(entry("P4.3", ["e13+λe2", "e1", "e3", "e4"], _branch_trig(lambda X, p: X[1] / p["lambda"], lambda X: X[1]),
          params="lambda:branch", branch="lambda", consts=_consts("C1 C2 C3 C4", "ne0"), slots=_slots("A2 A4", 1, "x2", "eq0")))
add(entry("P4.4", ["e13+λe2", "e1", "e3", "e2+e4"], _branch_trig(lambda X, p: _d(X) / p["lambda"], _d),
          params="lambda:branch", branch="lambda", consts=_consts("C1 C2 C3 C4", "ne0"),
          slots=_slots("A2 A4", 1, "x2-x4", "eq0")))


def _p45(X, U, p, s):
    d = _d(X)
    return p["C1"], p["C2"] * d + p["C4"] / d, p["C3"], p["C2"] * d - p["C4"] / d


add(entry("P4.5", ["e24", "e1", "e3", "e2+e4"], _p45, consts=_consts("C1 C2 C3 C4"), domain=d_nonzero))


def _p46(X, U, p, s):
    L = p["lambda"]
    if L == 0.0:
        return s["A1"](X[2]), 0.0, s["A3"](X[2]), 0.0
    A2, A4 = _boost(p["C2"], p["C4"], X[2] / L)
    return p["C1"], A2, p["C3"], A4


add(entry("P4.6", ["e24+λe3", "e1", "e2", "e4"], _p46, params="lambda:branch", branch="lambda",
          consts=_consts("C1 C2 C3 C4", "ne0"), slots=_slots("A1 A3", 1, "x3", "eq0")))


def _p47(X, U, p, s):
    d = _d(X)
    a = ln(d) / p["lambda"]
    C1, C3 = p["C1"], p["C3"]
    return (C1 * cos(a) + C3 * sin(a), p["C2"] * d + p["C4"] / d,
            C1 * sin(a) - C3 * cos(a), p["C2"] * d - p["C4"] / d)


add(entry("P4.7", ["e13+λe24", "e1", "e3", "e2+e4"], _p47, params="lambda:nonzero", consts=_consts("C1 C2 C3 C4"),
          domain=d_positive))


def _null_line(arg):
    # invariants of e12-e14+λ(shift) with e1 and e2-e4: constants along the helix parameter
    def build(X, U, p, s):
        t = arg(X)
        L = p["lambda"]
        if L == 0.0:
            F = s["Phi"](t)
            return 0.0, F, s["Psi"](t), F
        C2, C3 = p["C2"], p["C3"]
        A1 = C2 * t / L + C3
        A2 = C2 * t * t / (2 * L * L) + C3 * t / L + p["C4"]
        return A1, A2, p["C1"], A2 + C2

    return build


add(entry("P4.8", ["e12-e14+λe3", "e1", "e2", "e4"], _null_line(lambda X: X[2]), params="lambda:branch",
          branch="lambda", consts=_consts("C1 C2 C3 C4", "ne0"), slots=_slots("Phi Psi", 1, "x3", "eq0")))
add(entry("P4.9", ["e12-e14+λe2", "e1", "e3", "e2-e4"], _null_line(_s), params="lambda:branch",
          branch="lambda", consts=_consts("C1 C2 C3 C4", "ne0"), slots=_slots("Phi Psi", 1, "x2+x4", "eq0")))


def _p410(X, U, p, s):
    y1, r, y3, phi = U
    A2, A4 = _boost(s["C1"](r), s["C2"](r), phi)
    return 0.0, A2, 0.0, A4


add(entry("P4.10", ["e13", "e24", "e1", "e3"], _p410, slots=_slots("C1 C2", 1, "rho"), **HYP0))


def _p411(X, U, p, s):
    r, y2, phi, y4 = U
    C1, C2 = s["C1"](r), s["C2"](r)
    return C1 * sin(phi) + C2 * cos(phi), 0.0, C1 * cos(phi) - C2 * sin(phi), 0.0


add(entry("P4.11", ["e13", "e24", "e2", "e4"], _p411, slots=_slots("C1 C2", 1, "r"),
          chart="elliptic", chart_args=lambda p: dict(lam=0.0, mu=0.0)))

_G412 = ["e12-e14+μe3", "e23+e34+νe2", "e1", "e2-e4"]


def _p412a(X, U, p, s):
    t = _s(X)
    P = s["Psi"](t)
    A2 = s["Phi"](t) - X[2] * P / t
    return 0.0, A2, P, A2


def _p412b(X, U, p, s):
    t = _s(X)
    nu = p["nu"]
    u = X[2] - t * t / (2 * nu)
    P = s["Psi"](u)
    A2 = s["Phi"](u) - t * P / nu
    return 0.0, A2, P, A2


def _p412c(X, U, p, s):
    t = _s(X)
    mu = p["mu"]
    F = s["Phi"](t)
    A2 = X[2] * F / mu + s["Psi"](t)
    return F, A2, -t * F / mu, A2


add(entry("P4.12a", _G412, _p412a, params="mu:zero,nu:zero", slots=_slots("Phi Psi", 1, "x2+x4"), domain=s_positive))
add(entry("P4.12b", _G412, _p412b, params="mu:zero,nu:nonzero", slots=_slots("Phi Psi", 1, "x3-(x2+x4)^2/(2ν)")))
add(entry("P4.12c", _G412, _p412c, params="mu:nonzero,nu:zero", slots=_slots("Phi Psi", 1, "x2+x4")))
add(entry("P4.12d", _G412, lambda X, U, p, s: (0.0, p["K"], 0.0, p["K"]), params="mu:nonzero,nu:nonzero",
          consts=_consts("K")))


def _p413(X, U, p, s):
    x1, x2, x3, x4 = X
    t = _s(X)
    L = p["lambda"]
    K1, K2, K3, K4 = p["K1"], p["K2"], p["K3"], p["K4"]
    ls = ln(t)
    C1 = K1 * t
    C2 = K1 * L * ls + K2
    C3 = (K1 * L * L * ls * ls + 2 * K2 * L * ls) / (2 * t) - 0.5 * K1 * t + K3 / t
    A1 = -x1 * C1 / t + C2
    # the first term needs s^2 in the denominator for invariance under e12-e14
    A2 = x1 * x1 * C1 / (2 * t * t) - x1 * C2 / t + C3
    return A1, A2, K4, A2 + C1


K4 = _consts("K1 K2 K3 K4")
add(entry("P4.13", ["e12-e14", "e24+λe1", "e3", "e2-e4"], _p413, params="lambda", consts=K4, domain=s_positive))


def _p414a(X, U, p, s):
    x1, x2, x3, x4 = X
    t = _s(X)
    L, nu = p["lambda"], p["nu"]
    K1, K2, K3, K4_ = p["K1"], p["K2"], p["K3"], p["K4"]
    ls = ln(t)
    C1 = K1 * t
    C2 = -K1 * L * ls / nu + K2
    C3 = (K1 * L * L * ls * ls - 2 * K2 * L * nu * ls) / (2 * nu * nu * t) - 0.5 * K1 * t + K3 / t
    w = x3 - nu * x1
    A1 = w * C1 / (nu * t) + C2
    A2 = w * w * C1 / (2 * nu * nu * t * t) + w * C2 / (nu * t) + C3
    return A1, A2, K4_, A2 + C1


def _p414b(X, U, p, s):
    t = _s(X)
    a = X[2] - p["lambda"] * ln(t)
    A2 = s["Phi"](a) / t
    return 0.0, A2, s["Psi"](a), A2


_G414 = ["e12-e14", "e24+λe3", "e1+νe3", "e2-e4"]
add(entry("P4.14a", _G414, _p414a, params="lambda,nu:nonzero", consts=K4, domain=s_positive))
add(entry("P4.14b", _G414, _p414b, params="lambda,nu:zero", slots=_slots("Phi Psi", 1, "x3-λ ln(x2+x4)"),
          domain=s_positive))


def _p415(X, U, p, s):
    x1, x2, x3, x4 = X
    t = _s(X)
    L = p["lambda"]
    K1, K2, K3, K4_ = p["K1"], p["K2"], p["K3"], p["K4"]
    ls = ln(t)
    C1 = K1 * t
    C2 = -K1 * L * ls + K2
    C3 = K3
    C4 = (-K1 * L * L * ls * ls + 2 * K2 * L * ls) / (2 * t) + 0.5 * K1 * t + K4_ / t
    A1 = x1 * C1 / t + C2
    A2 = -(x1 * x1 + x3 * x3) * C1 / (2 * t * t) - (x1 * C2 + x3 * C3) / t + C4
    A3 = x3 * C1 / t + C3
    return A1, A2, A3, A2 - C1


add(entry("P4.15", ["e12-e14", "e23+e34", "e24+λe1", "e2-e4"], _p415, params="lambda", consts=K4, domain=s_positive))


def _sym_null(X, U, p, s):
    F = s["Phi"](_s(X))
    return 0.0, F, 0.0, F


add(entry("P4.16", ["e12-e14+λe3", "e23+e34+λe1", "e13", "e2-e4"], _sym_null, params="lambda",
          slots=_slots("Phi", 1, "x2+x4")))


def _p417(X, U, p, s):
    x1, x2, x3, x4 = X
    t = _s(X)
    K1, K2, K3, K4_ = p["K1"], p["K2"], p["K3"], p["K4"]
    a = ln(t) / p["lambda"]
    Psi = K3 * cos(a) + K4_ * sin(a)
    Xi = -K3 * sin(a) + K4_ * cos(a)
    A2 = -K1 * (x1 * x1 + x3 * x3) / (2 * t) - (x1 * Psi + x3 * Xi) / t + 0.5 * K1 * t + K2 / t
    return K1 * x1 + Psi, A2, K1 * x3 + Xi, A2 - K1 * t


add(entry("P4.17", ["e12-e14", "e23+e34", "e13+λe24", "e2-e4"], _p417, params="lambda:nonzero", consts=K4,
          domain=s_positive))
add(entry("P4.18", ["e12", "e13", "e23", "e4"], lambda X, U, p, s: (0.0, 0.0, 0.0, s["A4"](_rho(X))),
          slots=_slots("A4", 1, "rho"), domain=_rho_ok))
add(entry("P4.19", ["e12", "e14", "e24", "e3"], lambda X, U, p, s: (0.0, 0.0, s["C"](_u(X)), 0.0),
          slots=_slots("C", 1, "u"), domain=_u_ok))


def _lightcone(C, D, X):
    x1, x2, x3, x4 = X
    t = _s(X)
    A2 = 0.5 * C * (t - (x1 * x1 + x3 * x3) / t) + D / t
    return x1 * C, A2, x3 * C, A2 - t * C


def _interval(X):
    return X[0] * X[0] + X[1] * X[1] + X[2] * X[2] - X[3] * X[3]


def _p420(X, U, p, s):
    y4 = _interval(X)
    return _lightcone(s["C"](y4), s["D"](y4), X)


add(entry("P4.20", ["e12-e14", "e23+e34", "e13", "e24"], _p420, slots=_slots("C D", 1, "x1²+x2²+x3²-x4²"),
          domain=s_positive))

# ---------------------------------------------------------------- dimension 5

# e24 leaves only the (A, 0, B, 0) form invariant
add(entry("P5.1", ["e24"] + list(T), lambda X, U, p, s: (p["A"], 0.0, p["B"], 0.0), consts=_consts("A B")))
add(entry("P5.2", ["e13+λe24"] + list(T), None, params="lambda:nonzero", empty=True, parent="P4.1",
          extending=("e13+λe24",), statement="empty: only the zero field"))
add(entry("P5.3", ["e12-e14"] + list(T), lambda X, U, p, s: (0.0, p["A"], p["B"], p["A"]), consts=_consts("A B")))


def _p54(X, U, p, s):
    d = _d(X)
    return 0.0, p["K1"] * d + p["K2"] / d, 0.0, p["K1"] * d - p["K2"] / d


add(entry("P5.4", ["e13", "e24", "e1", "e3", "e2+e4"], _p54, consts=_consts("K1 K2"), domain=d_nonzero))


def _p55(X, U, p, s):
    t = _s(X)
    L = p["lambda"]
    if L == 0.0:
        F = s["Phi"](t)
        return 0.0, F, 0.0, F
    A2 = -p["K1"] * t / L + p["K2"]
    return 0.0, A2, p["K1"], A2


add(entry("P5.5", ["e12-e14", "e23+e34+λe2", "e1", "e3", "e2-e4"], _p55, params="lambda:branch", branch="lambda",
          consts=_consts("K1 K2", "ne0"), slots=_slots("Phi", 1, "x2+x4", "eq0")))


def _p56(X, U, p, s):
    L = p["lambda"]
    if L == 0.0:
        return 0.0, 0.0, s["Phi"](X[2]), 0.0
    A2 = p["K1"] * exp(-X[2] / L)
    return 0.0, A2, p["K2"], A2


add(entry("P5.6", ["e12-e14", "e24+λe3", "e1", "e2", "e4"], _p56, params="lambda:branch", branch="lambda",
          consts=_consts("K1 K2", "ne0"), slots=_slots("Phi", 1, "x3", "eq0")))


def _p57(X, U, p, s):
    A2 = p["B"] / _s(X)
    return 0.0, A2, p["C"], A2


add(entry("P5.7", ["e12-e14", "e24", "e1", "e3", "e2-e4"], _p57, consts=_consts("B C"), domain=s_positive))
def _p58(X, U, p, s):
    # the subfamily of P4.12a that is also invariant under e24+λe3
    t = _s(X)
    C = p["C"]
    A2 = (p["lambda"] * C * ln(t) + p["B"] - X[2] * C) / t
    return 0.0, A2, C, A2


add(entry("P5.8", ["e12-e14", "e23+e34", "e24+λe3", "e1", "e2-e4"], _p58, params="lambda", consts=_consts("B C"),
          domain=s_positive))
add(entry("P5.9", ["e12-e14", "e23+e34", "e13", "e24", "e2-e4"],
          lambda X, U, p, s: _lightcone(p["C"], p["D"], X), consts=_consts("C D"), domain=s_positive))

# ---------------------------------------------------------------- dimension 6

add(entry("P6.1", ["e12", "e13", "e23", "e14", "e24", "e34"], None, empty=True, parent="P3.20",
          extending=("e14", "e24", "e34"), statement="empty: only the zero field"))
add(entry("P6.2", ["e13", "e24"] + list(T), None, empty=True, parent="P5.1", extending=("e13",),
          statement="empty: only the zero field"))
add(entry("P6.3", ["e12-e14", "e23+e34"] + list(T), lambda X, U, p, s: (0.0, p["A"], 0.0, p["A"]), consts=_consts("A")))
# the e24 condition forces the (0, 0, B, 0) form
add(entry("P6.4", ["e12-e14", "e24"] + list(T), lambda X, U, p, s: (0.0, 0.0, p["B"], 0.0), consts=_consts("B")))


def _p65(X, U, p, s):
    if p["lambda"] == 0.0:
        return _sym_null(X, U, p, s)
    return 0.0, p["A"], 0.0, p["A"]


add(entry("P6.5", ["e12-e14", "e23+e34", "e13+λe2", "e1", "e3", "e2-e4"], _p65, params="lambda:branch",
          branch="lambda", consts=_consts("A", "ne0"), slots=_slots("Phi", 1, "x2+x4", "eq0")))


def _b_over_s(X, U, p, s):
    A2 = p["B"] / _s(X)
    return 0.0, A2, 0.0, A2


add(entry("P6.6", ["e12-e14", "e23+e34", "e24", "e1", "e3", "e2-e4"], _b_over_s, consts=_consts("B"), domain=s_positive))
add(entry("P6.7", ["e12-e14", "e23+e34", "e13+λe24", "e1", "e3", "e2-e4"], _b_over_s, params="lambda",
          consts=_consts("B"), domain=s_positive))
add(entry("P6.8", ["e12", "e13", "e23", "e1", "e2", "e3"], lambda X, U, p, s: (0.0, 0.0, 0.0, s["Phi"](X[3])),
          slots=_slots("Phi", 1, "x4")))
add(entry("P6.9", ["e12", "e14", "e24", "e1", "e2", "e4"], lambda X, U, p, s: (0.0, 0.0, s["Phi"](X[2]), 0.0),
          slots=_slots("Phi", 1, "x3")))

register(ENTRIES)
