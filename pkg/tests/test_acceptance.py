"""Acceptance suite: the nine primary criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the summary)
or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import subprocess
import sys
import time

import numpy as np

from minkpot import charts as ch
from minkpot.adscalar import seed_coordinates
from minkpot.catalog import class_rng, draw_params, generators_of, get_entry, list_classes
from minkpot.charts import SAMPLE_PARAMS, get_chart, rectification_residual
from minkpot.geometry import BASIS_LABELS, CovectorFieldInstance, PoincareGenerator, TwoFormField, bracket
from minkpot.verify import (
    appendix_crosscheck,
    certify_emptiness,
    detect_symmetry_algebra,
    detected_dimension,
    verify_class,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEED = 42
C_DIMS = {"C3.19": 3, "C4.16": 4, "C4.17": 4, "C4.20": 4, "C5.9": 5, "C6.5": 6, "C6.7": 6}
_reports: dict = {}


def report(n: int, ok: bool, detail: str):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def contract_reports():
    if not _reports:
        t0 = time.perf_counter()
        _reports["rows"] = [verify_class(e.id, SEED, points=100, draws=3) for e in list_classes()]
        _reports["seconds"] = time.perf_counter() - t0
    return _reports["rows"], _reports["seconds"]


def test_criterion_1_invariance_contract():
    rows, secs = contract_reports()
    live = [r for r in rows if r.class_id.startswith("P") and r.status != "SKIP(EMPTY)"]
    worst = max(r.max_residual for r in live)
    bad = [r.class_id for r in rows if not r.passed]
    ok = not bad and worst <= 1e-9 and len(live) >= 85 and secs < 60
    report(1, ok, f"{len(live)} non-empty P classes x 3 draws x 100 points, max scaled residual {worst:.2e} "
                  f"(tol 1e-9), {secs:.1f}s" + (f", failing {bad}" if bad else ""))


def test_criterion_2_closedness():
    rows, _ = contract_reports()
    worst = max(r.closedness_max for r in rows)
    report(2, worst <= 1e-9, f"max scaled closedness residual {worst:.2e} over {len(rows)} classes (tol 1e-9)")


# random expressions that evaluate identically on arrays and on jets
_UN = [ch.sin, ch.cos, lambda a: ch.exp(a * 0.3), lambda a: ch.ln(a * a + 1.0), lambda a: ch.sqrt(a * a + 0.5),
       lambda a: ch.atan2(a, a * a + 1.0)]


def _make_expr(rng):
    steps = [(int(rng.integers(0, 5)), int(rng.integers(0, 4)), int(rng.integers(0, len(_UN))),
              float(rng.uniform(-1.5, 1.5))) for _ in range(int(rng.integers(2, 7)))]

    def f(X):
        acc = X[0] * 0.5 + X[1] * X[2] - X[3]
        for op, k, u, c in steps:
            if op == 0:
                acc = acc + X[k] * c
            elif op == 1:
                acc = acc * (X[k] * c + 1.0)
            elif op == 2:
                acc = acc / (X[k] * X[k] + 1.0)
            elif op == 3:
                acc = acc - X[k] * X[(k + 1) % 4] * c
            else:
                acc = _UN[u](acc)
        return acc

    return f


def test_criterion_3_ad_oracle():
    rng = np.random.default_rng(SEED)
    h = 1e-5
    E = np.eye(4) * h
    worst1 = worst2 = 0.0
    for _ in range(100):
        f = _make_expr(rng)
        x = rng.uniform(-1.0, 1.0, size=4)
        jet = lambda y: f(seed_coordinates(y[None, :]))  # noqa: E731
        j = jet(x)
        val = lambda y: f(list(y))  # noqa: E731
        g = np.array([(val(x + E[k]) - val(x - E[k])) / (2 * h) for k in range(4)])
        # second derivatives: central differences of the jet gradient
        H = np.stack([(jet(x + E[k]).grad[0] - jet(x - E[k]).grad[0]) / (2 * h) for k in range(4)], axis=1)
        worst1 = max(worst1, np.max(np.abs(j.grad[0] - g)) / max(1.0, np.max(np.abs(g))))
        worst2 = max(worst2, np.max(np.abs(j.hess[0] - H)) / max(1.0, np.max(np.abs(H))))
    report(3, worst1 <= 1e-6 and worst2 <= 1e-6,
           f"100 random compositions, h=1e-5: first-derivative rel. error {worst1:.2e}, second {worst2:.2e} (tol 1e-6)")


def test_criterion_4_algebra_health():
    basis = [PoincareGenerator.basis(lb) for lb in BASIS_LABELS]
    jacobi = 0.0
    ntrip = 0
    for a, b, c in itertools.combinations(basis, 3):
        s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        jacobi = max(jacobi, float(np.max(np.abs(s.coefficients))))
        ntrip += 1
    worst = 0.0
    for e in list_classes():
        for draw in (0, 1):
            p = draw_params(e, class_rng(e.id, SEED, draw), draw)
            gens = generators_of(e.id, p)
            M = np.array([g.coefficients for g in gens]).T
            for a, b in itertools.combinations(gens, 2):
                v = bracket(a, b).coefficients
                coef, *_ = np.linalg.lstsq(M, v, rcond=None)
                worst = max(worst, float(np.linalg.norm(M @ coef - v)))
    report(4, jacobi == 0.0 and worst <= 1e-12,
           f"Jacobi residual {jacobi} over {ntrip} basis triples; worst bracket projection residual {worst:.2e} (tol 1e-12)")


def test_criterion_5_charts():
    rng = np.random.default_rng(SEED)
    rt = rect = 0.0
    n = 0
    for name, plist in SAMPLE_PARAMS.items():
        for p in plist:
            c = get_chart(name, **p)
            u = c.sample_adapted(rng, 1000)
            x = c.forward(u)
            rt = max(rt, float(np.max(np.abs(c.inverse(x) - u) / (1 + np.abs(u)))),
                     float(np.max(np.abs(c.forward(c.inverse(x)) - x) / (1 + np.abs(x)))))
            rect = max(rect, rectification_residual(c, u))
            n += 1
    report(5, rt <= 1e-10 and rect <= 1e-9,
           f"{n} chart/parameter cases x 1000 points: roundtrip {rt:.2e} (tol 1e-10), rectification {rect:.2e} (tol 1e-9)")


def test_criterion_6_emptiness():
    res = {cid: certify_emptiness(cid, trials=100, seed=SEED) for cid in ("P5.2", "P6.1", "P6.2")}
    report(6, all(res.values()), "emptiness certificates (100 trials): "
           + ", ".join(f"{k}={v}" for k, v in res.items()))


def test_criterion_7_appendix():
    r319 = appendix_crosscheck("C319_example", SEED)
    r416 = appendix_crosscheck("C416_example", SEED)
    rows = {cid: verify_class(cid, SEED) for cid in C_DIMS}
    dims = {cid: detected_dimension(cid, SEED, draws=3) for cid in C_DIMS}
    ok = (r319.max_residual <= 1e-9 and r416.max_residual <= 1e-12 and all(r.passed for r in rows.values())
          and dims == C_DIMS)
    report(7, ok, f"C319_example dev {r319.max_residual:.2e}, C416_example dev {r416.max_residual:.2e}, "
                  f"C classes pass {sum(r.passed for r in rows.values())}/7, dims "
                  + " ".join(f"{k}:{v}" for k, v in dims.items()))


def test_criterion_8_detector_sanity():
    rng = np.random.default_rng(SEED)
    x = rng.uniform(-2, 2, size=(40, 4))
    zero = detect_symmetry_algebra(TwoFormField(lambda X: [0.0] * 6), x).dim
    const = detect_symmetry_algebra(CovectorFieldInstance(lambda X: [0.0, 0.0, 0.0, 1.0]), x)
    want = ["e1", "e2", "e3", "e4", "e12", "e13", "e23"]
    const_ok = const.dim == 7 and all(const.contains(PoincareGenerator.basis(lb)) < 1e-8 for lb in want)
    from minkpot.verify import _instance, sample_domain
    entry = get_entry("P3.20")
    A, p = _instance(entry, SEED, 1)
    sb = detect_symmetry_algebra(A, sample_domain(entry, 40, SEED, p))
    so3 = sb.dim >= 3 and all(sb.contains(PoincareGenerator.basis(lb)) < 1e-6 for lb in ("e12", "e13", "e23"))
    report(8, zero == 10 and const_ok and so3,
           f"zero field dim {zero}; constant (0,0,0,1) dim {const.dim}; P3.20 generic dim {sb.dim} containing so(3): {so3}")


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "minkpot.cli", "verify", "--all", "--seed", "42", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    ok = a.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    report(9, ok, f"two runs of verify --all --seed 42 --format json: exit {a.returncode}, "
                  f"{len(a.stdout)} bytes, identical={a.stdout == b.stdout}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
