"""Command-line interface: list, verify, detect, appendix.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
Config files are JSON objects (or lists of objects) with the keys
``class``, ``params``, ``slots``, ``points``, ``seed``, ``tol``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import verify as V
from .catalog import registry as reg
from .catalog.presets import example_slots
from .catalog.slots import constant_slot, slot_from_table
from .errors import MinkpotError
from .geometry import BASIS_LABELS, TwoFormField, exterior_field, parse_generator

CSV_HEADER = ["class", "dim", "points", "max_residual", "closedness_max", "detected_dim", "pass", "seed"]
CONFIG_KEYS = {"class", "params", "slots", "points", "seed", "tol"}
MAX_DIM = 6
# exact dimensions of the closed invariant classes under genericity
C_DIMENSIONS = {"C3.19": 3, "C4.16": 4, "C4.17": 4, "C4.20": 4, "C5.9": 5, "C6.5": 6, "C6.7": 6}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    cls: str
    params: dict = field(default_factory=dict)
    slots: dict | None = None
    points: int = 100
    seed: int = 42
    tol: float = V.TOL


# -- config ---------------------------------------------------------------------

def _parse_slots(cid: str, raw) -> dict | None:
    if raw is None:
        return None
    if raw == "example":
        return example_slots(str(reg.ClassId.parse(cid)))
    if isinstance(raw, list):
        try:
            raw = {d["label"]: d["coeffs"] for d in raw}
        except (KeyError, TypeError):
            raise ConfigError("slot list entries need 'label' and 'coeffs'") from None
    if not isinstance(raw, dict):
        raise ConfigError("slots must be a table, a list of tables or the preset \"example\"")
    out = {}
    for label, table in raw.items():
        if isinstance(table, (int, float)):
            out[label] = table
        elif isinstance(table, dict):
            arity = len(str(next(iter(table), "0")).split(",")) if table else 1
            out[label] = slot_from_table(table, arity, label)
        else:
            raise ConfigError(f"slot {label}: expected a coefficient table")
    return out


def config_from_dict(d: dict) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(d) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "class" not in d:
        raise ConfigError("config needs a 'class' key")
    cid = str(reg.ClassId.parse(d["class"]))
    params = d.get("params", {}) or {}
    if not isinstance(params, dict) or not all(isinstance(v, (int, float)) for v in params.values()):
        raise ConfigError("params must map names to numbers")
    return RunConfig(cid, {k: float(v) for k, v in params.items()}, _parse_slots(cid, d.get("slots")),
                     int(d.get("points", 100)), int(d.get("seed", 42)), float(d.get("tol", V.TOL)))


def load_configs(path: str) -> list[RunConfig]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    return [config_from_dict(d) for d in (data if isinstance(data, list) else [data])]


def _param_args(pairs) -> dict:
    out = {}
    for item in pairs or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"--param expects name=value, got {item!r}")
        try:
            out[name.strip()] = float(val)
        except ValueError:
            raise ConfigError(f"--param {name}: not a number") from None
    return out


# -- output ---------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def _report_row(r: V.VerificationReport) -> list:
    try:
        dim = reg.ClassId.parse(r.class_id).dim
    except MinkpotError:
        dim = None
    return [r.class_id, dim, r.n_points, r.max_residual, r.closedness_max, r.detected_dim, r.passed, r.seed]


def render_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.to_dict(), ensure_ascii=False) + "\n" for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in reports:
            row = _report_row(r)
            row[6] = "true" if r.passed else "false"
            w.writerow([("" if v is None else v) for v in row])
        return buf.getvalue()
    head = f"{'class':<14}{'dim':>4}{'points':>8}{'max_residual':>14}{'closedness':>12}{'det':>5}  {'status':<12}seed"
    lines = [head]
    for r in reports:
        c, dim, n, res, clo, det, _, seed = _report_row(r)
        note = f"  {r.note}" if r.note and r.note != r.status else ""
        lines.append(f"{c:<14}{_fmt(dim):>4}{n:>8}{_fmt(res):>14}{_fmt(clo):>12}{_fmt(det):>5}  {r.status:<12}{seed}{note}")
    return "\n".join(lines) + "\n"


# -- commands -------------------------------------------------------------------

def cmd_list(args) -> int:
    if args.dim is not None and not 1 <= args.dim <= MAX_DIM:
        raise ConfigError(f"dimension out of range 1..{MAX_DIM}")
    rows = [e.summary() for e in reg.list_classes(args.kind, args.dim)]
    if args.format == "json":
        sys.stdout.write("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows))
        return 0
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["id", "dim", "generators", "params", "slots", "empty", "statement"])
        for r in rows:
            w.writerow([r["id"], r["dim"], " ; ".join(r["generators"]), " ; ".join(r["params"]),
                        " ; ".join(f"{k}/{v}" for k, v in r["slot_arities"].items()), r["empty"], r["statement"]])
        return 0
    for r in rows:
        slots = ", ".join(f"{k}/{v}" for k, v in r["slot_arities"].items()) or "-"
        flag = "EMPTY" if r["empty"] else ""
        print(f"{r['id']:<8}{r['dim']:>2}  {flag:<6}{', '.join(r['generators']):<44}"
              f"params: {', '.join(r['params']) or '-'}  slots: {slots}  {r['statement']}")
    return 0


def _verify_one(cfg: RunConfig, detect: bool) -> V.VerificationReport:
    params = cfg.params if (cfg.params or cfg.slots is not None) else None
    if params is not None:
        entry = reg.get_entry(cfg.cls, params)
        params = reg.check_params(entry, params)
        if cfg.slots is not None:
            reg.check_slots(entry, params, cfg.slots)
    return V.verify_class(cfg.cls, cfg.seed, cfg.points, tol=cfg.tol, params=params, slots=cfg.slots, detect=detect)


def cmd_verify(args) -> int:
    if args.all:
        configs = [RunConfig(str(e.id), points=args.points, seed=args.seed, tol=args.tol) for e in reg.all_entries()]
    elif args.config:
        configs = load_configs(args.config)
    elif args.cls:
        configs = [RunConfig(str(reg.ClassId.parse(args.cls)), _param_args(args.param), None, args.points, args.seed,
                             args.tol)]
    else:
        raise ConfigError("verify needs --all, --class or --config")
    if not args.all:
        # fail fast on config problems before any work
        for cfg in configs:
            entry = reg.get_entry(cfg.cls, cfg.params or None)
            if cfg.params:
                reg.check_params(entry, cfg.params)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = list(pool.map(lambda c: _verify_one(c, args.detect), configs))
    sys.stdout.write(render_reports(reports, args.format))
    return 0 if all(r.passed for r in reports) else 1


def _detect_field(cfg: RunConfig):
    entry = reg.get_entry(cfg.cls, cfg.params or None)
    if entry.empty:
        raise ConfigError(f"{entry.id} is empty; there is no field to inspect")
    if cfg.params or cfg.slots is not None:
        p = reg.check_params(entry, cfg.params)
        s = cfg.slots if cfg.slots is not None else reg.draw_slots(entry, p, reg.class_rng(entry.id, cfg.seed, 1))
        field_ = reg.instantiate(entry.id, p, s)
    else:
        field_, p = V._instance(entry, cfg.seed, 1)
    pts = V.sample_domain(entry, V.DETECT_POINTS, reg.class_rng(entry.id, cfg.seed, 1, 31), p)
    return entry, p, field_, pts


def cmd_detect(args) -> int:
    if args.zero:
        zero = TwoFormField(lambda X: [0.0] * 6)
        pts = np.random.default_rng(args.seed).uniform(-V.BOX, V.BOX, size=(V.DETECT_POINTS, 4))
        sb, gens, label = V.detect_symmetry_algebra(zero, pts), [], "zero field"
    else:
        if args.config:
            cfgs = load_configs(args.config)
            if len(cfgs) != 1:
                raise ConfigError("detect takes a single config object")
            cfg = cfgs[0]
        elif args.cls:
            cfg = RunConfig(str(reg.ClassId.parse(args.cls)), _param_args(args.param), None, seed=args.seed)
        else:
            raise ConfigError("detect needs --class, --config or --zero")
        entry, p, field_, pts = _detect_field(cfg)
        sb = V.detect_symmetry_algebra(field_, pts)
        gens = entry.generators
        label = f"{entry.id} " + ", ".join(f"{k}={v:g}" for k, v in p.items())
        contained = all(sb.contains(parse_generator(g, p)) <= 1e-6 for g in gens)
    if args.format == "json":
        out = {"field": label.strip(), "dim": sb.dim, "basis_labels": list(BASIS_LABELS),
               "basis": sb.coefficients().tolist(), "singular_values": [float(v) for v in sb.singular_values]}
        if gens:
            out["contains_class_algebra"] = contained
        print(json.dumps(out, ensure_ascii=False))
        return 0
    print(f"field: {label.strip()}")
    print(f"dim = {sb.dim}")
    if gens:
        verdict = "contains" if contained else "does NOT contain"
        print(f"dim ≥ {len(gens)}; {verdict} {', '.join(gens)}")
    print("basis (" + " ".join(f"{lb:>8}" for lb in BASIS_LABELS) + ")")
    for row in sb.coefficients():
        print("       " + " ".join(f"{v:8.4f}" for v in row))
    print("singular values: " + " ".join(f"{v:.3e}" for v in sb.singular_values))
    return 0


def _c319_example_row(seed: int, phi_const: float | None) -> V.VerificationReport:
    phi = None if phi_const is None else constant_slot(phi_const, 1, "phi")
    r = V.appendix_crosscheck("C319_example", seed, phi=phi)
    A = reg.instantiate("P3.19", {"lambda": 1.0}, example_slots("P3.19") if phi is None else
                        {"C1": constant_slot(0.0, 1), "C2": constant_slot(0.0, 1), "C3": constant_slot(0.0, 1),
                         "C4": phi})
    entry = reg.get_entry("P3.19")
    pts = V.sample_domain(entry, V.DETECT_POINTS, reg.class_rng("C319_example", seed, 31), {"lambda": 1.0})
    r.detected_dim = V.detect_symmetry_algebra(exterior_field(A), pts).dim
    if phi is not None:
        r.note = "genericity φ′≠0 violated"
    elif r.detected_dim != 3:
        r.passed = False
        r.note += f"; expected dim 3, got {r.detected_dim}"
    return r


def _c_class_row(cid: str, seed: int, params: dict | None) -> V.VerificationReport:
    if params is not None:
        entry = reg.get_entry(cid, params)
        p = reg.check_params(entry, params)
        s = reg.draw_slots(entry, p, reg.class_rng(entry.id, seed, 1))
        r = V.verify_class(cid, seed, params=p, slots=s, detect=True)
    else:
        r = V.verify_class(cid, seed, detect=True)
    if r.note == "ZERO-FIELD":
        return r
    want = C_DIMENSIONS[cid]
    if r.detected_dim != want:
        r.passed = False
        r.note = f"expected dim {want}, got {r.detected_dim}"
    return r


def cmd_appendix(args) -> int:
    overrides = {"C6.5": {"lambda": args.c65_lambda}} if args.c65_lambda is not None else {}
    if args.c65_lambda not in (None, 0.0):
        overrides["C6.5"].update(C1=1.0, C2=0.5)
    tasks = [lambda: _c319_example_row(args.seed, args.phi_constant),
             lambda: V.appendix_crosscheck("C416_example", args.seed)]
    tasks += [(lambda c=c: _c_class_row(c, args.seed, overrides.get(c))) for c in C_DIMENSIONS]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = list(pool.map(lambda f: f(), tasks))
    sys.stdout.write(render_reports(reports, args.format))
    return 0 if all(r.passed for r in reports) else 1


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minkpot", description="Poincaré-invariant potentials and Maxwell fields")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list catalog classes")
    p.add_argument("--kind", choices=["P", "C"])
    p.add_argument("--dim", type=int)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.set_defaults(func=cmd_list)

    def common(p, fmt=True):
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--jobs", type=int, default=1)
        if fmt:
            p.add_argument("--format", choices=["table", "json", "csv"], default="table")

    p = sub.add_parser("verify", help="verify invariance and closedness")
    p.add_argument("--all", action="store_true")
    p.add_argument("--class", dest="cls")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--config")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--tol", type=float, default=V.TOL)
    p.add_argument("--detect", action="store_true", help="also report the detected symmetry dimension")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("detect", help="detect the symmetry algebra of a field")
    p.add_argument("--class", dest="cls")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--config")
    p.add_argument("--zero", action="store_true", help="inspect the zero field")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("appendix", help="worked examples and the closed invariant classes")
    p.add_argument("--phi-constant", type=float, help="use a constant phi in the P3.19 example")
    p.add_argument("--c65-lambda", type=float, help="override lambda for C6.5")
    common(p)
    p.set_defaults(func=cmd_appendix)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, MinkpotError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
