"""Class identifiers, registry entries and instantiation."""
from __future__ import annotations

import re
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..charts import MARGIN, Chart, get_chart
from ..errors import ArityMismatch, EmptyClass, ParamConstraint, UnknownClass
from ..geometry import CovectorFieldInstance, PoincareGenerator, TwoFormField, everywhere, parse_generator
from .slots import Slot, SlotSpec, constant_slot, random_elementary, random_polynomial

PARAM_MARGIN = 1e-6
SYMBOLS = {"lambda": "λ", "mu": "μ", "nu": "ν"}

_ID = re.compile(r"^([PC])(\d+)\.(\d+)([a-d]?)$")


@dataclass(frozen=True, order=True)
class ClassId:
    kind: str  # "P" potential, "C" Maxwell
    dim: int
    index: int
    variant: str = ""

    @classmethod
    def parse(cls, text) -> ClassId:
        if isinstance(text, ClassId):
            return text
        m = _ID.match(str(text).strip())
        if not m:
            raise UnknownClass(f"malformed class id {text!r}; expected e.g. P1.4a or C3.19")
        return cls(m.group(1), int(m.group(2)), int(m.group(3)), m.group(4))

    @property
    def family(self) -> str:
        return f"{self.kind}{self.dim}.{self.index}"

    def __str__(self):
        return f"{self.family}{self.variant}"


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str = "any"  # any | nonzero | zero | branch

    @property
    def symbol(self) -> str:
        return SYMBOLS.get(self.name, self.name)

    def describe(self) -> str:
        return {"any": f"{self.symbol} real", "nonzero": f"{self.symbol}≠0", "zero": f"{self.symbol}=0",
                "branch": f"{self.symbol} real (=0 branch)"}[self.kind]


@dataclass(frozen=True)
class ClassEntry:
    id: ClassId
    generators: tuple[str, ...]
    params: tuple[ParamSpec, ...] = ()
    constants: tuple[SlotSpec, ...] = ()
    slots: tuple[SlotSpec, ...] = ()
    chart: str | None = None
    chart_args: Callable[[dict], dict] | None = field(default=None, repr=False)
    build: Callable | None = field(default=None, repr=False)
    extra_domain: Callable | None = field(default=None, repr=False)
    empty: bool = False
    statement: str = ""
    branch: str | None = None  # parameter whose vanishing switches the formula
    constraint: tuple[str, Callable[[dict], bool]] | None = field(default=None, repr=False)
    parent: str | None = None  # emptiness: class whose fields are tested
    extending: tuple[str, ...] = ()
    elementary: str = "sin"  # elementary slot family that is safe on the domain
    validate: Callable | None = field(default=None, repr=False)  # extra slot checks
    default_slots: Callable | None = field(default=None, repr=False)  # custom slot draws

    @property
    def kind(self) -> str:
        return self.id.kind

    @property
    def dim(self) -> int:
        return self.id.dim

    def _active(self, specs, params):
        if self.branch is None:
            return tuple(specs)
        on_zero = params.get(self.branch, 0.0) == 0.0
        return tuple(sp for sp in specs if sp.when is None or (sp.when == "eq0") == on_zero)

    def slots_for(self, params: dict) -> tuple[SlotSpec, ...]:
        return self._active(self.slots, params)

    def constants_for(self, params: dict) -> tuple[SlotSpec, ...]:
        return self._active(self.constants, params)

    def get_chart(self, params: dict) -> Chart | None:
        if self.chart is None:
            return None
        kw = self.chart_args(params) if self.chart_args else {}
        return get_chart(self.chart, **kw)

    def domain(self, params: dict) -> Callable[[np.ndarray], np.ndarray]:
        chart = self.get_chart(params) if self.chart else None
        extra = self.extra_domain

        def dom(x):
            x = np.asarray(x, dtype=float)
            ok = np.all(np.isfinite(x), axis=-1)
            if chart is not None:
                ok &= chart.domain(x)
            if extra is not None:
                with np.errstate(all="ignore"):
                    ok &= np.asarray(extra(x, params), dtype=bool)
            return ok

        return dom

    def summary(self) -> dict:
        return {
            "id": str(self.id),
            "dim": self.dim,
            "generators": list(self.generators),
            "params": [p.describe() for p in self.params] + ([self.constraint[0]] if self.constraint else []),
            "slot_arities": {sp.label + (f"[{sp.when}]" if sp.when else ""): sp.arity for sp in self.slots},
            "constants": [c.label for c in self.constants],
            "empty": self.empty,
            "statement": self.statement,
        }


# -- registry ---------------------------------------------------------------------

_REGISTRY: dict[str, ClassEntry] = {}


def register(entries):
    for e in entries:
        key = str(e.id)
        if key in _REGISTRY:
            raise ValueError(f"duplicate class {key}")
        _REGISTRY[key] = e


def _load():
    if not _REGISTRY:
        from . import maxwell, potentials  # noqa: F401  (populate on first use)
    return _REGISTRY


def all_entries() -> list[ClassEntry]:
    reg = _load()
    return sorted(reg.values(), key=lambda e: (e.id.kind != "P", e.id.dim, e.id.index, e.id.variant))


def list_classes(kind: str | None = None, dim: int | None = None) -> list[ClassEntry]:
    if kind is not None:
        kind = {"potential": "P", "maxwell": "C"}.get(str(kind).lower(), str(kind).upper())
    out = all_entries()
    if kind is not None:
        out = [e for e in out if e.kind == kind]
    if dim is not None:
        out = [e for e in out if e.dim == dim]
    return out


def _kind_ok(spec: ParamSpec, v: float) -> bool:
    if spec.kind == "zero":
        return v == 0.0
    if spec.kind == "nonzero":
        return abs(v) >= PARAM_MARGIN
    if spec.kind == "branch":
        return v == 0.0 or abs(v) >= PARAM_MARGIN
    return True


def _variants(cid: ClassId) -> list[ClassEntry]:
    return [e for e in all_entries() if e.id.family == cid.family and e.id.kind == cid.kind and e.id.variant]


def get_entry(cid, params: dict | None = None) -> ClassEntry:
    """Look up an entry; a bare family id is resolved to the variant its params select."""
    cid = ClassId.parse(cid)
    reg = _load()
    if str(cid) in reg:
        return reg[str(cid)]
    variants = _variants(cid) if not cid.variant else []
    if not variants:
        raise UnknownClass(f"unknown class {cid}")
    params = dict(params or {})
    for e in variants:
        if e.constraint and not e.constraint[1](_with_defaults(e, params)):
            raise ParamConstraint(f"constraint {e.constraint[0]} violated")
    fits = [e for e in variants
            if all(_kind_ok(sp, float(params.get(sp.name, 0.0))) for sp in e.params)]
    if len(fits) != 1:
        names = ", ".join(str(e.id) for e in variants)
        raise UnknownClass(f"class {cid} is ambiguous for these parameters; choose one of {names}")
    return fits[0]


def _with_defaults(entry: ClassEntry, params: dict) -> dict:
    out = {sp.name: 0.0 for sp in entry.params}
    out.update({k: float(v) for k, v in params.items()})
    return out


def check_params(entry: ClassEntry, params: dict | None) -> dict:
    """Validate parameters and constants; returns a float dict with defaults filled in."""
    params = dict(params or {})
    p = {}
    for sp in entry.params:
        v = params.pop(sp.name, params.pop(sp.symbol, None))
        if v is None:
            if sp.kind == "nonzero":
                raise ParamConstraint(f"{entry.id}: parameter {sp.symbol} is required and must be nonzero")
            v = 0.0
        v = float(v)
        if not np.isfinite(v):
            raise ParamConstraint(f"{entry.id}: parameter {sp.symbol} must be finite")
        if not _kind_ok(sp, v):
            need = {"zero": "=0", "nonzero": f"≠0 (|{sp.symbol}|≥{PARAM_MARGIN:g})",
                    "branch": f"=0 or |{sp.symbol}|≥{PARAM_MARGIN:g}"}[sp.kind]
            raise ParamConstraint(f"{entry.id}: parameter {sp.symbol} must be {need}, got {v}")
        p[sp.name] = v
    if entry.constraint and not entry.constraint[1](p):
        raise ParamConstraint(f"constraint {entry.constraint[0]} violated")
    for c in entry.constants_for(p):
        if c.label not in params:
            raise ParamConstraint(f"{entry.id}: constant {c.label} is required")
        p[c.label] = float(params.pop(c.label))
    for c in entry.constants:  # constants of the inactive branch are tolerated
        params.pop(c.label, None)
    if params:
        raise ParamConstraint(f"{entry.id}: unknown parameters {sorted(params)}")
    return p


def check_slots(entry: ClassEntry, p: dict, slots: dict | None) -> dict[str, Slot]:
    slots = dict(slots or {})
    out = {}
    for sp in entry.slots_for(p):
        if sp.label not in slots:
            raise ArityMismatch(f"{entry.id}: slot {sp.label}({sp.args}) is missing")
        f = slots.pop(sp.label)
        if isinstance(f, (int, float)):
            f = constant_slot(f, sp.arity, sp.label)
        if not isinstance(f, Slot):
            raise ArityMismatch(f"{entry.id}: slot {sp.label} must be a Slot or a number")
        if f.arity != sp.arity:
            raise ArityMismatch(f"{entry.id}: slot {sp.label} needs arity {sp.arity}, got {f.arity}")
        out[sp.label] = f
    inactive = {sp.label for sp in entry.slots}
    extra = [k for k in slots if k not in inactive]
    if extra:
        raise ArityMismatch(f"{entry.id}: unknown slots {sorted(extra)}")
    if entry.validate is not None:
        entry.validate(p, out)
    return out


def generators_of(cid, params: dict | None = None) -> list[PoincareGenerator]:
    entry = get_entry(cid, params)
    p = check_params(entry, _fill_constants(entry, params))
    return [parse_generator(g, p) for g in entry.generators]


def _fill_constants(entry: ClassEntry, params):
    # generators never depend on constants; allow callers to omit them
    p = dict(params or {})
    for c in entry.constants:
        p.setdefault(c.label, 0.0)
    return p


def _pull_back(entry: ClassEntry, p: dict, s: dict):
    chart = entry.get_chart(p)
    build = entry.build

    def comps(X):
        U = chart.inverse_raw(X) if chart is not None else None
        return build(X, U, p, s)

    return comps


def instantiate(cid, params: dict | None = None, slots: dict | None = None):
    entry = get_entry(cid, params)
    if entry.empty:
        raise EmptyClass(f"class {entry.id} is empty: only the zero field is invariant")
    p = check_params(entry, params)
    s = check_slots(entry, p, slots)
    comps = _pull_back(entry, p, s)
    if entry.kind == "P":
        return CovectorFieldInstance(comps, entry.domain(p), str(entry.id))
    return TwoFormField(comps, entry.domain(p), str(entry.id))


def instantiate_potential(cid, params: dict | None = None, slots: dict | None = None) -> CovectorFieldInstance:
    entry = get_entry(cid, params)
    if entry.kind != "P":
        raise UnknownClass(f"{entry.id} is not a potential class")
    return instantiate(entry.id, params, slots)


def instantiate_maxwell(cid, params: dict | None = None, slots: dict | None = None) -> TwoFormField:
    entry = get_entry(cid, params)
    if entry.kind != "C":
        raise UnknownClass(f"{entry.id} is not a Maxwell class")
    return instantiate(entry.id, params, slots)


# -- random draws -----------------------------------------------------------------

def class_rng(cid, seed: int, *stream: int) -> np.random.Generator:
    """Generator keyed on the class id so results do not depend on run order."""
    key = zlib.crc32(str(cid).encode())
    return np.random.default_rng([int(seed) & (2**64 - 1), key, *stream])


def draw_params(entry: ClassEntry, rng: np.random.Generator, draw: int = 1) -> dict:
    """Admissible parameters; draw 0 puts every free parameter at zero."""
    p = {}
    for sp in entry.params:
        if sp.kind == "zero" or (sp.kind in ("any", "branch") and draw == 0):
            p[sp.name] = 0.0
        else:
            p[sp.name] = float(rng.uniform(0.25, 2.0) * rng.choice((-1.0, 1.0)))
    if entry.constraint and not entry.constraint[1](p):
        raise ParamConstraint(f"constraint {entry.constraint[0]} violated by draw")
    for c in entry.constants_for(p):
        p[c.label] = float(rng.uniform(-1.0, 1.0))
    return p


def draw_slots(entry: ClassEntry, p: dict, rng: np.random.Generator, family: str = "poly") -> dict[str, Slot]:
    if entry.default_slots is not None:
        return entry.default_slots(p, rng, family)
    out = {}
    for sp in entry.slots_for(p):
        if family == "poly":
            out[sp.label] = random_polynomial(rng, sp.arity, sp.label)
        else:
            out[sp.label] = random_elementary(rng, sp.arity, sp.label, entry.elementary)
    return out


def random_instance(cid, seed: int = 42, draw: int = 1, family: str = "poly"):
    """A reproducible instance with drawn parameters and slots; returns (instance, params)."""
    entry = get_entry(cid)
    rng = class_rng(entry.id, seed, draw, 0 if family == "poly" else 1)
    p = draw_params(entry, rng, draw)
    s = draw_slots(entry, p, rng, family)
    return instantiate(entry.id, p, s), p


def s_positive(x, p=None):
    return x[..., 1] + x[..., 3] >= MARGIN


def d_positive(x, p=None):
    return x[..., 1] - x[..., 3] >= MARGIN


def d_nonzero(x, p=None):
    return np.abs(x[..., 1] - x[..., 3]) >= MARGIN


__all__ = [
    "ClassId", "ParamSpec", "ClassEntry", "SlotSpec", "list_classes", "get_entry", "generators_of",
    "instantiate_potential", "instantiate_maxwell", "instantiate", "draw_params", "draw_slots",
    "random_instance", "class_rng", "everywhere",
]
