"""Registry of invariant potential and Maxwell classes."""
from __future__ import annotations

from . import maxwell, potentials  # noqa: F401  (registration side effects)
from .presets import PRESETS, c319_example_closed_form, c416_example, c416_example_closed_form, p319_example
from .registry import (
    ClassEntry,
    ClassId,
    ParamSpec,
    all_entries,
    check_params,
    class_rng,
    draw_params,
    draw_slots,
    generators_of,
    get_entry,
    instantiate,
    instantiate_maxwell,
    instantiate_potential,
    list_classes,
    random_instance,
)
from .slots import Slot, SlotSpec, constant_slot, polynomial_slot, random_elementary, random_polynomial, slot_from_table

__all__ = [
    "ClassEntry", "ClassId", "ParamSpec", "Slot", "SlotSpec", "PRESETS",
    "all_entries", "check_params", "class_rng", "draw_params", "draw_slots", "generators_of", "get_entry",
    "instantiate", "instantiate_maxwell", "instantiate_potential", "list_classes", "random_instance",
    "constant_slot", "polynomial_slot", "random_elementary", "random_polynomial", "slot_from_table",
    "p319_example", "c416_example", "c319_example_closed_form", "c416_example_closed_form",
]
