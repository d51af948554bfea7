"""Poincaré-invariant potentials and Maxwell fields on Minkowski space."""
from __future__ import annotations

from .adscalar import Jet2, seed_coordinates
from .catalog import (
    generators_of,
    get_entry,
    instantiate,
    instantiate_maxwell,
    instantiate_potential,
    list_classes,
    random_instance,
)
from .charts import get_chart
from .errors import MinkpotError
from .geometry import (
    CovectorFieldInstance,
    PoincareGenerator,
    TwoFormField,
    bracket,
    exterior_derivative,
    lie_derivative_covector,
    lie_derivative_twoform,
    parse_generator,
)
from .verify import (
    VerificationReport,
    appendix_crosscheck,
    certify_emptiness,
    detect_symmetry_algebra,
    detected_dimension,
    verify_class,
)

__version__ = "0.1.0"

__all__ = [
    "Jet2", "seed_coordinates", "MinkpotError",
    "PoincareGenerator", "CovectorFieldInstance", "TwoFormField", "bracket", "parse_generator",
    "exterior_derivative", "lie_derivative_covector", "lie_derivative_twoform", "get_chart",
    "generators_of", "get_entry", "instantiate", "instantiate_maxwell", "instantiate_potential",
    "list_classes", "random_instance",
    "VerificationReport", "verify_class", "detect_symmetry_algebra", "detected_dimension",
    "certify_emptiness", "appendix_crosscheck",
]
