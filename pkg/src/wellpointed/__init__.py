"""Localisation and stabilisation of well-pointed endofunctors on finite categories."""
from .core import (CategoryError, EnumerationLimits, EnumerationRefused, FiniteCategory, Functor, NatTransformation,
                   Report, Vec, enumerate_functors, find_left_adjoint, identity_functor, validate)
from .dsl import SpecError, load, load_file, parse, print_spec
from .ind import IndCategory, IndObject, embed
from .localise import (WellPointedEndo, algebra_structure, check_well_pointed, localisation_category, omega_infinity,
                       verify_localisation_universal)
from .orbit import OrbitCategory, orbit_well_pointing
from .spectra import Spectrum, spectrify, theta_embedding
from .stabilise import (check_proposition_equivalence, eventual_image_duality_check, stable_category,
                        verify_heller_universal)

__version__ = "0.1.0"

__all__ = [
    "CategoryError", "EnumerationLimits", "EnumerationRefused", "FiniteCategory", "Functor", "NatTransformation",
    "Report", "Vec", "enumerate_functors", "find_left_adjoint", "identity_functor", "validate",
    "SpecError", "load", "load_file", "parse", "print_spec",
    "IndCategory", "IndObject", "embed",
    "WellPointedEndo", "algebra_structure", "check_well_pointed", "localisation_category", "omega_infinity",
    "verify_localisation_universal",
    "OrbitCategory", "orbit_well_pointing",
    "Spectrum", "spectrify", "theta_embedding",
    "check_proposition_equivalence", "eventual_image_duality_check", "stable_category", "verify_heller_universal",
]
