"""Dehn twists of free groups from one-edge cyclic splittings, and certified
right-angled Artin subgroups of Out(F) generated by their powers."""

__version__ = "0.1.0"

from .freegroup import ConjClass, Word, WordError
from .splitting import SplittingDatum, SplittingError, normal_form, translation_length, validate
from .twist import TwistAutomorphism, from_splitting, is_inner
from .certify import Collection, certify, injectivity_scan
from .curvespace import basis_spheres, i_vector, orbit_experiment, projective_distance

__all__ = [
    "ConjClass", "Word", "WordError",
    "SplittingDatum", "SplittingError", "normal_form", "translation_length", "validate",
    "TwistAutomorphism", "from_splitting", "is_inner",
    "Collection", "certify", "injectivity_scan",
    "basis_spheres", "i_vector", "orbit_experiment", "projective_distance",
]
