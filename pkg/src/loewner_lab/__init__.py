"""Numerical laboratory for Loewner's theorem on holonomic curves."""

from .errors import (
    ArityMismatch,
    DegenerateInstance,
    DegenerateLevel,
    DegenerateRay,
    LemmaViolation,
    LoewnerLabError,
    NonConvergent,
    NotApplicable,
    OnCurve,
    TangentialEvent,
)
from .polyops import InterlacedPair, RealPoly, apply_operator, divide_step, verify_division_lemma
from .trigpoly import TrigPoly, critical_points, random_trigpoly, roots_on_level
from .winding import Curve, region_map, rotation_number, rotation_number_angle, rotation_number_ray

__version__ = "0.1.0"
