"""Exact arithmetic for rational Diophantine quadruples and the elliptic
curves they induce: verification, torsion classification, torsion-forcing
families and rank-sieve heuristics."""

from .curve import Curve, O, Point, add, curve_make, j_invariant, mul, on_curve, point_order, t_form_curve
from .diophantine import DioTuple, induced_curve, is_diophantine_tuple, is_regular_quadruple
from .families import (
    family_z2z2,
    family_z2z2_v,
    family_z2z4,
    family_z2z6,
    family_z2z8,
    z2z2_curve_coeffs,
    z2z8_T,
)
from .torsion import halve_point, in_double_subgroup, three_torsion, torsion_group

__version__ = "0.1.0"
