"""Floating-point geometry: discriminant meshes, profiles, strata and the moduli plane."""

from .abplane import LABELS as AB_LABELS, ab_stratification, region_probe, region_summary
from .contours import contact_order, profile_curves
from .identities import identity_checks
from .polyline import Polyline2, polylines_to_csv
from .strata import (InvalidModuli, StratumCurve, Type7Moduli, branch_counts, residual_decay,
                     type7_strata)
from .surfaces import GenericityError, Mesh, discriminant_surface, mesh_residuals

__all__ = [
    "AB_LABELS", "GenericityError", "InvalidModuli", "Mesh", "Polyline2", "StratumCurve",
    "Type7Moduli", "ab_stratification", "branch_counts", "contact_order", "discriminant_surface",
    "identity_checks", "mesh_residuals", "polylines_to_csv", "profile_curves", "region_probe",
    "region_summary", "residual_decay", "type7_strata",
]
