"""tckit: explicit torsion conductor bounds for elliptic curves over Q."""

from .conductor import ConductorReport, check_nE_bound, compute_nE
from .curve import WeierstrassCurve, invariants
from .gl2 import MatModN, SubgroupModN, gl2_order, subgroup_closure
from .image import ImageClass, Verdict, classify_mod_ell, exceptional_set

__all__ = [
    "ConductorReport",
    "ImageClass",
    "MatModN",
    "SubgroupModN",
    "Verdict",
    "WeierstrassCurve",
    "check_nE_bound",
    "classify_mod_ell",
    "compute_nE",
    "exceptional_set",
    "gl2_order",
    "invariants",
    "subgroup_closure",
]

__version__ = "0.1.0"
