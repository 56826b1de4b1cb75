"""Twisted Reidemeister torsion of SL2(C)-colored links, computed two ways.

One route is classical: the twisted reduced Burau matrix of a colored braid
gives the torsion of its closure.  The other goes through holonomy
braidings of the small quantum group at q = i, doubled with their mirror
images, and a modified trace.  The two agree up to sign.
"""

from .braids import BraidWord, act_colors_sl2, act_free, closure_components, writhe
from .burau import burau_boundary, burau_nice, burau_reduced, torsion
from .holonomy import ExtChar, StarChar, factorize_tuple, defactorize_tuple
from .invariants import (
    InvariantReport,
    LinkSpec,
    compute_report,
    invariant_F,
    invariant_K,
    invariant_T,
    invariant_torsion,
    verify_theorem,
)

__all__ = [
    "BraidWord",
    "ExtChar",
    "InvariantReport",
    "LinkSpec",
    "StarChar",
    "act_colors_sl2",
    "act_free",
    "burau_boundary",
    "burau_nice",
    "burau_reduced",
    "closure_components",
    "compute_report",
    "defactorize_tuple",
    "factorize_tuple",
    "invariant_F",
    "invariant_K",
    "invariant_T",
    "invariant_torsion",
    "torsion",
    "verify_theorem",
    "writhe",
]
