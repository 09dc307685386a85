"""Genus-3 theta constants, bitangents of plane quartics and Weber's formula.

The main entry points are re-exported here; the submodules hold the rest.
"""
from .bitangents import BitangentSet, extract_bitangents
from .characteristics import (AronholdSet, Characteristic, aronhold_for_pair, enumerate_aronhold_sets,
                              enumerate_characteristics)
from .errors import WeberQuarticError
from .fingerprint import Fingerprint
from .siegel import SiegelPoint, SymplecticMatrix, random_tau, validate_siegel
from .theta import theta, theta_gradient, theta_table
from .weber import Verdict, compare_curves, fingerprint_from_bitangents, weber_lhs, weber_value

__version__ = "0.1.0"

__all__ = [
    "AronholdSet",
    "BitangentSet",
    "Characteristic",
    "Fingerprint",
    "SiegelPoint",
    "SymplecticMatrix",
    "Verdict",
    "WeberQuarticError",
    "aronhold_for_pair",
    "compare_curves",
    "enumerate_aronhold_sets",
    "enumerate_characteristics",
    "extract_bitangents",
    "fingerprint_from_bitangents",
    "random_tau",
    "theta",
    "theta_gradient",
    "theta_table",
    "validate_siegel",
    "weber_lhs",
    "weber_value",
]
