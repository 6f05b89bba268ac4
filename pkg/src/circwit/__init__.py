"""Circulant positive maps on M_3 and M_4, their entanglement witnesses,
optimality certificates and detection of PPT entangled Horodecki states."""

from .errors import (
    CircwitError,
    DegenerateFamilyError,
    DimensionError,
    EmptyInputError,
    HermiticityError,
    NoRealBranchError,
    ParameterError,
)
from .witness import Family, WitnessParams, build_witness, params_on_curve, raw

__version__ = "0.1.0"

__all__ = [
    "CircwitError",
    "DegenerateFamilyError",
    "DimensionError",
    "EmptyInputError",
    "HermiticityError",
    "NoRealBranchError",
    "ParameterError",
    "Family",
    "WitnessParams",
    "build_witness",
    "params_on_curve",
    "raw",
]
