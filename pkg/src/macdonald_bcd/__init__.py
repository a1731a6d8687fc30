"""Macdonald polynomials P_{r omega_1} for the classical root systems B_n, C_n and D_n."""
from .scalars import DEFAULT_GENERATORS, DegenerateSample, GeneratorSet, Scalar, qpoch
from .laurent import LaurentPoly, NonExactDivision
from .rootsys import OrbitExpansion, RootSystem, build
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GENERATORS",
    "DegenerateSample",
    "GeneratorSet",
    "LaurentPoly",
    "NonExactDivision",
    "OrbitExpansion",
    "RootSystem",
    "Scalar",
    "VerificationReport",
    "build",
    "qpoch",
]
