"""Coadjoint orbits, polarizations and symplectic induction for semidirect products ``K x V``."""

__version__ = "0.1.0"

from .catalog import FIXTURE_NAMES, build, data_file, expected_table
from .lie_core import LieAlgebra, Representation, matrix_algebra, validate
from .orbit import analyze_point
from .polarization import check_polarization, pukanszky_check
from .report import Check, Verdict
from .semidirect import CovectorPoint, SemidirectProduct
from .specdsl import SpecError, elaborate, format_document, parse

__all__ = [
    "FIXTURE_NAMES",
    "Check",
    "CovectorPoint",
    "LieAlgebra",
    "Representation",
    "SemidirectProduct",
    "SpecError",
    "Verdict",
    "analyze_point",
    "build",
    "check_polarization",
    "data_file",
    "elaborate",
    "expected_table",
    "format_document",
    "matrix_algebra",
    "parse",
    "pukanszky_check",
    "validate",
]
