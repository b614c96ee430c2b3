"""Series solutions of Laguerre- and Jacobi-type second-order equations.

The expansion coefficients of square-integrable series solutions obey
symmetric three-term recursions solved by classical (and two recursion-only)
orthogonal polynomial families; quantum-mechanics applications recover
bound-state spectra and scattering phase shifts from the family data.
"""

from .errors import TriseriesError
from .recurrence import PolySequence, RecursionCoeffs, christoffel_darboux_check, run_recursion
from .tra import BasisSpec, OdeParams, SpectralMap, resolve_basis
from .solve import MatchResult, SeriesSolution, assemble_solution, match_family, ode_residual
from . import basis, families, physics, verify

__all__ = [
    "TriseriesError", "RecursionCoeffs", "PolySequence", "run_recursion",
    "christoffel_darboux_check", "OdeParams", "BasisSpec", "SpectralMap",
    "resolve_basis", "MatchResult", "SeriesSolution", "match_family",
    "assemble_solution", "ode_residual", "basis", "families", "physics",
    "verify",
]

__version__ = "0.1.0"
