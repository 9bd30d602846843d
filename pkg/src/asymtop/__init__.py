"""Exact spectra of the quantum asymmetric top and their semiclassical density of states."""
from .errors import (
    AsymTopError,
    ComplexRootDetected,
    ConvergenceFailure,
    DegreeMismatch,
    Inconclusive,
    NonSymmetrizable,
    NotAnEigenvalue,
    OnAxisDegeneracy,
    ParityMismatch,
    QuadratureNotConverged,
    SolverError,
    WeylViolation,
)
from .kernels import BACKEND
from .params import (
    SpeciesExponents,
    TopParameters,
    d_offset,
    physical_from_canonical,
    species_for_degree,
    validate_parameters,
)
from .spectrum import DegreeSpectrum, SpectralLine, degree_spectrum, trace_check, van_vleck_window

__version__ = "0.1.0"
