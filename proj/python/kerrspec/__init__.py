"""Horizon spectra of Kerr-Newman black holes and their inversion.

Geometric units (G = c = 1) throughout: m, a, e are lengths, eigenvalues are
1/length^2 and traces are length^2.
"""

from ._core import (
    KerrspecError,
    MetricProfile,
    ModeSpectrum,
    PhysicalParams,
    ReconstructionReport,
    SmarrShape,
    TraceEstimate,
    TraceSet,
    __version__,
    area,
    assemble,
    assoc_legendre_normalized,
    eigenvalues,
    gauss_curvature,
    gauss_legendre,
    physical_from_smarr,
    physical_from_traces,
    profile,
    r_plus,
    reconstruct_metric,
    roundtrip,
    s1_trace_integral,
    shape_from_traces,
    smarr_from_physical,
    sym_eigenvalues,
    trace_numeric,
    traces_closed_form,
    validate,
)

__all__ = [
    "KerrspecError",
    "MetricProfile",
    "ModeSpectrum",
    "PhysicalParams",
    "ReconstructionReport",
    "SmarrShape",
    "TraceEstimate",
    "TraceSet",
    "__version__",
    "area",
    "assemble",
    "assoc_legendre_normalized",
    "eigenvalues",
    "gauss_curvature",
    "gauss_legendre",
    "physical_from_smarr",
    "physical_from_traces",
    "profile",
    "r_plus",
    "reconstruct_metric",
    "roundtrip",
    "s1_trace_integral",
    "shape_from_traces",
    "smarr_from_physical",
    "sym_eigenvalues",
    "trace_numeric",
    "traces_closed_form",
    "validate",
]
