"""Spectra of cyclic quotients of spheres and projective spaces.

The layers, bottom up: weight_lattice defines the congruence lattices and
their conjugacy bookkeeping, theta_counting turns them into shell counts
and rational counting functions, spectrum maps counts to Laplace spectra,
isospectral_search hunts for isospectral non-isometric families, and
reference_tables pins the expected search output on fixed ranges.
"""

from .isospectral_search import (
    FAMILY_REPORT_SCHEMA,
    FamilyMember,
    IsospectralFamily,
    NonCyclicReport,
    RankMismatch,
    SearchConfig,
    UMode,
    UnknownFormat,
    duality_check,
    family_report,
    is_isospectral,
    noncyclic_example_check,
    search,
    theta_equal,
)
from .reference_tables import TABLES, TableReport, TableSpec, table_search, verify_tables
from .spectrum import (
    FamilyMismatch,
    SpaceKind,
    SpaceTag,
    SpectralGenFun,
    SpectrumDescriptor,
    cpn,
    eigenvalue,
    even_sphere,
    full_lattice_dimension_check,
    hp1,
    multiplicity,
    odd_sphere,
    space_lattice,
    spectral_generating_function,
    spectrum_table,
    weight_multiplicity,
    weyl_dimension,
    zeta_partial,
)
from .theta_counting import (
    AffineUnsupported,
    NonIntegralCoefficient,
    RationalForm,
    ThetaSeries,
    ehrhart_form,
    shell_count,
    shell_count_box,
    shell_counts,
    theta_truncated,
    zagier_theta,
)
from .weight_lattice import (
    CodeLattice,
    CongruenceLattice,
    DimensionMismatch,
    Family,
    GcdViolation,
    GroupFamily,
    IllegalEvenSublattice,
    NormKind,
    ZeroOrder,
    canonical_form,
    default_norm,
    enumerate_representatives,
    is_conjugate,
    is_manifold,
    make_code_lattice,
    make_lattice,
    membership,
    norm,
    singularity_profile,
)

__version__ = "1.0.0"

__all__ = [
    "AffineUnsupported",
    "CodeLattice",
    "CongruenceLattice",
    "DimensionMismatch",
    "FAMILY_REPORT_SCHEMA",
    "Family",
    "FamilyMember",
    "FamilyMismatch",
    "GcdViolation",
    "GroupFamily",
    "IllegalEvenSublattice",
    "IsospectralFamily",
    "NonCyclicReport",
    "NonIntegralCoefficient",
    "NormKind",
    "RankMismatch",
    "RationalForm",
    "SearchConfig",
    "SpaceKind",
    "SpaceTag",
    "SpectralGenFun",
    "SpectrumDescriptor",
    "TABLES",
    "TableReport",
    "TableSpec",
    "ThetaSeries",
    "UMode",
    "UnknownFormat",
    "ZeroOrder",
    "canonical_form",
    "cpn",
    "default_norm",
    "duality_check",
    "ehrhart_form",
    "eigenvalue",
    "enumerate_representatives",
    "even_sphere",
    "family_report",
    "full_lattice_dimension_check",
    "hp1",
    "is_conjugate",
    "is_isospectral",
    "is_manifold",
    "make_code_lattice",
    "make_lattice",
    "membership",
    "multiplicity",
    "noncyclic_example_check",
    "norm",
    "odd_sphere",
    "search",
    "shell_count",
    "shell_count_box",
    "shell_counts",
    "singularity_profile",
    "space_lattice",
    "spectral_generating_function",
    "spectrum_table",
    "table_search",
    "theta_equal",
    "theta_truncated",
    "verify_tables",
    "weight_multiplicity",
    "weyl_dimension",
    "zagier_theta",
    "zeta_partial",
]
