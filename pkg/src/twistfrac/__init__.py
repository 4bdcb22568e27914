"""Classification of fractional powers of Dehn twists about nonseparating curves.

A fractional power of exponent l/n of the twist about a nonseparating
curve is a mapping class whose n-th power is the l-th power of the twist.
Up to conjugacy these are classified by finite integer tuples (side-
preserving and side-exchanging data sets); this package validates,
enumerates, relates and tabulates those tuples.
"""

from .arith import (
    ConeSignature,
    NotInvertibleError,
    cone_signatures,
    divisors,
    mod_inverse,
    units_mod,
)
from .datasets import (
    ConePair,
    IntegralityError,
    SeDataSet,
    SpDataSet,
    ValidationReport,
    canonicalize,
    canonicalize_se,
    canonicalize_sp,
    from_record,
    genus,
    genus_se,
    genus_sp,
    is_essential,
    to_record,
    validate,
    validate_se,
    validate_sp,
)
from .enumeration import (
    Filters,
    OracleBoundError,
    SpectraRow,
    enumerate_oracle,
    enumerate_se,
    enumerate_sp,
    spectra,
)
from .laws import AuditResult, LawReport, audit, check_se_laws, check_sp_laws
from .relations import (
    DecompositionResult,
    NotApplicableError,
    family_se_max,
    family_se_min,
    family_sp_4g,
    family_sp_top,
    se_power_decompose,
    sp_power_compose,
    sp_root_decompose,
)

__all__ = [
    "AuditResult",
    "ConePair",
    "ConeSignature",
    "DecompositionResult",
    "Filters",
    "IntegralityError",
    "LawReport",
    "NotApplicableError",
    "NotInvertibleError",
    "OracleBoundError",
    "SeDataSet",
    "SpDataSet",
    "SpectraRow",
    "ValidationReport",
    "audit",
    "canonicalize",
    "canonicalize_se",
    "canonicalize_sp",
    "check_se_laws",
    "check_sp_laws",
    "cone_signatures",
    "divisors",
    "enumerate_oracle",
    "enumerate_se",
    "enumerate_sp",
    "family_se_max",
    "family_se_min",
    "family_sp_4g",
    "family_sp_top",
    "from_record",
    "genus",
    "genus_se",
    "genus_sp",
    "is_essential",
    "mod_inverse",
    "se_power_decompose",
    "sp_power_compose",
    "sp_root_decompose",
    "spectra",
    "to_record",
    "units_mod",
    "validate",
    "validate_se",
    "validate_sp",
]

__version__ = "0.1.0"
