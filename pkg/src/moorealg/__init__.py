"""Exact arithmetic for two-cell A-infinity algebras.

The package computes with the cobar-side structures attached to a
two-cell complex: characteristic power series, the normalized
automorphism group and its action, canonical forms over fields and
truncated valuation rings, and Hochschild cohomology with ramification
analysis.  All arithmetic is exact; there is no floating point anywhere.
"""

from .errors import (
    BasisError,
    CompositionError,
    FieldRequiredError,
    HeightUndefinedError,
    IncompatibleRingError,
    InternalError,
    MooreError,
    NoUniformizerError,
    NotAUnitError,
    NotInvertibleError,
    ParityError,
    ParseError,
    PrecisionError,
    RankUndeterminedError,
    StructureError,
    WildCaseError,
    ZeroDivisorError,
)
from .rings import CoeffRing, RingElem, format_elem, inverse, is_unit, parse_ring, ring_arith, valuation
from .series import (
    EXACT,
    PowerSeries,
    compose,
    derivative,
    format_series,
    height,
    parse_series,
    reversion,
    super_derivative,
)
from .noncomm import (
    Derivation,
    GradingContext,
    NCEndo,
    NCSeries,
    check_square_zero,
    conjugate,
    moore_mstar,
    normalized_endo,
)
from .ainfty import (
    AInfStructure,
    GradedBasis,
    HochschildCochain,
    MultiComponent,
    dualize,
    dualize_back,
    hochschild_differential,
    is_unital,
    normalize_cochain,
    stasheff_defect,
)
from .moduli import (
    CanonicalForm,
    MooreAlgebra,
    act,
    act_full,
    canonicalize_char0,
    canonicalize_dvr,
    degree_audit,
    equivalent,
    orbit_invariant_char0,
)
from .hochschild import (
    HHReport,
    hh_bruteforce,
    hh_closed_form,
    hh_structure,
    weierstrass_factor,
)

__all__ = [
    "AInfStructure",
    "BasisError",
    "CanonicalForm",
    "CoeffRing",
    "CompositionError",
    "Derivation",
    "EXACT",
    "FieldRequiredError",
    "GradedBasis",
    "GradingContext",
    "HHReport",
    "HeightUndefinedError",
    "HochschildCochain",
    "IncompatibleRingError",
    "InternalError",
    "MooreAlgebra",
    "MooreError",
    "MultiComponent",
    "NCEndo",
    "NCSeries",
    "NoUniformizerError",
    "NotAUnitError",
    "NotInvertibleError",
    "ParityError",
    "ParseError",
    "PowerSeries",
    "PrecisionError",
    "RankUndeterminedError",
    "RingElem",
    "StructureError",
    "WildCaseError",
    "ZeroDivisorError",
    "act",
    "act_full",
    "canonicalize_char0",
    "canonicalize_dvr",
    "check_square_zero",
    "compose",
    "conjugate",
    "degree_audit",
    "derivative",
    "dualize",
    "dualize_back",
    "equivalent",
    "format_elem",
    "format_series",
    "height",
    "hh_bruteforce",
    "hh_closed_form",
    "hh_structure",
    "hochschild_differential",
    "inverse",
    "is_unit",
    "is_unital",
    "moore_mstar",
    "normalize_cochain",
    "normalized_endo",
    "orbit_invariant_char0",
    "parse_ring",
    "parse_series",
    "reversion",
    "ring_arith",
    "stasheff_defect",
    "super_derivative",
    "valuation",
    "weierstrass_factor",
]
