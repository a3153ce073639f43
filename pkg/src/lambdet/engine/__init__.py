from .conventions import (
    DEFAULT_VARIANT,
    REGISTRY,
    SHIPPED,
    ConventionVariant,
    MuReading,
    MuShift,
    get_variant,
    load_registry,
    resolve_variants,
)
from .det import det_oracle
from .expansion import (
    TermRecord,
    closed_form,
    count_terms,
    determinant_rules,
    lambda_determinant_rules,
    specialize,
    term_monomial,
)
from .pyramid import InitMode, LaurentFailure, Pyramid, ShapeMismatch, condense, condensed_apex, init_pyramid
from .verify import EquivalenceReport, check_exchange, exchange_sides, verify_equivalence
from .weights import ShiftKind, f_weight, g_weight, shift_weight
