"""Finite concrete pointed categories: limits, mono classification, and the
localization at pullback stable essential monomorphisms."""

from .catcore import (
    AB,
    BACKENDS,
    GRP,
    NORMAL_BACKENDS,
    PSET,
    ConcreteMorphism,
    FiniteObject,
    Subobject,
    compose,
    cyclic_group,
    direct_product,
    enumerate_hom,
    enumerate_monos,
    group_from_cayley,
    group_from_permutations,
    identity,
    load_objects,
    object_from_descriptor,
    pointed_set,
    subalgebras,
    zero_morphism,
    zero_object,
)
from .errors import (
    BackendMismatch,
    BoundExceeded,
    CompositionMismatch,
    ConsistencyError,
    CospanMismatch,
    InvalidMorphism,
    InvalidObject,
    PreconditionViolation,
    SpeccatError,
)
from .limits import (
    Congruence,
    Factorization,
    PullbackResult,
    check_normal_backend,
    cokernel,
    congruences,
    equalizer,
    factorize,
    is_normal_epi,
    kernel,
    kernel_pair,
    product,
    pullback,
    zero_of,
)
from .monoclasses import (
    ALL_MONOS,
    EXPLICIT,
    NORMAL_MONOS,
    ClassificationReport,
    MonoClassSpec,
    MonoFamily,
    Verdict,
    classify,
    closure_law_suite,
    essential_four_ways,
    find_weak_left_cancellation_witness,
    is_essential,
    is_stable_essential,
    is_subobject_essential,
    s_class_report,
    stabilize,
    stable_essential_family,
)
from .fractions import (
    ConditionReport,
    Diamond,
    FractionClass,
    NormalizedSpan,
    Span,
    check_focal,
    fraction_equal,
    normalize,
    poincare_hom,
    poincare_hom_zigzag,
    span_compose,
)
from .spectral import (
    DivisionMonoidReport,
    SpecClass,
    SpectralCategory,
    UniformReport,
    build_spec,
    canonical_functor,
    end_spec_division_check,
    is_uniform,
    minimal_M_subobject,
    verify_limit_preservation,
)

__version__ = "0.1.0"
