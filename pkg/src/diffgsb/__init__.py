"""Groebner-Shirshov bases for free differential algebras of weight lambda."""

from .diffmon import (
    DEGLEX_C,
    DEGLEX_NC,
    LEX_C,
    ONE,
    DiffVar,
    GenTable,
    MonOrder,
    OrderKind,
    cmp_var,
    cmp_word,
    cword,
    divides_c,
    divides_nc,
    order_for,
    overlaps_nc,
    var,
)
from .diffpoly import (
    Context,
    ContextMismatch,
    DiffPoly,
    LeadingData,
    derive,
    derive_n,
    hat_embed,
    leading_of_derivative,
    leibniz_closed_2,
    leibniz_closed_multi,
)
from .expr import ParseError, format_poly, format_word, parse_poly
from .gsb import (
    CompletionResult,
    CompositionReport,
    DimBounds,
    GsbVerdict,
    Kind,
    MemberResult,
    Presentation,
    PrecheckError,
    Status,
    check_gsb,
    complete,
    compositions,
    diff_irr,
    enumerate_words,
    lift_presentation,
    member_bounded,
    quotient_dim_oracle,
)
from .rewrite import (
    BudgetExhausted,
    Policy,
    ReductionTrace,
    RuleSet,
    StarWord,
    find_reduction,
    is_trivial_mod,
    normal_form,
    reduce,
    subst,
)

__version__ = "0.1.0"
