"""diffnull: differential-algebra toolkit for order bounds in prolongation
ideals — characteristic decomposition with verified traces, exact Groebner
membership oracles, Ackermann-expression bound calculus, and antichain
sequence tooling."""

from .fields import QQ, QX, RatFunc, RationalField, RationalFunctionField
from .polys import Poly, PolyRing, pseudo_divide
from .groebner import (
    CappedResourceError,
    GroebnerBasis,
    ResourceCaps,
    buchberger,
    ideal_membership,
    normal_form,
    radical_membership,
)
from .diffring import (
    Derivative,
    DiffRing,
    DiffSystem,
    Ranking,
    apply_operator,
    differentiate,
    leader_data,
    order_stats,
    poly_order,
    prolong,
    rank_key,
)
from .reduction import (
    AutoreducedSet,
    RankOrder,
    TriangularSet,
    algebraic_remainder,
    characteristic_set,
    compare_rank,
    delta_polynomials,
    full_remainder,
    is_coherent,
    minimal_triangular_subset,
    partial_remainder,
    reducedness,
)
from .decompose import (
    DecomposeLimits,
    DecompositionResult,
    decompose,
    verify_trace,
)
from .dickson import (
    ConstructionInfeasibleError,
    GrowthFn,
    growth_bounded,
    inverse_ceil,
    is_dicksonian,
    pad_construction,
    search_max_length,
    unit_growth_sequence,
)
from .nullstellensatz import (
    MembershipStatus,
    MembershipVerdict,
    NotFoundBy,
    derivative_power_check,
    example_system,
    expected_minimal_order,
    membership_at_order,
    minimal_order,
)
from . import bounds

__version__ = "0.1.0"
