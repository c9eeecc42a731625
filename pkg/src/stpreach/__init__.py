"""Exact reachability analysis of dimension-bounded cross-dimensional linear
systems x(t+1) = A ⋉→ x(t)."""

from .annihilator import (
    FilterVerdict,
    KrylovChain,
    Poly,
    UnionVerdict,
    eval_on_vector,
    format_poly,
    is_annihilator,
    min_annihilator_space,
    min_annihilator_span,
    min_annihilator_union,
    min_annihilator_vector,
    necessary_reach_filter,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    union_proper_test,
)
from .dimension import (
    DimensionProfile,
    DimTrajectory,
    Factorization,
    build_profile,
    closed_form_dim,
    dim_trajectory,
    factorize,
    invariant_dim,
    invariant_time_bound,
    is_reachable_dim,
    minimal_invariant_time,
    step_dim,
)
from .reachability import (
    PreconditionError,
    ReachVerdict,
    Subspace,
    induced_matrix,
    is_member,
    rank_of,
    reach_basis,
    scan_reachability,
    subspace_relate,
)
from .stp_core import (
    DimensionError,
    Rational,
    RMatrix,
    RVector,
    delta,
    identity,
    kron,
    lift,
    power_vprod,
    stp,
    vadd,
    vprod,
    vsum,
)

__version__ = "0.1.0"
