"""Roots of Stanley non-negative polynomials and Ehrhart polynomials of lattice simplices."""

from .extremal import (
    GrowthRow,
    NoDependenceError,
    ScreenReport,
    construct_snn_with_root,
    ehrhart_screen,
    growth_table,
    make_Md,
    make_Sd,
    p_d,
    round_to_integer_hstar,
    solve_bd,
)
from .hstar import (
    HStarVector,
    MonomialPolynomial,
    binom_eval,
    hstar_eval,
    hstar_to_monomial,
    is_snn,
    monomial_to_hstar,
)
from .lattice import LatticeSimplex, count_dilate, ehrhart_of, hstar_of, interior_count
from .regions import (
    BoundaryCurve,
    Region,
    angle_A,
    angle_sum,
    common_halfplane,
    cos2_A_formula,
    max_angle,
    region_contains,
    trace_boundary,
)
from .roots import (
    ConvergenceError,
    DerivativeBreakdown,
    DivergenceError,
    RootSet,
    find_roots,
    polish_root,
)

__version__ = "0.1.0"
