"""Exact workbench for plane polynomial pairs.

Normalizes pairs to the reduction conditions (leading forms x^n, all
intersections on y = 0), solves the degree-bounded cofactor equation
y*J(f) = g1*f1 + g2*f2, checks the x^(n-1) coefficient of g2 against an
independent quotient-dimension oracle, and factors normal-crossing pairs
through the matrix form (h1, -k2; h2, k1) (r, y*lam)^T.
"""

from .errors import (
    GenerationError,
    InconsistentSystemError,
    InvariantViolation,
    IrrationalPointError,
    NonDiscreteIntersectionError,
    NormalizationError,
    ParseError,
    PlanecrossError,
    PreconditionError,
    ReductionConditionError,
    RingMismatchError,
    SchemaError,
)
from .polyring import (
    HPLANE,
    MPoly,
    NEG_INF,
    PLANE,
    Rat,
    UPoly,
    dehomogenize,
    exact_div_y,
    extended_euclid_bounded,
    homogenize,
    jacobian2,
    jacobian_pair,
    rational_roots,
    resultant_y,
    upoly_gcd,
    upoly_xgcd,
)
from .linsolve import (
    INCONSISTENT,
    RatMatrix,
    SolveOutcome,
    UNDERDETERMINED,
    UNIQUE,
    rank,
    solve,
)
from .groebner import (
    GRLEX_PLANE,
    GroebnerBasis,
    LEX_PLANE,
    MonomialOrder,
    buchberger,
    local_multiplicity,
    normal_crossing_check,
    normal_form,
    quotient_dimension,
    radical_membership,
    rc2_check,
)
from .reduction import (
    AutoChain,
    CoordLinearStep,
    LeftLinearStep,
    MixStep,
    PlanePoint,
    PolyPair,
    ReductionReport,
    ShearStep,
    SwapStep,
    apply_shear,
    interpolate_shear,
    normalize_leading,
    rational_intersection_points,
    reduce_full,
)
from .membership import (
    BoundedSolution,
    monomials_up_to,
    solve_bounded,
    solve_r_equation,
    solve_y_equation,
)
from .structure import (
    CounterexampleRecord,
    Decomposition,
    ExplorationReport,
    IntersectionCountReport,
    IntersectionData,
    check_axis_sections,
    decompose,
    explore_constant_jacobian,
    generate_rc_instance,
    intersection_data,
    verify_intersection_count,
)
from .textio import SCHEMAS, dumps, from_json, parse_poly, print_poly, to_json
