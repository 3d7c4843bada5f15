"""Degree-bounded cofactor solver for J(f)*h = g1*f1 + g2*f2.

One exact linear system over the truncated monomial basis; Groebner division
is never used here so the solver and the Groebner oracle remain independent
verification routes. Specializations: h = y (the count identity's equation)
and h = r(x) (the decomposition's k-equation).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InconsistentSystemError,
    InvariantViolation,
    NonDiscreteIntersectionError,
    PreconditionError,
    ReductionConditionError,
)
from .groebner import (
    GRLEX_PLANE,
    buchberger,
    quotient_dimension,
    radical_membership,
)
from .linsolve import INCONSISTENT, RatMatrix, UNIQUE, solve
from .polyring import MPoly, PLANE, jacobian2


@dataclass(frozen=True)
class BoundedSolution:
    g1: MPoly
    g2: MPoly
    bound1: int
    bound2: int
    unique: bool
    nullspace_dim: int


def monomials_up_to(d):
    """Plane monomials of total degree <= d: degree ascending, x-heavy first."""
    if d < 0:
        return []
    return [(t - i, i) for t in range(d + 1) for i in range(t + 1)]


def solve_bounded(f1, f2, h, bound1, bound2, verify_vanishing=True, _gb=None):
    """Solve J(f1,f2)*h = g1*f1 + g2*f2 with deg g_i <= bound_i.

    verify_vanishing checks that h vanishes on the common zeros first
    (radical membership), turning a doomed system into a clear error. The
    underdetermined representative is the deterministic free-variables-zero
    solution; nullspace_dim counts the bounded homogeneous solutions.
    """
    for f in (f1, f2, h):
        if f.ring != PLANE:
            raise PreconditionError(f"operands must live in Q[x, y], got {f.ring}")
    if f1.is_zero() or f2.is_zero():
        raise PreconditionError("zero component")
    gb = _gb if _gb is not None else buchberger([f1, f2], GRLEX_PLANE)
    if quotient_dimension(gb) is None:
        raise NonDiscreteIntersectionError("common zero set has positive dimension")
    if verify_vanishing and not h.is_zero():
        if not radical_membership(h, [f1, f2]):
            raise PreconditionError("h does not vanish on the intersection points")

    target = jacobian2(f1, f2) * h
    basis1 = monomials_up_to(bound1)
    basis2 = monomials_up_to(bound2)
    columns = []
    for mono in basis1:
        columns.append({tuple(a + b for a, b in zip(m, mono)): c for m, c in f1.terms.items()})
    for mono in basis2:
        columns.append({tuple(a + b for a, b in zip(m, mono)): c for m, c in f2.terms.items()})

    row_monos = set(target.terms)
    for col in columns:
        row_monos.update(col)
    row_monos = sorted(row_monos)
    row_index = {m: i for i, m in enumerate(row_monos)}

    rows = [[Fraction(0)] * len(columns) for _ in row_monos]
    for j, col in enumerate(columns):
        for m, c in col.items():
            rows[row_index[m]][j] = c
    rhs = [target.coeff(m) for m in row_monos]

    out = solve(RatMatrix(rows, ncols=len(columns)), rhs)
    if out.kind == INCONSISTENT:
        raise InconsistentSystemError(
            f"no cofactors within degree bounds ({bound1}, {bound2})"
        )
    cut = len(basis1)
    g1 = MPoly(PLANE, dict(zip(basis1, out.solution[:cut])))
    g2 = MPoly(PLANE, dict(zip(basis2, out.solution[cut:])))
    if g1 * f1 + g2 * f2 != target:
        raise InvariantViolation("residual not zero after solve")

    unique = out.kind == UNIQUE
    d1, d2 = f1.total_degree, f2.total_degree
    dh = h.total_degree
    within_caps = bound1 <= d2 + dh - 2 and bound2 <= d1 + dh - 2
    if target.total_degree < 2 * min(d1, d2) and within_caps and not unique:
        raise InvariantViolation(
            "bounded solution must be unique when deg(J*h) < 2*min(d1, d2)"
        )
    return BoundedSolution(g1, g2, bound1, bound2, unique, len(out.nullspace_basis))


def solve_y_equation(pair):
    """The unique g with y*J(f) = g1*f1 + g2*f2 and deg g_i <= n - 1."""
    if not (pair.rc1 and pair.rc2):
        raise ReductionConditionError("reduced normal form required (RC flags false)")
    n = pair.n
    sol = solve_bounded(
        pair.f1,
        pair.f2,
        MPoly.variable(PLANE, "y"),
        n - 1,
        n - 1,
        verify_vanishing=False,  # rc2 already certifies y vanishes on the variety
        _gb=pair.groebner(),
    )
    if not sol.unique:
        raise InvariantViolation("y-equation solution must be unique under the RC flags")
    return sol


def solve_r_equation(pair, r, verify_vanishing=True):
    """A k with r(x)*J(f) = k1*f1 + k2*f2 and deg k_i <= n + deg r - 2.

    Uniqueness is not guaranteed; nullspace_dim reports the bounded kernel.
    """
    if not (pair.rc1 and pair.rc2):
        raise ReductionConditionError("reduced normal form required (RC flags false)")
    if r.is_zero() or r.var != "x":
        raise PreconditionError("r must be a nonzero polynomial in x")
    bound = pair.n + r.degree - 2
    return solve_bounded(
        pair.f1,
        pair.f2,
        r.to_mpoly(PLANE),
        bound,
        bound,
        verify_vanishing=verify_vanishing,
        _gb=pair.groebner(),
    )
