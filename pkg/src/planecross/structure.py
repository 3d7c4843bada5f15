"""Intersection bookkeeping on y = 0 and the identities built on it.

Covers the count-equals-coefficient report, the axis-section closed forms,
the normal-crossing matrix factorization, a seeded instance generator, and
an exhaustive search for constant Jacobians over factored pairs.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .errors import (
    GenerationError,
    InvariantViolation,
    IrrationalPointError,
    NonDiscreteIntersectionError,
    PreconditionError,
    ReductionConditionError,
)
from .groebner import local_multiplicity, normal_crossing_check
from .membership import monomials_up_to, solve_r_equation, solve_y_equation
from .polyring import (
    MPoly,
    NEG_INF,
    PLANE,
    UPoly,
    exact_div_y,
    extended_euclid_bounded,
    jacobian2,
    rational_roots,
    resultant_y,
    upoly_gcd,
    upoly_xgcd,
)
from .reduction import PolyPair

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntersectionData:
    x_roots: tuple
    r: UPoly
    multiplicities: tuple
    total: int


def intersection_data(pair):
    """x-coordinates on y = 0, r(x) = prod(x - a_i), and multiplicities.

    Roots come from the resultant in y (or from the y-free component when the
    resultant is unavailable), filtered by exact substitution; the origin is
    listed first, the rest ascending. The multiplicity sum must reproduce the
    quotient dimension, otherwise some point has an irrational x.
    """
    if not (pair.rc1 and pair.rc2):
        raise ReductionConditionError("reduced normal form required (RC flags false)")
    total = pair.quotient_dim
    if total is None:
        raise NonDiscreteIntersectionError("common zero set has positive dimension")
    if total == 0:
        return IntersectionData((), UPoly.from_roots(()), (), 0)
    f1, f2 = pair.f1, pair.f2
    if f1.degree_in("y") >= 1 and f2.degree_in("y") >= 1:
        res = resultant_y(f1, f2)
        if res.is_zero():
            raise NonDiscreteIntersectionError("vanishing resultant: shared factor")
        candidates = rational_roots(res)
    else:
        # one component is y-free; its x-roots carry every intersection
        yfree = f1 if f1.degree_in("y") < 1 else f2
        candidates = rational_roots(yfree.as_upoly("x"))
    roots = [
        a
        for a in candidates
        if f1.eval_at({"x": a, "y": 0}) == 0 and f2.eval_at({"x": a, "y": 0}) == 0
    ]
    roots.sort()
    roots.sort(key=lambda a: a != 0)  # stable: origin first, then ascending
    mults = [local_multiplicity(f1, f2, a, Fraction(0), total) for a in roots]
    if sum(mults) != total:
        raise IrrationalPointError(
            f"rational points carry {sum(mults)} of {total} intersections; "
            "the rest have irrational x-coordinates"
        )
    return IntersectionData(tuple(roots), UPoly.from_roots(roots), tuple(mults), total)


@dataclass(frozen=True)
class IntersectionCountReport:
    g2_top_coeff: Fraction
    oracle_total: int
    agree: bool


def verify_intersection_count(pair):
    """Compare the x^(n-1) coefficient of g2 with the quotient dimension."""
    sol = solve_y_equation(pair)
    coeff = sol.g2.coeff((pair.n - 1, 0))
    total = pair.quotient_dim
    return IntersectionCountReport(coeff, total, coeff == total)


def check_axis_sections(pair, data=None):
    """Exact identities g1(x,0)*r = -r'*f2(x,0) and g2(x,0)*r = r'*f1(x,0)."""
    if not normal_crossing_check(pair.f1, pair.f2, pair.groebner()):
        raise PreconditionError(
            "axis sections need normal crossing (Jacobian nonzero at every point)"
        )
    if data is None:
        data = intersection_data(pair)
    sol = solve_y_equation(pair)
    r = data.r.to_mpoly(PLANE)
    rp = data.r.derivative().to_mpoly(PLANE)
    a0 = pair.f1.coeff_of("y", 0)
    b0 = pair.f2.coeff_of("y", 0)
    c0 = sol.g1.coeff_of("y", 0)
    d0 = sol.g2.coeff_of("y", 0)
    return c0 * r == -(rp * b0) and d0 * r == rp * a0


@dataclass(frozen=True)
class Decomposition:
    h1: MPoly
    h2: MPoly
    k1: MPoly
    k2: MPoly
    r: UPoly
    lam: UPoly
    mu: UPoly
    det_ok: bool
    factor_ok: bool
    g_factor_ok: bool
    dual_ok: bool

    @property
    def all_ok(self):
        return self.det_ok and self.factor_ok and self.g_factor_ok and self.dual_ok


def decompose(pair):
    """Matrix factorization (f1, f2)^T = (h1, -k2; h2, k1) (r, y*lam)^T.

    k1 = (r*g1 + r'*f2)/y and k2 = (r*g2 - r'*f1)/y are exact by the axis
    sections; (lam, mu) is the Bezout pair for (r, r'); h1 = mu*f1 + lam*g2,
    h2 = mu*f2 - lam*g1. The four flags record the determinant identity, both
    factorizations, and the dual identity J*r' = k1*g2 - k2*g1, all exact.
    """
    data = intersection_data(pair)
    if data.total == 0:
        raise PreconditionError("no affine intersection points; r would be constant")
    if not normal_crossing_check(pair.f1, pair.f2, pair.groebner()):
        raise PreconditionError(
            "factorization needs normal crossing (Jacobian nonzero at every point)"
        )
    sol = solve_y_equation(pair)
    f1, f2, jac = pair.f1, pair.f2, pair.jac
    r = data.r
    rm = r.to_mpoly(PLANE)
    rpm = r.derivative().to_mpoly(PLANE)
    k1 = exact_div_y(rm * sol.g1 + rpm * f2)
    k2 = exact_div_y(rm * sol.g2 - rpm * f1)
    cap = pair.n + r.degree - 1
    for name, k in (("k1", k1), ("k2", k2)):
        if k.total_degree != NEG_INF and k.total_degree > cap:
            raise InvariantViolation(f"deg {name} = {k.total_degree} exceeds {cap}")
    lam, mu = extended_euclid_bounded(r)
    lm = lam.to_mpoly(PLANE)
    mm = mu.to_mpoly(PLANE)
    h1 = mm * f1 + lm * sol.g2
    h2 = mm * f2 - lm * sol.g1
    y = MPoly.variable(PLANE, "y")
    det_ok = h1 * k1 + h2 * k2 == jac
    factor_ok = f1 == h1 * rm - k2 * y * lm and f2 == h2 * rm + k1 * y * lm
    g_factor_ok = (
        sol.g1 == -h2 * rpm + k1 * y * mm and sol.g2 == h1 * rpm + k2 * y * mm
    )
    dual_ok = jac * rpm == k1 * sol.g2 - k2 * sol.g1
    if log.isEnabledFor(logging.DEBUG):
        alt = solve_r_equation(pair, r, verify_vanishing=False)
        if (alt.g1, alt.g2) != (k1, k2):
            log.debug(
                "solver k differs from constructed k (nullspace dim %d)",
                alt.nullspace_dim,
            )
    return Decomposition(
        h1, h2, k1, k2, r, lam, mu, det_ok, factor_ok, g_factor_ok, dual_ok
    )


def _sample_upoly(rng, deg, bound=3):
    """Random coefficients in [-bound, bound] up to the given degree."""
    if deg < 0:
        return UPoly.zero()
    return UPoly("x", [Fraction(rng.randint(-bound, bound)) for _ in range(deg + 1)])


def generate_rc_instance(seed, n, roots):
    """Deterministic pair with leading forms x^n meeting y = 0 exactly at roots.

    Built as f_i = r*s_i + y*T_i with s_1, s_2 coprime monic and
    T_1 = -D*beta + w*s_1, T_2 = D*alpha + w*s_2 for a Bezout pair
    alpha*s_1 + beta*s_2 = 1, so that f_1*s_2 - f_2*s_1 = -y*D. A constant
    D makes the ideal exactly (r, y): every crossing transversal. When
    deg r >= 2 some draws take D = c*(x - a_t) instead, putting a double
    contact at the root a_t. Validation always reruns the full checks.
    """
    roots = [Fraction(a) for a in roots]
    if len(set(roots)) != len(roots):
        raise PreconditionError("roots must be distinct")
    if not any(a == 0 for a in roots):
        raise PreconditionError("roots must contain 0")
    big_r = len(roots)
    if n <= big_r:
        raise PreconditionError(f"n = {n} must exceed deg r = {big_r}")
    r = UPoly.from_roots(roots)
    rng = Random(seed)
    y = MPoly.variable(PLANE, "y")
    attempts = 64
    for _ in range(attempts):
        s1 = _sample_upoly(rng, n - big_r - 1) + UPoly.monomial(n - big_r)
        s2 = _sample_upoly(rng, n - big_r - 1) + UPoly.monomial(n - big_r)
        if upoly_gcd(s1, s2).degree != 0:
            continue
        if any(s1(a) == 0 or s2(a) == 0 for a in roots):
            continue
        g, alpha, beta = upoly_xgcd(s1, s2)
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        tangent = big_r >= 2 and rng.random() < 0.4
        if tangent:
            a_t = rng.choice(roots)
            d = UPoly.from_roots([a_t]) * c
            w = _sample_upoly(rng, big_r - 2)
            if w(a_t) == 0:
                continue  # the contact line x = a_t must not sit inside V
        else:
            d = UPoly.constant(c)
            w = _sample_upoly(rng, big_r - 2)
        t1 = -d * beta + w * s1
        t2 = d * alpha + w * s2
        if (t1.degree != NEG_INF and t1.degree > n - 2) or (
            t2.degree != NEG_INF and t2.degree > n - 2
        ):
            raise InvariantViolation("cofactor degrees broke the leading-form cap")
        f1 = (r * s1).to_mpoly(PLANE) + y * t1.to_mpoly(PLANE)
        f2 = (r * s2).to_mpoly(PLANE) + y * t2.to_mpoly(PLANE)
        pair = PolyPair(f1, f2)
        if not pair.rc1 or pair.quotient_dim is None or not pair.rc2:
            continue
        if set(intersection_data(pair).x_roots) != set(roots):
            continue
        return pair
    raise GenerationError(f"no valid pair after {attempts} attempts (seed {seed})")


@dataclass(frozen=True)
class CounterexampleRecord:
    r: UPoly
    lam: UPoly
    h1: MPoly
    h2: MPoly
    k1: MPoly
    k2: MPoly
    f1: MPoly
    f2: MPoly
    jacobian: MPoly


@dataclass(frozen=True)
class ExplorationReport:
    max_deg_r: int
    coeff_bound: int
    max_deg_hk: int
    budget: object
    seed: object
    r_count: int
    matrix_count: int
    candidates_examined: int
    degree_histogram: dict
    counterexamples: tuple
    truncated: bool


def _int_polys(max_deg, bound):
    """All plane polynomials of total degree <= max_deg, coefficients in range."""
    monos = monomials_up_to(max_deg)
    span = [Fraction(v) for v in range(-bound, bound + 1)]
    out = []
    for coeffs in itertools.product(span, repeat=len(monos)):
        out.append(MPoly(PLANE, dict(zip(monos, coeffs))))
    return out


def _squarefree_monic_r(max_deg_r, bound):
    """Monic squarefree r with integer coefficients in range, deg 2..max_deg_r."""
    out = []
    for deg in range(2, max_deg_r + 1):
        for tail in itertools.product(range(-bound, bound + 1), repeat=deg):
            r = UPoly("x", [Fraction(v) for v in tail] + [Fraction(1)])
            if upoly_gcd(r, r.derivative()).degree == 0:
                out.append(r)
    return out


def _invertible_matrices(max_deg_hk, bound):
    """Quadruples (h1, h2, k1, k2) with h1*k1 + h2*k2 a nonzero constant.

    Meet in the middle: bucket (h1, k1) products by their nonconstant part,
    then join against the negated nonconstant part of each (h2, k2) product.
    """
    polys = _int_polys(max_deg_hk, bound)
    one = (0,) * len(PLANE)
    buckets = {}
    for i1, h1 in enumerate(polys):
        for j1, k1 in enumerate(polys):
            p = h1 * k1
            const = p.coeff(one)
            buckets.setdefault(p - const, []).append((i1, j1, const))
    quads = []
    for i2, h2 in enumerate(polys):
        for j2, k2 in enumerate(polys):
            q = h2 * k2
            const_q = q.coeff(one)
            for i1, j1, const_p in buckets.get(-(q - const_q), ()):
                if const_p + const_q != 0:
                    quads.append((i1, j1, i2, j2))
    quads.sort()
    return polys, quads


def explore_constant_jacobian(
    max_deg_r, coeff_bound, budget=None, max_deg_hk=1, seed=None
):
    """Sweep factored pairs f = (h1*r - k2*y*lam, h2*r + k1*y*lam) for J in Q*.

    The matrix (h1, -k2; h2, k1) must be invertible (constant nonzero
    determinant) and (lam, mu) Bezout for (r, r') with deg lam <= deg r, so
    lam runs over lam0 + c*r for integer c. Enumeration is exhaustive and
    ordered, hence reproducible; seed is recorded only. A candidate counts as
    a counterexample exactly when its Jacobian is a nonzero constant.
    """
    if max_deg_r < 2:
        raise PreconditionError("max_deg_r must be at least 2")
    if coeff_bound < 1:
        raise PreconditionError("coeff_bound must be at least 1")
    rs = _squarefree_monic_r(max_deg_r, coeff_bound)
    polys, quads = _invertible_matrices(max_deg_hk, coeff_bound)
    y = MPoly.variable(PLANE, "y")
    histogram = {}
    counterexamples = []
    examined = 0
    truncated = False
    for r in rs:
        lam0, _ = extended_euclid_bounded(r)
        for c in range(-coeff_bound, coeff_bound + 1):
            lam = lam0 + r * Fraction(c)
            rm = r.to_mpoly(PLANE)
            ylm = y * lam.to_mpoly(PLANE)
            for i1, j1, i2, j2 in quads:
                if budget is not None and examined >= budget:
                    truncated = True
                    break
                h1, k1, h2, k2 = polys[i1], polys[j1], polys[i2], polys[j2]
                f1 = h1 * rm - k2 * ylm
                f2 = h2 * rm + k1 * ylm
                jac = jacobian2(f1, f2)
                examined += 1
                deg = jac.total_degree
                key = "zero" if jac.is_zero() else str(deg)
                histogram[key] = histogram.get(key, 0) + 1
                if jac.is_constant() and not jac.is_zero():
                    counterexamples.append(
                        CounterexampleRecord(r, lam, h1, h2, k1, k2, f1, f2, jac)
                    )
            if truncated:
                break
        if truncated:
            break
    return ExplorationReport(
        max_deg_r,
        coeff_bound,
        max_deg_hk,
        budget,
        seed,
        len(rs),
        len(quads),
        examined,
        dict(sorted(histogram.items())),
        tuple(counterexamples),
        truncated,
    )
