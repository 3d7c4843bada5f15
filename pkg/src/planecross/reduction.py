"""Normalization pipeline for plane pairs.

Moves every intersection point onto the x-axis with an interpolation shear,
equalizes degrees, and scales leading forms to x^n, recording each step in
an invertible chain whose Jacobian multiplier is tracked exactly.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvariantViolation,
    IrrationalPointError,
    NonDiscreteIntersectionError,
    NormalizationError,
    PreconditionError,
)
from .linsolve import RatMatrix, UNIQUE, solve
from .groebner import (
    GRLEX_PLANE,
    buchberger,
    local_multiplicity,
    quotient_dimension,
    rc2_check,
)
from .polyring import (
    MPoly,
    NEG_INF,
    PLANE,
    UPoly,
    jacobian2,
    rational_roots,
    resultant_y,
    upoly_gcd,
)


@dataclass(frozen=True)
class PlanePoint:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, q):
        if isinstance(q, PlanePoint):
            return q
        a, b = q
        return cls(Fraction(a), Fraction(b))

    def is_origin(self):
        return not self.x and not self.y


class PolyPair:
    """A validated plane pair (f1, f2) with cached Jacobian and condition flags.

    n is max(deg f1, deg f2); under rc1 both components share it as their
    common degree. Groebner data is computed lazily and cached.
    """

    __slots__ = ("f1", "f2", "_jac", "_gb", "_rc2")

    def __init__(self, f1, f2):
        for f in (f1, f2):
            if f.ring != PLANE:
                raise PreconditionError(f"components must live in Q[x, y], got {f.ring}")
            if f.is_zero():
                raise PreconditionError("zero component")
        self.f1 = f1
        self.f2 = f2
        self._jac = None
        self._gb = None
        self._rc2 = None

    @property
    def d1(self):
        return self.f1.total_degree

    @property
    def d2(self):
        return self.f2.total_degree

    @property
    def n(self):
        return max(self.d1, self.d2)

    @property
    def jac(self):
        if self._jac is None:
            self._jac = jacobian2(self.f1, self.f2)
        return self._jac

    def groebner(self):
        if self._gb is None:
            self._gb = buchberger([self.f1, self.f2], GRLEX_PLANE)
        return self._gb

    @property
    def quotient_dim(self):
        """Total intersection count, or None when not zero-dimensional."""
        return quotient_dimension(self.groebner())

    @property
    def rc1(self):
        """Both leading homogeneous forms equal x^n, same n, coefficient 1."""
        n = self.n
        for f in (self.f1, self.f2):
            lead = f.leading_homogeneous_part()
            if lead.terms != {(n, 0): Fraction(1)}:
                return False
        return True

    @property
    def rc2(self):
        """All intersection points lie on y = 0 (errors when not discrete)."""
        if self._rc2 is None:
            self._rc2 = rc2_check(self.f1, self.f2, gb=self.groebner())
        return self._rc2

    def __eq__(self, other):
        if not isinstance(other, PolyPair):
            return NotImplemented
        return self.f1 == other.f1 and self.f2 == other.f2

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __repr__(self):
        return f"PolyPair({self.f1!r}, {self.f2!r})"


# -- chain steps -------------------------------------------------------


class ShearStep:
    """Coordinate substitution (x, y) -> (x, y + p(x)); Jacobian factor 1."""

    kind = "shear"
    is_coordinate = True

    def __init__(self, p):
        if p.var != "x":
            raise PreconditionError("shear polynomial must be in x")
        self.p = p

    @property
    def jacobian_factor(self):
        return Fraction(1)

    def images(self):
        x = MPoly.variable(PLANE, "x")
        y = MPoly.variable(PLANE, "y")
        return {"x": x, "y": y + self.p.to_mpoly(PLANE)}

    def apply(self, f1, f2):
        img = self.images()
        return f1.substitute(img), f2.substitute(img)

    def move_point(self, q):
        return PlanePoint(q.x, q.y - self.p(q.x))

    def inverse(self):
        return ShearStep(-self.p)

    def __eq__(self, other):
        return type(other) is ShearStep and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"ShearStep({self.p!r})"


class CoordLinearStep:
    """Coordinate substitution (x, y) -> (a x + b y, c x + d y), det != 0."""

    kind = "coord_linear"
    is_coordinate = True

    def __init__(self, a, b, c, d):
        self.matrix = tuple(Fraction(e) for e in (a, b, c, d))
        a_, b_, c_, d_ = self.matrix
        self.det = a_ * d_ - b_ * c_
        if not self.det:
            raise PreconditionError("singular linear step")

    @property
    def jacobian_factor(self):
        return self.det

    def images(self):
        a, b, c, d = self.matrix
        x = MPoly.variable(PLANE, "x")
        y = MPoly.variable(PLANE, "y")
        return {"x": a * x + b * y, "y": c * x + d * y}

    def apply(self, f1, f2):
        img = self.images()
        return f1.substitute(img), f2.substitute(img)

    def move_point(self, q):
        # zeros of f(ax+by, cx+dy) are the matrix-inverse images of zeros of f
        a, b, c, d = self.matrix
        return PlanePoint((d * q.x - b * q.y) / self.det, (-c * q.x + a * q.y) / self.det)

    def inverse(self):
        a, b, c, d = self.matrix
        return CoordLinearStep(d / self.det, -b / self.det, -c / self.det, a / self.det)

    def __eq__(self, other):
        return type(other) is CoordLinearStep and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.kind, self.matrix))

    def __repr__(self):
        return f"CoordLinearStep{self.matrix!r}"


class LeftLinearStep:
    """Generator recombination (f1, f2) -> (a f1 + b f2, c f1 + d f2)."""

    kind = "left_linear"
    is_coordinate = False

    def __init__(self, a, b, c, d):
        self.matrix = tuple(Fraction(e) for e in (a, b, c, d))
        a_, b_, c_, d_ = self.matrix
        self.det = a_ * d_ - b_ * c_
        if not self.det:
            raise PreconditionError("singular linear step")

    @property
    def jacobian_factor(self):
        return self.det

    def apply(self, f1, f2):
        a, b, c, d = self.matrix
        return a * f1 + b * f2, c * f1 + d * f2

    def move_point(self, q):
        return q  # same zero set

    def inverse(self):
        a, b, c, d = self.matrix
        return LeftLinearStep(d / self.det, -b / self.det, -c / self.det, a / self.det)

    def __eq__(self, other):
        return type(other) is LeftLinearStep and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.kind, self.matrix))

    def __repr__(self):
        return f"LeftLinearStep{self.matrix!r}"


class MixStep:
    """Degree equalization: add the other component to the named one."""

    kind = "mix"
    is_coordinate = False

    def __init__(self, target):
        if target not in ("f1", "f2"):
            raise PreconditionError("mix target must be 'f1' or 'f2'")
        self.target = target

    @property
    def jacobian_factor(self):
        return Fraction(1)

    def apply(self, f1, f2):
        if self.target == "f1":
            return f1 + f2, f2
        return f1, f2 + f1

    def move_point(self, q):
        return q

    def inverse(self):
        return _MixInverseStep(self.target)

    def __eq__(self, other):
        return type(other) is type(self) and self.target == other.target

    def __hash__(self):
        return hash((self.kind, self.target))

    def __repr__(self):
        return f"{type(self).__name__}({self.target!r})"


class _MixInverseStep(MixStep):
    """Subtract instead of add; only produced by MixStep.inverse()."""

    kind = "mix_inverse"

    def apply(self, f1, f2):
        if self.target == "f1":
            return f1 - f2, f2
        return f1, f2 - f1

    def inverse(self):
        return MixStep(self.target)


class SwapStep:
    """Exchange f1 and f2; Jacobian factor -1."""

    kind = "swap"
    is_coordinate = False

    @property
    def jacobian_factor(self):
        return Fraction(-1)

    def apply(self, f1, f2):
        return f2, f1

    def move_point(self, q):
        return q

    def inverse(self):
        return SwapStep()

    def __eq__(self, other):
        return type(other) is SwapStep

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "SwapStep()"


@dataclass(frozen=True)
class AutoChain:
    """Ordered invertible steps; tracks the exact Jacobian multiplier."""

    steps: tuple

    @property
    def jacobian_multiplier(self):
        m = Fraction(1)
        for s in self.steps:
            m *= s.jacobian_factor
        return m

    def is_identity(self):
        return not self.steps

    def apply_polys(self, f1, f2):
        for s in self.steps:
            f1, f2 = s.apply(f1, f2)
        return f1, f2

    def apply(self, pair):
        return PolyPair(*self.apply_polys(pair.f1, pair.f2))

    def inverse(self):
        return AutoChain(tuple(s.inverse() for s in reversed(self.steps)))

    def transform_jacobian(self, j):
        """Exact image of the Jacobian under the chain (chain rule)."""
        for s in self.steps:
            if s.is_coordinate:
                j = j.substitute(s.images()) * s.jacobian_factor
            else:
                j = j * s.jacobian_factor
        return j


@dataclass(frozen=True)
class ReductionReport:
    chain: AutoChain
    before: PolyPair
    after: PolyPair
    jacobian_preserved: bool
    intersection_number_before: int
    intersection_number_after: int


# -- operations --------------------------------------------------------


def interpolate_shear(points, m):
    """The shear p = sum_{j<N} c_j x^(m+j) through the given off-axis targets.

    p(a_i) = b_i for every point and p(0) = 0 by construction; the system is
    square with a scaled-Vandermonde matrix, hence uniquely solvable.
    """
    if not isinstance(m, int) or m < 1:
        raise PreconditionError("m must be a positive integer")
    pts = [PlanePoint.of(q) for q in points]
    xs = [q.x for q in pts]
    if any(not a for a in xs):
        raise PreconditionError("zero x-coordinate among shear targets")
    if len(set(xs)) != len(xs):
        raise PreconditionError("repeated x-coordinate among shear targets")
    if not pts:
        return UPoly.zero("x")
    rows = [[q.x ** (m + j) for j in range(len(pts))] for q in pts]
    out = solve(RatMatrix(rows), [q.y for q in pts])
    if out.kind != UNIQUE:
        raise InvariantViolation("interpolation system must be uniquely solvable")
    return UPoly("x", [Fraction(0)] * m + list(out.solution))


def apply_shear(pair, p):
    """Compose both components with u = (x, y + p(x))."""
    return PolyPair(*ShearStep(p).apply(pair.f1, pair.f2))


def _pure_x_lead(f):
    """(degree, coefficient) when the leading form is a single x-power, else None."""
    lead = f.leading_homogeneous_part()
    if len(lead.terms) != 1:
        return None
    (mono, c), = lead.terms.items()
    if mono[1] != 0:
        return None
    return mono[0], c


def normalize_leading(pair):
    """Equalize degrees and scale so both leading forms become x^n.

    Requires each leading form to already be a pure power of x (the shear's
    job); returns the normalized pair and the recorded chain.
    """
    steps = []
    f1, f2 = pair.f1, pair.f2
    i1, i2 = _pure_x_lead(f1), _pure_x_lead(f2)
    if i1 is None or i2 is None:
        raise NormalizationError(
            "leading forms not pure powers of x: "
            f"{f1.leading_homogeneous_part()}, {f2.leading_homogeneous_part()}"
        )
    if i1[0] != i2[0]:
        step = MixStep("f2") if i2[0] < i1[0] else MixStep("f1")
        f1, f2 = step.apply(f1, f2)
        steps.append(step)
        i1, i2 = _pure_x_lead(f1), _pure_x_lead(f2)
    c1, c2 = i1[1], i2[1]
    if (c1, c2) != (1, 1):
        step = LeftLinearStep(1 / c1, 0, 0, 1 / c2)
        f1, f2 = step.apply(f1, f2)
        steps.append(step)
    out = PolyPair(f1, f2)
    if not out.rc1:
        raise InvariantViolation("normalization finished without RC1")
    return out, AutoChain(tuple(steps))


def _section_in_y(f, a):
    """f(a, y) as a UPoly in y."""
    a = Fraction(a)
    coeffs = {}
    for (ex, ey), c in f.terms.items():
        coeffs[ey] = coeffs.get(ey, Fraction(0)) + c * a ** ex
    top = max(coeffs, default=-1)
    return UPoly("y", [coeffs.get(i, Fraction(0)) for i in range(top + 1)])


def rational_intersection_points(pair):
    """All intersection points of the pair, required rational and complete.

    x-candidates come from resultant_y (or from the y-free component when the
    resultant precondition fails); y-values from the gcd of the sections on
    each candidate line. Completeness is enforced by matching the summed
    local multiplicities against the global quotient dimension.
    """
    total = pair.quotient_dim
    if total is None:
        raise NonDiscreteIntersectionError("common zero set has positive dimension")
    if total == 0:
        return []
    f1, f2 = pair.f1, pair.f2
    if f1.degree_in("y") >= 1 and f2.degree_in("y") >= 1:
        rx = resultant_y(f1, f2)
        if rx.is_zero():
            raise NonDiscreteIntersectionError("vanishing resultant: common factor")
        xs = rational_roots(rx)
    else:
        yfree = f1 if f1.degree_in("y") < 1 else f2
        if yfree.is_constant():
            return []
        xs = rational_roots(yfree.as_upoly("x"))
    points = []
    for a in xs:
        u1 = _section_in_y(f1, a)
        u2 = _section_in_y(f2, a)
        if u1.is_zero() and u2.is_zero():
            raise NonDiscreteIntersectionError(f"both components vanish on x = {a}")
        g = upoly_gcd(u1, u2) if u1 and u2 else (u1 or u2)
        if g.degree == 0 or g.degree == NEG_INF:
            continue  # resultant root with no affine point above it
        for b in rational_roots(g):
            points.append(PlanePoint(a, b))
    counted = sum(local_multiplicity(f1, f2, q.x, q.y, total) for q in points)
    if counted != total:
        raise IrrationalPointError(
            f"rational points account for {counted} of {total}: "
            "non-rational intersection coordinates"
        )
    return sorted(points, key=lambda q: (not q.is_origin(), q.x, q.y))


def _linear_reposition(points):
    """Smallest integer coordinate change giving distinct nonzero x to all
    non-origin points, or None when none is needed."""
    non_origin = [q for q in points if not q.is_origin()]
    xs = [q.x for q in non_origin]
    if all(xs) and len(set(xs)) == len(xs):
        return None
    cands = sorted(
        itertools.product(range(-3, 4), repeat=4),
        key=lambda t: (sum(abs(e) for e in t), t),
    )
    for a, b, c, d in cands:
        if not a * d - b * c:
            continue
        step = CoordLinearStep(a, b, c, d)
        mx = [step.move_point(q).x for q in non_origin]
        if all(mx) and len(set(mx)) == len(mx):
            return step
    raise NormalizationError("no small linear change separates the x-coordinates")


def reduce_full(pair, points=None):
    """Run the whole pipeline; returns a ReductionReport with after.rc1 and rc2.

    points may be caller-supplied (each checked to lie on the variety) or
    None to discover them; discovery insists every point is rational.
    """
    dim_before = pair.quotient_dim
    if dim_before is None:
        raise NonDiscreteIntersectionError("common zero set has positive dimension")
    if points is None:
        pts = rational_intersection_points(pair)
    else:
        pts = [PlanePoint.of(q) for q in points]
        if len(set(pts)) != len(pts):
            raise PreconditionError("repeated intersection point supplied")
        for q in pts:
            if pair.f1.eval_at({"x": q.x, "y": q.y}) or pair.f2.eval_at({"x": q.x, "y": q.y}):
                raise PreconditionError(f"supplied point ({q.x}, {q.y}) is not on the variety")

    steps = []
    work = pair
    cur = pts
    repos = _linear_reposition(cur)
    if repos is not None:
        work = PolyPair(*repos.apply(work.f1, work.f2))
        cur = [repos.move_point(q) for q in cur]
        steps.append(repos)

    if not work.rc1 or any(q.y for q in cur):
        targets = [q for q in cur if not q.is_origin()]
        m = max(work.d1, work.d2) + 1
        sheared = None
        for _ in range(4):
            p = interpolate_shear(targets, m)
            if p.is_zero():
                # points already on the axis but RC1 still broken: any shear
                # vanishing at every intersection x-coordinate will do
                p = UPoly.monomial(m) * UPoly.from_roots([q.x for q in targets])
            cand1, cand2 = ShearStep(p).apply(work.f1, work.f2)
            if _pure_x_lead(cand1) and _pure_x_lead(cand2):
                sheared = (p, cand1, cand2)
                break
            m += 1
        if sheared is None:
            raise NormalizationError("no shear exposed pure-x leading forms")
        p, c1, c2 = sheared
        step = ShearStep(p)
        cur = [step.move_point(q) for q in cur]
        work = PolyPair(c1, c2)
        steps.append(step)
        if any(q.y for q in cur):
            raise InvariantViolation("shear left a point off the axis")

    work, tail = normalize_leading(work)
    chain = AutoChain(tuple(steps) + tail.steps)

    dim_after = work.quotient_dim
    if dim_after != dim_before:
        raise InvariantViolation(
            f"intersection number changed: {dim_before} -> {dim_after}"
        )
    if not work.rc1:
        raise InvariantViolation("pipeline finished without RC1")
    if not work.rc2:
        raise PreconditionError(
            "pipeline finished without RC2: supplied points were incomplete"
        )
    expected_jac = chain.transform_jacobian(pair.jac)
    return ReductionReport(
        chain=chain,
        before=pair,
        after=work,
        jacobian_preserved=work.jac == expected_jac,
        intersection_number_before=dim_before,
        intersection_number_after=dim_after,
    )
