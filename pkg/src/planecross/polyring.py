"""Exact polynomial arithmetic over Q.

MPoly is a sparse multivariate polynomial: an ordered variable ring plus a
dict mapping exponent tuples to nonzero Fractions. UPoly is its dense
univariate companion, used wherever a single variable is known in advance
(resultants, shear polynomials, the squarefree root polynomial r). All
arithmetic is exact; floats never enter.
"""

from fractions import Fraction
from math import isqrt

from .errors import (
    InvariantViolation,
    PreconditionError,
    RingMismatchError,
)

Rat = Fraction

NEG_INF = float("-inf")  # degree of the zero polynomial


class MPoly:
    """Sparse polynomial in Q[ring]: exponent tuple -> nonzero Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=()):
        ring = tuple(str(v) for v in ring)
        if len(set(ring)) != len(ring):
            raise ValueError(f"repeated variable in ring {ring}")
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(ring) or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono} for ring {ring}")
            c = clean.get(mono, Fraction(0)) + Fraction(c)
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.ring = ring
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {(0,) * len(tuple(ring)): Fraction(c)})

    @classmethod
    def variable(cls, ring, name):
        ring = tuple(ring)
        if name not in ring:
            raise ValueError(f"{name!r} not in ring {ring}")
        mono = tuple(1 if v == name else 0 for v in ring)
        return cls(ring, {mono: Fraction(1)})

    # -- structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def total_degree(self):
        """Max total degree of a term, NEG_INF for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=NEG_INF)

    def degree_in(self, var):
        """Max exponent of var, NEG_INF for the zero polynomial."""
        i = self._var_index(var)
        return max((m[i] for m in self.terms), default=NEG_INF)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        """The value of a constant polynomial, as a Fraction."""
        if not self.is_constant():
            raise PreconditionError(f"not a constant: {self}")
        return self.terms.get((0,) * len(self.ring), Fraction(0))

    def coeff(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def coeff_of(self, var, k):
        """Coefficient of var^k as a polynomial in the remaining variables."""
        i = self._var_index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i] == k:
                key = m[:i] + (0,) + m[i + 1:]
                out[key] = out.get(key, Fraction(0)) + c
        return MPoly(self.ring, out)

    def _var_index(self, var):
        try:
            return self.ring.index(var)
        except ValueError:
            raise ValueError(f"{var!r} not in ring {self.ring}") from None

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"rings differ: {self.ring} vs {other.ring}")

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.ring, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly.zero(self.ring)
            c = Fraction(other)
            return self._raw(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return self._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MPoly.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    @classmethod
    def _raw(cls, ring, terms):
        # internal: terms already canonical (no zeros, valid monos)
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.ring, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation ---------------------------------------

    def diff(self, var):
        """Partial derivative with respect to var."""
        i = self._var_index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return self._raw(self.ring, out)

    def substitute(self, images):
        """Compose with images {var: MPoly or scalar}; every ring variable needs an image.

        All polynomial images must share one target ring; scalars are coerced
        into it.
        """
        missing = [v for v in self.ring if v not in images]
        if missing:
            raise PreconditionError(f"incomplete assignment, missing {missing}")
        rings = {img.ring for img in images.values() if isinstance(img, MPoly)}
        if len(rings) > 1:
            raise RingMismatchError(f"images live in different rings: {sorted(rings)}")
        if not rings:
            raise PreconditionError("no polynomial image fixes a target ring; use eval_at")
        tring = rings.pop()
        imgs = []
        for v in self.ring:
            img = images[v]
            imgs.append(img if isinstance(img, MPoly) else MPoly.constant(tring, img))
        pows = [{0: MPoly.constant(tring, 1)} for _ in self.ring]

        def vpow(i, e):
            cache = pows[i]
            if e not in cache:
                cache[e] = vpow(i, e - 1) * imgs[i]
            return cache[e]

        acc = MPoly.zero(tring)
        for m, c in self.terms.items():
            t = MPoly.constant(tring, c)
            for i, e in enumerate(m):
                if e:
                    t = t * vpow(i, e)
            acc = acc + t
        return acc

    def eval_at(self, point):
        """Exact value at {var: Rat}; every ring variable needs a value."""
        missing = [v for v in self.ring if v not in point]
        if missing:
            raise PreconditionError(f"incomplete assignment, missing {missing}")
        vals = [Fraction(point[v]) for v in self.ring]
        s = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for val, e in zip(vals, m):
                if e:
                    t *= val ** e
            s += t
        return s

    def leading_homogeneous_part(self):
        """Sum of the terms of maximal total degree."""
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading form")
        d = self.total_degree
        return self._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def as_upoly(self, var):
        """Dense univariate view; the other ring variables must not occur."""
        i = self._var_index(var)
        coeffs = [Fraction(0)] * (len(self.terms) and max(m[i] for m in self.terms) + 1)
        for m, c in self.terms.items():
            if any(e for j, e in enumerate(m) if j != i):
                raise PreconditionError(f"{self} involves more than {var!r}")
            coeffs[m[i]] = c
        return UPoly(var, coeffs)

    def __str__(self):
        from .textio import print_poly

        return print_poly(self)

    def __repr__(self):
        return f"MPoly({self.ring!r}, {dict(sorted(self.terms.items()))!r})"


class UPoly:
    """Dense univariate polynomial over Q: ascending coefficient tuple."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.var = str(var)
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, var="x"):
        return cls(var, ())

    @classmethod
    def constant(cls, c, var="x"):
        return cls(var, (c,))

    @classmethod
    def monomial(cls, k, c=1, var="x"):
        return cls(var, (0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots, var="x"):
        """Monic product of (var - a) over the given roots."""
        p = cls.constant(1, var)
        for a in roots:
            p = p * cls(var, (-Fraction(a), 1))
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading_coeff(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, UPoly):
            if self.var != other.var:
                raise RingMismatchError(f"variables differ: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly.constant(other, self.var)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.var, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly(self.var, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = UPoly.constant(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading_coeff
        while len(rem) - 1 >= d and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
        return UPoly(self.var, q), UPoly(self.var, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly.constant(other, self.var)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __call__(self, a):
        """Exact evaluation by Horner's rule."""
        a = Fraction(a)
        s = Fraction(0)
        for c in reversed(self.coeffs):
            s = s * a + c
        return s

    def derivative(self):
        return UPoly(self.var, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            raise PreconditionError("zero polynomial cannot be made monic")
        lc = self.leading_coeff
        return self if lc == 1 else self * (1 / lc)

    def to_mpoly(self, ring):
        """Embed into MPoly over ring; self.var must be a ring variable."""
        ring = tuple(ring)
        if self.var not in ring:
            raise ValueError(f"{self.var!r} not in ring {ring}")
        i = ring.index(self.var)
        zero = [0] * len(ring)
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                mono = list(zero)
                mono[i] = k
                terms[tuple(mono)] = c
        return MPoly(ring, terms)

    def __str__(self):
        from .textio import print_poly

        return print_poly(self.to_mpoly((self.var,)))

    def __repr__(self):
        return f"UPoly({self.var!r}, {self.coeffs!r})"


def upoly_gcd(a, b):
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if a.var != b.var:
        raise RingMismatchError(f"variables differ: {a.var} vs {b.var}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a

def upoly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g and g the monic gcd."""
    if a.var != b.var:
        raise RingMismatchError(f"variables differ: {a.var} vs {b.var}")
    var = a.var
    r0, r1 = a, b
    s0, s1 = UPoly.constant(1, var), UPoly.zero(var)
    t0, t1 = UPoly.zero(var), UPoly.constant(1, var)
    while not r1.is_zero():
        q, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.leading_coeff
    inv = 1 / lc
    return r0 * inv, s0 * inv, t0 * inv


def _divisors(n):
    """Positive divisors of n > 0, unsorted."""
    out = []
    i = 1
    while i <= isqrt(n):
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def rational_roots(p):
    """Distinct rational roots of p != 0, ascending."""
    if p.is_zero():
        raise PreconditionError("zero polynomial has every root")
    roots = set()
    coeffs = list(p.coeffs)
    while coeffs and not coeffs[0]:
        roots.add(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) > 1:
        from math import lcm, gcd

        den = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        g = gcd(*ints)
        ints = [c // g for c in ints]
        q = UPoly(p.var, ints)
        for num in _divisors(abs(ints[0])):
            for d in _divisors(abs(ints[-1])):
                for cand in (Fraction(num, d), Fraction(-num, d)):
                    if cand not in roots and q(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# -- plane-specific operations ----------------------------------------

PLANE = ("x", "y")
HPLANE = ("X0", "X1", "X2")


def _require_plane(f, what="operand"):
    if f.ring != PLANE:
        raise PreconditionError(f"{what} must live in Q[x, y], got ring {f.ring}")


def jacobian_pair(f1, f2, v1, v2):
    """Jacobian determinant d(f1,f2)/d(v1,v2) in the shared ring."""
    f1._check_ring(f2)
    return f1.diff(v1) * f2.diff(v2) - f1.diff(v2) * f2.diff(v1)


def jacobian2(f1, f2):
    """J(f1, f2) = f1_x f2_y - f1_y f2_x on the plane ring (x, y)."""
    _require_plane(f1, "f1")
    _require_plane(f2, "f2")
    return jacobian_pair(f1, f2, "x", "y")


def homogenize(f, d):
    """Degree-d homogenization of f(x, y) into Q[X0, X1, X2]."""
    _require_plane(f)
    if f.terms and d < f.total_degree:
        raise PreconditionError(f"d = {d} below total degree {f.total_degree}")
    return MPoly(HPLANE, {(d - ex - ey, ex, ey): c for (ex, ey), c in f.terms.items()})


def dehomogenize(F):
    """Set X0 = 1 and map (X1, X2) back to (x, y)."""
    if F.ring != HPLANE:
        raise PreconditionError(f"operand must live in Q[X0, X1, X2], got {F.ring}")
    out = {}
    for (_, e1, e2), c in F.terms.items():
        key = (e1, e2)
        s = out.get(key, Fraction(0)) + c
        if s:
            out[key] = s
        else:
            del out[key]
    return MPoly(PLANE, out)


def exact_div_y(f):
    """Quotient f / y when y divides f exactly."""
    _require_plane(f)
    stray = {m: c for m, c in f.terms.items() if m[1] == 0}
    if stray:
        raise PreconditionError(
            f"not divisible by y; y-free part {MPoly(PLANE, stray)}"
        )
    return MPoly(PLANE, {(ex, ey - 1): c for (ex, ey), c in f.terms.items()})


def extended_euclid_bounded(r):
    """(lam, mu) with r*mu + r'*lam = 1, deg lam <= deg r - 1, deg mu <= deg r - 2.

    Requires r squarefree of positive degree; lam is the canonical
    representative of the Bezout cofactor mod r.
    """
    if r.is_zero() or r.degree < 1:
        raise PreconditionError("r must have positive degree")
    rp = r.derivative()
    g, s, t = upoly_xgcd(r, rp)
    if g.degree != 0:
        raise PreconditionError(
            f"r = {r} is not squarefree (repeated root x-coordinates)"
        )
    mu0, lam0 = s, t  # s*r + t*r' = 1 after monic scaling
    q, lam = divmod(lam0, r)
    mu = mu0 + q * rp
    N = r.degree - 1
    one = UPoly.constant(1, r.var)
    if r * mu + rp * lam != one:
        raise InvariantViolation("Bezout identity failed after reduction")
    if (lam.degree != NEG_INF and lam.degree > N) or (
        mu.degree != NEG_INF and mu.degree > N - 1
    ):
        raise InvariantViolation("Bezout cofactor degree bounds failed")
    return lam, mu


def _upoly_exact_div(num, den):
    q, rem = divmod(num, den)
    if not rem.is_zero():
        raise InvariantViolation("inexact division inside fraction-free elimination")
    return q


def _det_bareiss(rows, one, exact_div):
    """Fraction-free determinant over an integral domain.

    exact_div(a, b) must implement exact division; Bareiss guarantees the
    quotients stay in the domain.
    """
    n = len(rows)
    if n == 0:
        return one
    a = [list(r) for r in rows]
    sign = 1
    prev = one
    for p in range(n - 1):
        piv = next((r for r in range(p, n) if a[r][p]), None)
        if piv is None:
            return one * 0
        if piv != p:
            a[p], a[piv] = a[piv], a[p]
            sign = -sign
        for r in range(p + 1, n):
            for c in range(p + 1, n):
                a[r][c] = exact_div(a[p][p] * a[r][c] - a[r][p] * a[p][c], prev)
        prev = a[p][p]
    det = a[n - 1][n - 1]
    return det if sign > 0 else det * -1


def resultant_y(f, g):
    """res_y(f, g) in Q[x], the determinant of the Sylvester matrix in y."""
    _require_plane(f, "f")
    _require_plane(g, "g")
    m = f.degree_in("y")
    k = g.degree_in("y")
    if m == NEG_INF or k == NEG_INF or m < 1 or k < 1:
        raise PreconditionError("both operands need positive degree in y")
    fc = [f.coeff_of("y", i).as_upoly("x") for i in range(m, -1, -1)]
    gc = [g.coeff_of("y", i).as_upoly("x") for i in range(k, -1, -1)]
    size = m + k
    zero = UPoly.zero("x")
    rows = []
    for i in range(k):
        row = [zero] * size
        row[i:i + m + 1] = fc
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        row[i:i + k + 1] = gc
        rows.append(row)
    return _det_bareiss(rows, UPoly.constant(1, "x"), _upoly_exact_div)
