"""Buchberger Groebner bases over Q.

Supplies the independent oracles used everywhere else: quotient dimension
(total intersection count), ideal membership via normal form, the
Rabinowitsch radical-membership test behind rc2_check, and the unit-ideal
test behind normal_crossing_check. Deliberately shares no code with the
bounded linear solver so the two verification routes stay independent.
"""

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NonDiscreteIntersectionError,
    PreconditionError,
    RingMismatchError,
)
from .polyring import MPoly, PLANE, jacobian2


@dataclass(frozen=True)
class MonomialOrder:
    """lex or grlex over an explicit variable precedence (highest first)."""

    kind: str
    precedence: tuple

    def __post_init__(self):
        if self.kind not in ("lex", "grlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "precedence", tuple(self.precedence))

    def key_for(self, ring):
        """Key function on exponent tuples; larger key = larger monomial."""
        missing = [v for v in ring if v not in self.precedence]
        if missing:
            raise PreconditionError(f"order precedence misses variables {missing}")
        idx = tuple(ring.index(v) for v in self.precedence if v in ring)
        if self.kind == "lex":
            return lambda m: tuple(m[i] for i in idx)
        return lambda m: (sum(m), tuple(m[i] for i in idx))


GRLEX_PLANE = MonomialOrder("grlex", ("y", "x"))
LEX_PLANE = MonomialOrder("lex", ("y", "x"))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic basis, generators ascending by leading monomial."""

    ring: tuple
    order: MonomialOrder
    generators: tuple
    leading_monomials: tuple

    def is_unit_ideal(self):
        return len(self.generators) == 1 and self.generators[0].is_constant()


def _monic(terms, key):
    lc = terms[max(terms, key=key)]
    if lc == 1:
        return terms
    return {m: c / lc for m, c in terms.items()}


def _divides(a, b):
    return all(e <= f for e, f in zip(a, b))


def _reduce_terms(terms, basis, key):
    """Remainder of terms under multivariate division by monic basis rows."""
    work = dict(terms)
    rem = {}
    while work:
        mono = max(work, key=key)
        c = work.pop(mono)
        hit = None
        for lm, gt in basis:
            if _divides(lm, mono):
                hit = (lm, gt)
                break
        if hit is None:
            rem[mono] = c
            continue
        lm, gt = hit
        shift = tuple(a - b for a, b in zip(mono, lm))
        for gm, gc in gt.items():
            if gm == lm:
                continue
            m2 = tuple(a + b for a, b in zip(gm, shift))
            v = work.get(m2, Fraction(0)) - c * gc
            if v:
                work[m2] = v
            else:
                work.pop(m2, None)
    return rem


def _spoly(ti, tj, lmi, lmj, lcm):
    si = tuple(l - a for l, a in zip(lcm, lmi))
    sj = tuple(l - b for l, b in zip(lcm, lmj))
    out = {}
    for m, c in ti.items():
        out[tuple(a + b for a, b in zip(m, si))] = c
    for m, c in tj.items():
        m2 = tuple(a + b for a, b in zip(m, sj))
        v = out.get(m2, Fraction(0)) - c
        if v:
            out[m2] = v
        else:
            out.pop(m2, None)
    return out


def buchberger(gens, order):
    """Reduced Groebner basis of the ideal generated by gens.

    Pair queue in lcm-degree order with the coprime-criterion skip; the
    reduced monic result is canonical for the order, so equal ideals give
    identical bases.
    """
    gens = list(gens)
    if not gens:
        raise PreconditionError("need at least one generator")
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring != ring:
            raise RingMismatchError(f"rings differ: {ring} vs {g.ring}")
    key = order.key_for(ring)
    unit_mono = (0,) * len(ring)

    basis = []  # (leading monomial, monic term dict)
    pairs = []

    def push(terms):
        lm = max(terms, key=key)
        basis.append((lm, terms))
        i = len(basis) - 1
        for j in range(i):
            lmj = basis[j][0]
            lcm = tuple(max(a, b) for a, b in zip(lm, lmj))
            heapq.heappush(pairs, (sum(lcm), j, i, lcm))
        return lm

    for g in gens:
        if g.is_zero():
            continue
        r = _reduce_terms(g.terms, basis, key)
        if r:
            if push(_monic(r, key)) == unit_mono:
                basis = [(unit_mono, {unit_mono: Fraction(1)})]
                pairs = []
                break

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        lmi, ti = basis[i]
        lmj, tj = basis[j]
        if all(a + b == l for a, b, l in zip(lmi, lmj, lcm)):
            continue  # coprime leading monomials: S-poly reduces to 0
        r = _reduce_terms(_spoly(ti, tj, lmi, lmj, lcm), basis, key)
        if r:
            if push(_monic(r, key)) == unit_mono:
                basis = [(unit_mono, {unit_mono: Fraction(1)})]
                break

    # minimal basis: drop rows whose leading monomial another row divides
    basis.sort(key=lambda it: key(it[0]))
    kept = []
    for lm, t in basis:
        if not any(_divides(klm, lm) for klm, _ in kept):
            kept.append((lm, t))
    # autoreduce tails against the final leading set
    final = []
    for i, (lm, t) in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = _reduce_terms(t, others, key)
        final.append((lm, _monic(r, key)))
    final.sort(key=lambda it: key(it[0]))
    return GroebnerBasis(
        ring,
        order,
        tuple(MPoly(ring, t) for _, t in final),
        tuple(lm for lm, _ in final),
    )


def normal_form(f, gb):
    """Remainder of f modulo the basis; zero iff f lies in the ideal."""
    if f.ring != gb.ring:
        raise RingMismatchError(f"rings differ: {f.ring} vs {gb.ring}")
    key = gb.order.key_for(gb.ring)
    rows = [(lm, g.terms) for lm, g in zip(gb.leading_monomials, gb.generators)]
    return MPoly(gb.ring, _reduce_terms(f.terms, rows, key))


def quotient_dimension(gb):
    """Count of standard monomials of Q[ring]/I, or None when infinite."""
    if gb.is_unit_ideal():
        return 0
    lms = gb.leading_monomials
    if not lms:
        return None  # zero ideal
    nv = len(gb.ring)
    bounds = []
    for i in range(nv):
        pure = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None  # no pure power in variable i: staircase unbounded
        bounds.append(min(pure))
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(lm, mono) for lm in lms):
            count += 1
    return count


def radical_membership(h, gens):
    """True iff h vanishes on every common zero of gens over the closure.

    Rabinowitsch: h is in the radical iff 1 lies in (gens, 1 - t*h) in one
    extra variable t.
    """
    gens = list(gens)
    if not gens:
        raise PreconditionError("need at least one generator")
    ring = gens[0].ring
    if h.ring != ring:
        raise RingMismatchError(f"rings differ: {h.ring} vs {ring}")
    if "t" in ring:
        raise PreconditionError("ring already uses the auxiliary variable t")
    tring = ring + ("t",)

    def lift(f):
        return MPoly(tring, {m + (0,): c for m, c in f.terms.items()})

    t = MPoly.variable(tring, "t")
    lifted = [lift(g) for g in gens]
    lifted.append(MPoly.constant(tring, 1) - t * lift(h))
    order = MonomialOrder("grlex", ("t",) + tuple(reversed(ring)))
    return buchberger(lifted, order).is_unit_ideal()


def _plane_pair_basis(f1, f2, gb=None):
    for f in (f1, f2):
        if f.ring != PLANE:
            raise PreconditionError(f"operands must live in Q[x, y], got {f.ring}")
    return gb if gb is not None else buchberger([f1, f2], GRLEX_PLANE)


def rc2_check(f1, f2, gb=None):
    """True iff every common zero of (f1, f2) over the closure lies on y = 0."""
    gb = _plane_pair_basis(f1, f2, gb)
    if quotient_dimension(gb) is None:
        raise NonDiscreteIntersectionError("common zero set has positive dimension")
    return radical_membership(MPoly.variable(PLANE, "y"), [f1, f2])


def normal_crossing_check(f1, f2, gb=None):
    """True iff the Jacobian vanishes at no common zero: 1 in (f1, f2, J)."""
    gb = _plane_pair_basis(f1, f2, gb)
    if quotient_dimension(gb) is None:
        raise NonDiscreteIntersectionError("common zero set has positive dimension")
    j = jacobian2(f1, f2)
    return buchberger([f1, f2, j], GRLEX_PLANE).is_unit_ideal()


def local_multiplicity(f1, f2, a, b, cap):
    """Intersection multiplicity of (f1, f2) at the rational point (a, b).

    Translates the point to the origin and counts dim Q[x,y]/(I + m^cap);
    exact whenever cap is at least the multiplicity, in particular for
    cap = the global quotient dimension.
    """
    if cap < 1:
        raise PreconditionError("truncation cap must be positive")
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    shift = {"x": x + Fraction(a), "y": y + Fraction(b)}
    gens = [f1.substitute(shift), f2.substitute(shift)]
    for i in range(cap + 1):
        gens.append(MPoly(PLANE, {(i, cap - i): Fraction(1)}))
    dim = quotient_dimension(buchberger(gens, GRLEX_PLANE))
    if dim is None:
        raise PreconditionError("truncated local ring came out infinite")
    return dim
