"""Exact polynomial arithmetic: ring laws, calculus, and x-only helpers."""

import random
from fractions import Fraction

import pytest

from planecross import (
    HPLANE,
    MPoly,
    NEG_INF,
    PLANE,
    PreconditionError,
    RingMismatchError,
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


def rand_mpoly(rng, ring=PLANE, deg=4, terms=6, bound=5):
    out = {}
    for _ in range(terms):
        mono = [0] * len(ring)
        left = rng.randint(0, deg)
        for i in range(len(ring)):
            e = rng.randint(0, left)
            mono[i] = e
            left -= e
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        if c:
            out[tuple(mono)] = out.get(tuple(mono), Fraction(0)) + c
    return MPoly(ring, {m: c for m, c in out.items() if c})


def rand_upoly(rng, deg=4, bound=5):
    return UPoly("x", [Fraction(rng.randint(-bound, bound)) for _ in range(deg + 1)])


def test_zero_and_constants():
    z = MPoly.zero(PLANE)
    assert z.is_zero()
    assert z.total_degree == NEG_INF
    assert not z
    c = MPoly.constant(PLANE, Fraction(3, 2))
    assert c.is_constant()
    assert c.constant_value() == Fraction(3, 2)
    assert c.total_degree == 0


def test_variable_and_coeff_access():
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    f = x * x + 2 * y - 1
    assert f.coeff((2, 0)) == 1
    assert f.coeff((0, 1)) == 2
    assert f.coeff((5, 5)) == 0
    assert f.degree_in("x") == 2
    assert f.degree_in("y") == 1
    with pytest.raises(ValueError):
        MPoly.variable(PLANE, "z")


def test_ring_mismatch_rejected():
    f = MPoly.variable(PLANE, "x")
    g = MPoly.variable(HPLANE, "X0")
    with pytest.raises(RingMismatchError):
        f + g


def test_mpoly_ring_laws_random():
    rng = random.Random(17)
    for _ in range(40):
        a = rand_mpoly(rng)
        b = rand_mpoly(rng)
        c = rand_mpoly(rng)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == MPoly.zero(PLANE)
        assert a * MPoly.constant(PLANE, Fraction(1)) == a


def test_pow_matches_repeated_multiplication():
    rng = random.Random(3)
    f = rand_mpoly(rng, deg=2, terms=3)
    acc = MPoly.constant(PLANE, Fraction(1))
    for k in range(5):
        assert f ** k == acc
        acc = acc * f


def test_mixed_partials_commute():
    rng = random.Random(23)
    for _ in range(25):
        f = rand_mpoly(rng, deg=5)
        assert f.diff("x").diff("y") == f.diff("y").diff("x")


def test_product_rule():
    rng = random.Random(29)
    for _ in range(25):
        f = rand_mpoly(rng, deg=3)
        g = rand_mpoly(rng, deg=3)
        lhs = (f * g).diff("x")
        assert lhs == f.diff("x") * g + f * g.diff("x")


def test_substitute_is_ring_morphism():
    rng = random.Random(31)
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    images = {"x": x + y, "y": x * y - 1}
    for _ in range(15):
        f = rand_mpoly(rng, deg=3, terms=4)
        g = rand_mpoly(rng, deg=3, terms=4)
        assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)
        assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)


def test_eval_agrees_with_substitute():
    rng = random.Random(37)
    for _ in range(20):
        f = rand_mpoly(rng)
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        v = f.eval_at({"x": a, "y": b})
        full = f.substitute(
            {"x": MPoly.constant(PLANE, a), "y": MPoly.constant(PLANE, b)}
        )
        assert full == MPoly.constant(PLANE, v)


def test_leading_homogeneous_part():
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    f = x ** 3 + x * y ** 2 + y + 1
    lead = f.leading_homogeneous_part()
    assert lead == x ** 3 + x * y ** 2
    with pytest.raises(PreconditionError):
        MPoly.zero(PLANE).leading_homogeneous_part()


def test_as_upoly_roundtrip():
    rng = random.Random(41)
    for _ in range(10):
        p = rand_upoly(rng)
        assert p.to_mpoly(PLANE).as_upoly("x") == p
    f = MPoly.variable(PLANE, "x") + MPoly.variable(PLANE, "y")
    with pytest.raises(PreconditionError):
        f.as_upoly("x")


def test_upoly_divmod_and_gcd():
    rng = random.Random(43)
    for _ in range(30):
        a = rand_upoly(rng, deg=rng.randint(0, 5))
        b = rand_upoly(rng, deg=rng.randint(0, 4))
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree
        g = upoly_gcd(a, b)
        if not g.is_zero():
            assert (a % g).is_zero() and (b % g).is_zero()
            assert g.leading_coeff == 1


def test_upoly_xgcd_identity():
    rng = random.Random(47)
    for _ in range(30):
        a = rand_upoly(rng, deg=rng.randint(0, 4))
        b = rand_upoly(rng, deg=rng.randint(0, 4))
        g, s, t = upoly_xgcd(a, b)
        assert s * a + t * b == g
        assert g == upoly_gcd(a, b)


def test_from_roots_and_rational_roots():
    roots = [Fraction(1, 2), Fraction(-1, 3), Fraction(1)]
    p = UPoly.from_roots(roots)
    assert rational_roots(p) == sorted(roots)
    assert rational_roots(UPoly("x", [-2, 0, 1])) == []  # x^2 - 2
    assert rational_roots(UPoly("x", [0, 0, 1])) == [0]  # double root at 0
    with pytest.raises(PreconditionError):
        rational_roots(UPoly.zero())


def test_rational_roots_random_recovery():
    rng = random.Random(53)
    pool = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2, 3)]
    for _ in range(20):
        roots = rng.sample(pool, rng.randint(1, 3))
        scale = Fraction(rng.randint(1, 4))
        p = UPoly.from_roots(roots) * scale
        assert rational_roots(p) == sorted(set(roots))


def test_jacobian_frozen_examples():
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    assert jacobian2(x, y) == MPoly.constant(PLANE, Fraction(1))
    assert jacobian2(y, x) == MPoly.constant(PLANE, Fraction(-1))
    # the walkthrough pair has Jacobian exactly 1
    f1 = x + y + x ** 2
    f2 = y + x ** 2
    assert jacobian2(f1, f2) == MPoly.constant(PLANE, Fraction(1))


def test_jacobian_shear_invariance():
    # composing with (x, y + p(x)) never changes the Jacobian determinant
    rng = random.Random(59)
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    for _ in range(15):
        f1 = rand_mpoly(rng, deg=3)
        f2 = rand_mpoly(rng, deg=3)
        p = rand_upoly(rng, deg=3).to_mpoly(PLANE)
        images = {"x": x, "y": y + p}
        g1 = f1.substitute(images)
        g2 = f2.substitute(images)
        assert jacobian2(g1, g2) == jacobian2(f1, f2).substitute(images)


def test_jacobian_pair_alternating():
    A = MPoly.variable(HPLANE, "X1")
    B = MPoly.variable(HPLANE, "X2")
    assert jacobian_pair(A, B, "X1", "X2") == MPoly.constant(HPLANE, Fraction(1))
    assert jacobian_pair(A, A, "X1", "X2").is_zero()


def test_homogenize_dehomogenize():
    rng = random.Random(61)
    for _ in range(20):
        f = rand_mpoly(rng, deg=4)
        if f.is_zero():
            continue
        d = f.total_degree + rng.randint(0, 2)
        F = homogenize(f, d)
        assert dehomogenize(F) == f
        # every term of F has total degree exactly d
        assert all(sum(m) == d for m in F.terms)
    with pytest.raises(PreconditionError):
        homogenize(MPoly.variable(PLANE, "x") ** 3, 2)


def test_exact_div_y():
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    f = y * (x ** 2 + 3 * y - 1)
    assert exact_div_y(f) == x ** 2 + 3 * y - 1
    with pytest.raises(PreconditionError):
        exact_div_y(x + y)


def test_extended_euclid_bounded_frozen():
    r = UPoly("x", [0, -1, 1])  # x^2 - x
    lam, mu = extended_euclid_bounded(r)
    assert lam == UPoly("x", [-1, 2])
    assert mu == UPoly("x", [-4])


def test_extended_euclid_bounded_random():
    rng = random.Random(67)
    pool = [Fraction(n) for n in range(-3, 4)]
    for _ in range(25):
        roots = rng.sample(pool, rng.randint(1, 4))
        r = UPoly.from_roots(roots)
        lam, mu = extended_euclid_bounded(r)
        one = UPoly.constant(1)
        assert r * mu + r.derivative() * lam == one
        assert lam.is_zero() or lam.degree <= r.degree - 1
        assert mu.is_zero() or mu.degree <= r.degree - 2
    with pytest.raises(PreconditionError):
        extended_euclid_bounded(UPoly("x", [0, 0, 1]))  # x^2 has a double root


def test_resultant_frozen_examples():
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    assert resultant_y(y - x ** 2, y) == UPoly("x", [0, 0, 1])
    assert resultant_y(x * y + 1, y + x) == UPoly("x", [-1, 0, 1])
    with pytest.raises(PreconditionError):
        resultant_y(x + 1, y)


def test_resultant_vanishes_on_shared_factor():
    rng = random.Random(71)
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    for _ in range(10):
        a = Fraction(rng.randint(-3, 3))
        common = y - a * x
        f = common * (y + rand_upoly(rng, deg=2).to_mpoly(PLANE) + 1)
        g = common * (y - x + 1)
        res = resultant_y(f, g)
        assert res.is_zero()


def test_resultant_detects_intersections():
    x = MPoly.variable(PLANE, "x")
    y = MPoly.variable(PLANE, "y")
    # circle of radius sqrt(2) against the diagonal: meets at x = 1, -1
    f = x ** 2 + y ** 2 - 2
    g = x - y
    g_lifted = g * y + g  # force positive y-degree: (x - y)(y + 1)
    res = resultant_y(f, g_lifted)
    for a in (Fraction(1), Fraction(-1)):
        assert res(a) == 0
