"""Expression parsing, canonical printing, JSON documents, schema checks."""

import json
import pathlib
import random
from fractions import Fraction

import pytest

from planecross import (
    MPoly,
    PLANE,
    ParseError,
    PolyPair,
    SCHEMAS,
    SchemaError,
    UPoly,
    decompose,
    dumps,
    from_json,
    generate_rc_instance,
    intersection_data,
    parse_poly,
    print_poly,
    reduce_full,
    solve_y_equation,
    to_json,
    verify_intersection_count,
)
from planecross.textio import rat_from_str, rat_to_str

X = MPoly.variable(PLANE, "x")
Y = MPoly.variable(PLANE, "y")


def test_parse_basics():
    assert parse_poly("x") == X
    assert parse_poly("x + y") == X + Y
    assert parse_poly("x^2*y - 3") == X ** 2 * Y - 3
    assert parse_poly("1/2*x") == Fraction(1, 2) * X
    assert parse_poly("(x + 1)*(x - 1)") == X ** 2 - 1
    assert parse_poly("0").is_zero()


def test_parse_unary_minus():
    assert parse_poly("-x") == -X
    assert parse_poly("-x + y") == -X + Y
    assert parse_poly("x - -2") == X + 2
    assert parse_poly("-(x + y)^2") == -((X + Y) ** 2)
    assert parse_poly("-1/2") == MPoly.constant(PLANE, Fraction(-1, 2))


def test_parse_custom_ring():
    p = parse_poly("X0^2*X1 - X2", ("X0", "X1", "X2"))
    assert p.ring == ("X0", "X1", "X2")
    assert p.coeff((2, 1, 0)) == 1


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as ei:
        parse_poly("x + ")
    assert ei.value.line == 1
    with pytest.raises(ParseError):
        parse_poly("2x")  # implicit multiplication
    with pytest.raises(ParseError):
        parse_poly("x^-2")  # exponent must be a plain natural
    with pytest.raises(ParseError):
        parse_poly("x/y")  # '/' only inside rational literals
    with pytest.raises(ParseError):
        parse_poly("1/0")
    with pytest.raises(ParseError):
        parse_poly("x + y) + 1")  # trailing input
    with pytest.raises(ParseError):
        parse_poly("z", PLANE)  # unknown variable
    with pytest.raises(ParseError):
        parse_poly("")


def test_print_frozen():
    assert print_poly(MPoly.zero(PLANE)) == "0"
    assert print_poly(-X + 1) == "-x + 1"
    assert print_poly(X ** 2 * Y - Fraction(1, 2) * X) == "x^2*y - 1/2*x"
    assert print_poly(X + Y + X ** 2) == "x^2 + x + y"
    assert print_poly(3 * X ** 2) == "3*x^2"


def test_print_orders_by_degree_then_exponents():
    f = X * Y + X ** 2 + Y ** 2
    assert print_poly(f) == "x^2 + x*y + y^2"


def test_parse_print_roundtrip_random():
    rng = random.Random(501)
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(1, 7)):
            ex = rng.randint(0, 4)
            ey = rng.randint(0, 4)
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if c:
                terms[(ex, ey)] = c
        f = MPoly(PLANE, terms)
        assert parse_poly(print_poly(f)) == f


def test_rat_str_roundtrip():
    for c in (Fraction(0), Fraction(-3), Fraction(7, 2), Fraction(-10, 9)):
        assert rat_from_str(rat_to_str(c)) == c


def test_poly_json_roundtrip():
    f = X ** 2 - Fraction(1, 3) * Y + 2
    doc = to_json(f)
    assert doc["kind"] == "poly"
    assert from_json(doc) == f


def test_pair_json_roundtrip():
    pair = PolyPair(X + Y + X ** 2, Y + X ** 2)
    doc = to_json(pair)
    assert doc["kind"] == "poly_pair"
    assert doc["n"] == 2 and doc["rc1"] and doc["rc2"]
    back = from_json(doc)
    assert back == pair


def test_solution_json_roundtrip():
    pair = PolyPair(X + Y + X ** 2, Y + X ** 2)
    sol = solve_y_equation(pair)
    doc = to_json(sol)
    assert doc == {
        "kind": "bounded_solution",
        "g1": "-x",
        "g2": "x + 1",
        "bound1": 1,
        "bound2": 1,
        "unique": True,
        "nullspace_dim": 0,
    }
    assert from_json(doc) == sol


def test_intersection_json_roundtrip():
    pair = PolyPair(X + Y + X ** 2, Y + X ** 2)
    data = intersection_data(pair)
    doc = to_json(data)
    assert doc["x_roots"] == ["0"]
    assert doc["r"] == "x"
    assert from_json(doc) == data
    rep = verify_intersection_count(pair)
    doc = to_json(rep)
    assert doc == {
        "kind": "intersection_count_report",
        "g2_top_coeff": "1",
        "oracle_total": 1,
        "agree": True,
    }
    assert from_json(doc) == rep


def test_decomposition_json_uses_lambda_key():
    pair = PolyPair(X + Y + X ** 2, Y + X ** 2)
    dec = decompose(pair)
    doc = to_json(dec)
    assert doc["lambda"] == "1"
    assert "lam" not in doc
    back = from_json(doc)
    assert back == dec


def test_reduction_report_json_roundtrip():
    pair = PolyPair(X ** 2 + Y ** 2 - 2, X - Y)
    rep = reduce_full(pair)
    doc = to_json(rep)
    assert doc["kind"] == "reduction_report"
    assert doc["jacobian_preserved"] is True
    back = from_json(doc)
    assert back.chain == rep.chain
    assert back.after == rep.after
    assert back.before == rep.before


def test_dumps_is_deterministic():
    pair = PolyPair(X + Y + X ** 3, Y + X ** 3)
    assert dumps(verify_intersection_count(pair)) == dumps(
        verify_intersection_count(pair)
    )
    # keys come out sorted regardless of construction order
    text = dumps(solve_y_equation(pair))
    keys = [line.split('"')[1] for line in text.splitlines() if '":' in line]
    assert keys == sorted(keys)


def test_from_json_rejects_bad_documents():
    with pytest.raises(SchemaError):
        from_json({"kind": "no_such_kind"})
    with pytest.raises(SchemaError) as ei:
        from_json({"kind": "poly", "ring": ["x", "y"]})  # expr missing
    assert "expr" in str(ei.value)
    with pytest.raises(SchemaError) as ei:
        from_json(
            {
                "kind": "intersection_count_report",
                "g2_top_coeff": "1.5",  # not a rational literal
                "oracle_total": 1,
                "agree": True,
            }
        )
    assert ei.value.pointer == "/g2_top_coeff"


def test_schema_extra_keys_rejected():
    doc = to_json(X + 1)
    doc["surprise"] = 1
    with pytest.raises(SchemaError):
        from_json(doc)


def test_schema_golden_files_match_registry():
    here = pathlib.Path(__file__).resolve().parent.parent / "schemas"
    on_disk = {p.stem: json.loads(p.read_text()) for p in here.glob("*.json")}
    assert on_disk == SCHEMAS


def test_exploration_report_roundtrip():
    from planecross import explore_constant_jacobian

    rep = explore_constant_jacobian(2, 1, budget=150, seed=4)
    doc = to_json(rep)
    assert doc["kind"] == "exploration_report"
    assert from_json(doc) == rep


def test_generated_pair_survives_json():
    pair = generate_rc_instance(9, 3, [0, 1])
    back = from_json(to_json(pair))
    assert back.f1 == pair.f1 and back.f2 == pair.f2
