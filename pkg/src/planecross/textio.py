"""Expression text front-end and JSON serialization for every report type.

Grammar: expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
factor := base ('^' nat)? ; base := rational | variable | '(' expr ')' ;
rational := ['-'] nat ('/' nat)?. Implicit multiplication is rejected. All
rationals cross JSON as "p/q" strings, never floats.
"""

import json
from fractions import Fraction

import jsonschema

from .errors import ParseError, SchemaError
from .membership import BoundedSolution
from .polyring import MPoly, PLANE, UPoly
from .reduction import (
    AutoChain,
    CoordLinearStep,
    LeftLinearStep,
    MixStep,
    PolyPair,
    ReductionReport,
    ShearStep,
    SwapStep,
    _MixInverseStep,
)
from .structure import (
    CounterexampleRecord,
    Decomposition,
    ExplorationReport,
    IntersectionCountReport,
    IntersectionData,
)


# -- tokenizer and parser ----------------------------------------------

_SYMBOLS = set("+-*/^()")


def _tokenize(text):
    toks = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("number", int(text[i:j]), line, col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], line, col))
            col += j - i
            i = j
        elif ch in _SYMBOLS:
            toks.append((ch, ch, line, col))
            col += 1
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(("end", None, line, col))
    return toks


class _Parser:
    def __init__(self, toks, ring):
        self.toks = toks
        self.pos = 0
        self.ring = ring

    def peek(self, ahead=0):
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def eat(self, kind):
        if self.peek()[0] == kind:
            return self.take()
        return None

    def fail(self, message):
        kind, _, line, col = self.peek()
        what = "end of input" if kind == "end" else f"{kind!r}"
        raise ParseError(f"{message}, found {what}", line, col)

    def expr(self):
        negate = bool(self.eat("-"))
        value = self.term()
        if negate:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.eat("*"):
            value = value * self.factor()
        return value

    def factor(self):
        value = self.base()
        if self.eat("^"):
            tok = self.eat("number")
            if tok is None:
                self.fail("expected a natural-number exponent")
            value = value ** tok[1]
        return value

    def base(self):
        kind = self.peek()[0]
        if kind == "number" or (kind == "-" and self.peek(1)[0] == "number"):
            return self.rational()
        if kind == "name":
            _, name, line, col = self.take()
            if name not in self.ring:
                raise ParseError(f"unknown variable {name!r}", line, col)
            return MPoly.variable(self.ring, name)
        if self.eat("("):
            value = self.expr()
            if not self.eat(")"):
                self.fail("expected ')'")
            return value
        self.fail("expected a number, a variable, or '('")

    def rational(self):
        sign = -1 if self.eat("-") else 1
        num = self.take()[1]
        if self.eat("/"):
            tok = self.eat("number")
            if tok is None:
                self.fail("expected a denominator")
            if tok[1] == 0:
                raise ParseError("zero denominator", tok[2], tok[3])
            return MPoly.constant(self.ring, Fraction(sign * num, tok[1]))
        return MPoly.constant(self.ring, Fraction(sign * num))


def parse_poly(text, ring=PLANE):
    """Exact polynomial from expression text over the named ring."""
    ring = tuple(ring)
    parser = _Parser(_tokenize(text), ring)
    value = parser.expr()
    if parser.peek()[0] != "end":
        parser.fail("trailing input")
    return value


def print_poly(f):
    """Canonical text: terms descending by (total degree, exponents), '*'/'^' explicit."""
    if not f.terms:
        return "0"
    items = sorted(f.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    pieces = []
    for mono, c in items:
        body = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(f.ring, mono) if e
        )
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append(("-" if c < 0 else "+", text))
    sign, head = pieces[0]
    out = [head if sign == "+" else f"-{head}"]
    for sign, text in pieces[1:]:
        out.append(f" {sign} {text}")
    return "".join(out)


def rat_to_str(c):
    return str(Fraction(c))


def rat_from_str(s):
    return Fraction(s)


def _upoly_to_str(p):
    return print_poly(p.to_mpoly(("x",)))


def _upoly_from_str(s):
    return parse_poly(s, ("x",)).as_upoly("x")


# -- schemas -----------------------------------------------------------

_RAT = {"type": "string", "pattern": "^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$"}
_EXPR = {"type": "string", "minLength": 1}
_COUNT = {"type": "integer", "minimum": 0}
_INT = {"type": "integer"}
_BOOL = {"type": "boolean"}


def _doc(kind, properties):
    return {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "properties": {"kind": {"const": kind}, **properties},
        "required": ["kind"] + list(properties),
        "additionalProperties": False,
    }


_STEP_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "shear"}, "p": _EXPR},
            "required": ["kind", "p"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"enum": ["coord_linear", "left_linear"]},
                "matrix": {"type": "array", "items": _RAT, "minItems": 4, "maxItems": 4},
            },
            "required": ["kind", "matrix"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"enum": ["mix", "mix_inverse"]},
                "target": {"enum": ["f1", "f2"]},
            },
            "required": ["kind", "target"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"kind": {"const": "swap"}},
            "required": ["kind"],
            "additionalProperties": False,
        },
    ]
}

_PAIR_BODY = {
    "type": "object",
    "properties": {"f1": _EXPR, "f2": _EXPR},
    "required": ["f1", "f2"],
    "additionalProperties": False,
}

_CANDIDATE_SCHEMA = {
    "type": "object",
    "properties": {
        "r": _EXPR,
        "lambda": _EXPR,
        "h1": _EXPR,
        "h2": _EXPR,
        "k1": _EXPR,
        "k2": _EXPR,
        "f1": _EXPR,
        "f2": _EXPR,
        "jacobian": _EXPR,
    },
    "required": ["r", "lambda", "h1", "h2", "k1", "k2", "f1", "f2", "jacobian"],
    "additionalProperties": False,
}

SCHEMAS = {
    "poly": _doc(
        "poly",
        {
            "ring": {
                "type": "array",
                "items": {"type": "string", "minLength": 1},
                "minItems": 1,
            },
            "expr": _EXPR,
        },
    ),
    "poly_pair": _doc(
        "poly_pair",
        {
            "f1": _EXPR,
            "f2": _EXPR,
            "n": _COUNT,
            "d1": _COUNT,
            "d2": _COUNT,
            "jac": _EXPR,
            "rc1": _BOOL,
            "rc2": _BOOL,
        },
    ),
    "bounded_solution": _doc(
        "bounded_solution",
        {
            "g1": _EXPR,
            "g2": _EXPR,
            "bound1": _COUNT,
            "bound2": _COUNT,
            "unique": _BOOL,
            "nullspace_dim": _COUNT,
        },
    ),
    "intersection_data": _doc(
        "intersection_data",
        {
            "x_roots": {"type": "array", "items": _RAT},
            "r": _EXPR,
            "multiplicities": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "total": _COUNT,
        },
    ),
    "decomposition": _doc(
        "decomposition",
        {
            "h1": _EXPR,
            "h2": _EXPR,
            "k1": _EXPR,
            "k2": _EXPR,
            "r": _EXPR,
            "lambda": _EXPR,
            "mu": _EXPR,
            "det_ok": _BOOL,
            "factor_ok": _BOOL,
            "g_factor_ok": _BOOL,
            "dual_ok": _BOOL,
        },
    ),
    "intersection_count_report": _doc(
        "intersection_count_report",
        {"g2_top_coeff": _RAT, "oracle_total": _COUNT, "agree": _BOOL},
    ),
    "reduction_report": _doc(
        "reduction_report",
        {
            "chain": {"type": "array", "items": _STEP_SCHEMA},
            "jacobian_multiplier": _RAT,
            "before": _PAIR_BODY,
            "after": _PAIR_BODY,
            "jacobian_preserved": _BOOL,
            "intersection_number_before": _COUNT,
            "intersection_number_after": _COUNT,
        },
    ),
    "exploration_report": _doc(
        "exploration_report",
        {
            "max_deg_r": {"type": "integer", "minimum": 2},
            "coeff_bound": {"type": "integer", "minimum": 1},
            "max_deg_hk": _COUNT,
            "budget": {"oneOf": [_COUNT, {"type": "null"}]},
            "seed": {"oneOf": [_INT, {"type": "null"}]},
            "r_count": _COUNT,
            "matrix_count": _COUNT,
            "candidates_examined": _COUNT,
            "degree_histogram": {
                "type": "object",
                "patternProperties": {"^(zero|0|[1-9][0-9]*)$": _COUNT},
                "additionalProperties": False,
            },
            "counterexamples": {"type": "array", "items": _CANDIDATE_SCHEMA},
            "truncated": _BOOL,
        },
    ),
}


def _validated(doc, kind):
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as e:
        pointer = "/" + "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(e.message, pointer) from None
    return doc


# -- serialization -----------------------------------------------------


def _step_to_json(step):
    if step.kind == "shear":
        return {"kind": "shear", "p": _upoly_to_str(step.p)}
    if step.kind in ("coord_linear", "left_linear"):
        return {"kind": step.kind, "matrix": [rat_to_str(e) for e in step.matrix]}
    if step.kind in ("mix", "mix_inverse"):
        return {"kind": step.kind, "target": step.target}
    if step.kind == "swap":
        return {"kind": "swap"}
    raise TypeError(f"unknown step kind {step.kind!r}")


def _step_from_json(doc):
    kind = doc["kind"]
    if kind == "shear":
        return ShearStep(_upoly_from_str(doc["p"]))
    if kind == "coord_linear":
        return CoordLinearStep(*(rat_from_str(e) for e in doc["matrix"]))
    if kind == "left_linear":
        return LeftLinearStep(*(rat_from_str(e) for e in doc["matrix"]))
    if kind == "mix":
        return MixStep(doc["target"])
    if kind == "mix_inverse":
        return _MixInverseStep(doc["target"])
    return SwapStep()


def to_json(value):
    """Plain-dict document for any domain or report type; kind-tagged."""
    if isinstance(value, MPoly):
        return {"kind": "poly", "ring": list(value.ring), "expr": print_poly(value)}
    if isinstance(value, PolyPair):
        return {
            "kind": "poly_pair",
            "f1": print_poly(value.f1),
            "f2": print_poly(value.f2),
            "n": value.n,
            "d1": value.d1,
            "d2": value.d2,
            "jac": print_poly(value.jac),
            "rc1": value.rc1,
            "rc2": value.rc2,
        }
    if isinstance(value, BoundedSolution):
        return {
            "kind": "bounded_solution",
            "g1": print_poly(value.g1),
            "g2": print_poly(value.g2),
            "bound1": value.bound1,
            "bound2": value.bound2,
            "unique": value.unique,
            "nullspace_dim": value.nullspace_dim,
        }
    if isinstance(value, IntersectionData):
        return {
            "kind": "intersection_data",
            "x_roots": [rat_to_str(a) for a in value.x_roots],
            "r": _upoly_to_str(value.r),
            "multiplicities": list(value.multiplicities),
            "total": value.total,
        }
    if isinstance(value, Decomposition):
        return {
            "kind": "decomposition",
            "h1": print_poly(value.h1),
            "h2": print_poly(value.h2),
            "k1": print_poly(value.k1),
            "k2": print_poly(value.k2),
            "r": _upoly_to_str(value.r),
            "lambda": _upoly_to_str(value.lam),
            "mu": _upoly_to_str(value.mu),
            "det_ok": value.det_ok,
            "factor_ok": value.factor_ok,
            "g_factor_ok": value.g_factor_ok,
            "dual_ok": value.dual_ok,
        }
    if isinstance(value, IntersectionCountReport):
        return {
            "kind": "intersection_count_report",
            "g2_top_coeff": rat_to_str(value.g2_top_coeff),
            "oracle_total": value.oracle_total,
            "agree": value.agree,
        }
    if isinstance(value, ReductionReport):
        return {
            "kind": "reduction_report",
            "chain": [_step_to_json(s) for s in value.chain.steps],
            "jacobian_multiplier": rat_to_str(value.chain.jacobian_multiplier),
            "before": {"f1": print_poly(value.before.f1), "f2": print_poly(value.before.f2)},
            "after": {"f1": print_poly(value.after.f1), "f2": print_poly(value.after.f2)},
            "jacobian_preserved": value.jacobian_preserved,
            "intersection_number_before": value.intersection_number_before,
            "intersection_number_after": value.intersection_number_after,
        }
    if isinstance(value, ExplorationReport):
        return {
            "kind": "exploration_report",
            "max_deg_r": value.max_deg_r,
            "coeff_bound": value.coeff_bound,
            "max_deg_hk": value.max_deg_hk,
            "budget": value.budget,
            "seed": value.seed,
            "r_count": value.r_count,
            "matrix_count": value.matrix_count,
            "candidates_examined": value.candidates_examined,
            "degree_histogram": dict(sorted(value.degree_histogram.items())),
            "counterexamples": [
                {
                    "r": _upoly_to_str(c.r),
                    "lambda": _upoly_to_str(c.lam),
                    "h1": print_poly(c.h1),
                    "h2": print_poly(c.h2),
                    "k1": print_poly(c.k1),
                    "k2": print_poly(c.k2),
                    "f1": print_poly(c.f1),
                    "f2": print_poly(c.f2),
                    "jacobian": print_poly(c.jacobian),
                }
                for c in value.counterexamples
            ],
            "truncated": value.truncated,
        }
    raise TypeError(f"no JSON form for {type(value).__name__}")


def from_json(doc):
    """Rebuild the domain value for a kind-tagged document, validating first."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("document must be an object with a 'kind' field", "")
    kind = doc["kind"]
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown kind {kind!r}", "/kind")
    _validated(doc, kind)
    if kind == "poly":
        return parse_poly(doc["expr"], tuple(doc["ring"]))
    if kind == "poly_pair":
        return PolyPair(parse_poly(doc["f1"]), parse_poly(doc["f2"]))
    if kind == "bounded_solution":
        return BoundedSolution(
            parse_poly(doc["g1"]),
            parse_poly(doc["g2"]),
            doc["bound1"],
            doc["bound2"],
            doc["unique"],
            doc["nullspace_dim"],
        )
    if kind == "intersection_data":
        return IntersectionData(
            tuple(rat_from_str(a) for a in doc["x_roots"]),
            _upoly_from_str(doc["r"]),
            tuple(doc["multiplicities"]),
            doc["total"],
        )
    if kind == "decomposition":
        return Decomposition(
            parse_poly(doc["h1"]),
            parse_poly(doc["h2"]),
            parse_poly(doc["k1"]),
            parse_poly(doc["k2"]),
            _upoly_from_str(doc["r"]),
            _upoly_from_str(doc["lambda"]),
            _upoly_from_str(doc["mu"]),
            doc["det_ok"],
            doc["factor_ok"],
            doc["g_factor_ok"],
            doc["dual_ok"],
        )
    if kind == "intersection_count_report":
        return IntersectionCountReport(
            rat_from_str(doc["g2_top_coeff"]), doc["oracle_total"], doc["agree"]
        )
    if kind == "reduction_report":
        return ReductionReport(
            AutoChain(tuple(_step_from_json(s) for s in doc["chain"])),
            PolyPair(parse_poly(doc["before"]["f1"]), parse_poly(doc["before"]["f2"])),
            PolyPair(parse_poly(doc["after"]["f1"]), parse_poly(doc["after"]["f2"])),
            doc["jacobian_preserved"],
            doc["intersection_number_before"],
            doc["intersection_number_after"],
        )
    return ExplorationReport(
        doc["max_deg_r"],
        doc["coeff_bound"],
        doc["max_deg_hk"],
        doc["budget"],
        doc["seed"],
        doc["r_count"],
        doc["matrix_count"],
        doc["candidates_examined"],
        dict(doc["degree_histogram"]),
        tuple(
            CounterexampleRecord(
                _upoly_from_str(c["r"]),
                _upoly_from_str(c["lambda"]),
                parse_poly(c["h1"]),
                parse_poly(c["h2"]),
                parse_poly(c["k1"]),
                parse_poly(c["k2"]),
                parse_poly(c["f1"]),
                parse_poly(c["f2"]),
                parse_poly(c["jacobian"]),
            )
            for c in doc["counterexamples"]
        ),
        doc["truncated"],
    )


def dumps(value, **kwargs):
    """Deterministic JSON text for a domain value."""
    kwargs.setdefault("indent", 2)
    kwargs.setdefault("sort_keys", True)
    return json.dumps(to_json(value), **kwargs)
