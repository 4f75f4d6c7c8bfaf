import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arealmm.core import ParseError
from arealmm.expr import (
    POLE,
    EvaluationPoint,
    Lit,
    Neg,
    Pow,
    Prod,
    Quot,
    SqrtLit,
    Sum,
    Var,
    evaluate,
    evaluate_array,
    log_abs,
    log_abs_array,
    parse,
    to_text,
    variables,
)


class TestParseStructure:
    def test_sum_of_three(self):
        assert parse("1+x+y") == Sum((Lit(1.0), Var("x"), Var("y")))

    def test_sqrt_literal(self):
        assert parse("sqrt(2)+x+y") == Sum((SqrtLit(2), Var("x"), Var("y")))

    def test_moebius_shape(self):
        expected = Sum((
            Var("y"),
            Quot(Sum((Lit(1.0), Neg(Var("x")))), Sum((Lit(1.0), Var("x")))),
        ))
        assert parse("y+(1-x)/(1+x)") == expected

    def test_precedence(self):
        # ^ binds tighter than unary minus, which binds tighter than *
        assert parse("-x^2") == Neg(Pow(Var("x"), 2))
        assert parse("-x*y") == Prod((Neg(Var("x")), Var("y")))
        assert parse("1+2*x") == Sum((Lit(1.0), Prod((Lit(2.0), Var("x")))))

    def test_left_associativity(self):
        assert parse("a/b/c") == Quot(Quot(Var("a"), Var("b")), Var("c"))
        assert parse("x/y*z") == Prod((Quot(Var("x"), Var("y")), Var("z")))

    def test_numbered_variables(self):
        assert variables(parse("x1*x2+y10")) == ("x1", "x2", "y10")

    def test_negative_exponent(self):
        assert parse("x^-2") == Pow(Var("x"), -2)
        assert parse("x^(-2)") == Pow(Var("x"), -2)


class TestParseErrors:
    @pytest.mark.parametrize("text,fragment", [
        ("x^0", "zero exponent"),
        ("x^2.5", "non-integer exponent"),
        ("1/(2-2)", "zero constant"),
        ("1/0", "zero constant"),
        ("2x", "trailing"),
        ("ab", "unknown identifier"),
        ("x+", "unexpected end"),
        ("sqrt(-2)", "positive integer"),
        ("sqrt(x)", "positive integer"),
        ("(x+y", "expected ')'"),
    ])
    def test_rejected(self, text, fragment):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert fragment in str(err.value)

    def test_offset_reported(self):
        with pytest.raises(ParseError) as err:
            parse("x + @")
        assert err.value.offset == 4

    def test_nonconstant_zero_denominator_is_runtime(self):
        # x/x - 1 vanishes identically but is syntactically non-constant
        expr = parse("1/(x/x-1)")
        assert evaluate(expr, (0.5,)) is POLE


class TestEvaluate:
    def test_examples(self):
        assert evaluate(parse("1+x+y"), (0, 0)) == 1
        assert evaluate(parse("x+y"), (1j, -1j)) == 0
        assert evaluate(parse("(1-x)/(1+x)"), (-1,)) is POLE

    def test_pole_absorbs(self):
        assert evaluate(parse("1+1/x"), (0,)) is POLE
        assert evaluate(parse("(1/x)*x"), (0,)) is POLE

    def test_zero_to_negative_power_is_pole(self):
        assert evaluate(parse("x^-2"), (0,)) is POLE

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="2 variables"):
            evaluate(parse("x+y"), (1,))

    def test_mapping_point(self):
        assert evaluate(parse("x+2*y"), {"x": 1j, "y": 0.25}) == 0.5 + 1j

    def test_sqrt_value(self):
        assert evaluate(parse("sqrt(2)"), ()) == complex(math.sqrt(2))


class TestLogAbs:
    def test_examples(self):
        assert log_abs(parse("x+1"), (0,)) == 0.0
        assert abs(log_abs(parse("x+y"), (0.5, 0)) - math.log(0.5)) < 1e-15
        assert log_abs(parse("x+y"), (1j, -1j)) == -math.inf

    def test_pole_gives_plus_infinity(self):
        assert log_abs(parse("1/x"), (0,)) == math.inf


class TestEvaluationPoint:
    def test_inside_disk_ok(self):
        p = EvaluationPoint((0.5j, -1.0))
        assert len(p) == 2

    def test_boundary_slack(self):
        EvaluationPoint((complex(1.0 + 5e-13, 0.0),))

    def test_outside_rejected(self):
        with pytest.raises(ValueError, match="outside the closed unit disk"):
            EvaluationPoint((1.5,))


# --- property tests -------------------------------------------------------

_names = st.sampled_from(["x", "y", "z1"])
_leaves = st.one_of(
    _names.map(Var),
    st.sampled_from([0.0, 1.0, 2.0, 0.5, 3.25]).map(Lit),
    st.sampled_from([2, 3, 5]).map(SqrtLit),
)


def _composites(children):
    safe_denominator = st.one_of(
        _names.map(Var),
        st.sampled_from([1.0, 2.0, 0.5]).map(Lit),
        st.tuples(_names.map(Var), st.sampled_from([1.0, 2.0]).map(Lit)).map(
            lambda t: Sum((t[1], t[0]))
        ),
    )
    return st.one_of(
        children.map(Neg),
        st.lists(children, min_size=2, max_size=3).map(lambda c: Sum(tuple(c))),
        st.lists(children, min_size=2, max_size=3).map(lambda c: Prod(tuple(c))),
        st.tuples(children, safe_denominator).map(lambda t: Quot(*t)),
        st.tuples(children, st.sampled_from([-3, -1, 2, 3])).map(lambda t: Pow(*t)),
    )


_asts = st.recursive(_leaves, _composites, max_leaves=12)


@given(_asts)
@settings(max_examples=120, deadline=None)
def test_print_parse_round_trip(ast):
    assert parse(to_text(ast)) == ast


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_quotient_multiplicativity(data):
    """evaluate(p/q) * evaluate(q) == evaluate(p) to 1e-12 relative."""
    p = data.draw(_asts)
    q = data.draw(_asts)
    expr = Quot(p, q)
    names = variables(expr)
    rng = random.Random(data.draw(st.integers(0, 2 ** 16)))
    point = {
        n: rng.uniform(0.05, 1.0) * cmath.exp(2j * math.pi * rng.random())
        for n in names
    }
    qv = evaluate(q, point)
    if qv is POLE or qv == 0:
        return
    pv = evaluate(p, point)
    if pv is POLE:
        return
    lhs = evaluate(expr, point) * qv
    assert abs(lhs - pv) <= 1e-12 * max(1.0, abs(pv))


def test_log_abs_additivity():
    """log|P*Q| == log|P| + log|Q| at finite points, tolerance 1e-10."""
    rng = random.Random(7)
    p = parse("1+x+y")
    q = parse("x*y+sqrt(2)")
    prod = Prod((p, q))
    for _ in range(200):
        point = [
            math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
            for _ in range(2)
        ]
        lp, lq, lpq = (log_abs(e, point) for e in (p, q, prod))
        if not (math.isfinite(lp) and math.isfinite(lq)):
            continue
        assert abs(lpq - (lp + lq)) < 1e-10


def test_vectorized_matches_scalar():
    exprs = [parse(t) for t in ("1+x+y", "y+(1-x)/(1+x)", "x^2*y+sqrt(3)", "x^-1+y")]
    rng = np.random.default_rng(5)
    pts = {
        "x": np.sqrt(rng.random(64)) * np.exp(2j * np.pi * rng.random(64)),
        "y": np.sqrt(rng.random(64)) * np.exp(2j * np.pi * rng.random(64)),
    }
    for expr in exprs:
        vec = evaluate_array(expr, pts)
        logs = log_abs_array(expr, pts)
        for i in range(64):
            point = {"x": complex(pts["x"][i]), "y": complex(pts["y"][i])}
            sv = evaluate(expr, point)
            assert sv is not POLE
            assert abs(vec[i] - sv) < 1e-12 * max(1.0, abs(sv))
            assert abs(logs[i] - log_abs(expr, point)) < 1e-10
