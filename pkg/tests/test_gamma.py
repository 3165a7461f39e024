"""Gamma representation: grammar, canonicalization, rigorous evaluation."""

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetagamma.errors import InvalidInputError, PrecisionExceededError
from zetagamma.gamma import (
    Box,
    CanonicalGamma,
    LogRatioGamma,
    NamedGamma,
    NumericGamma,
    RationalGamma,
    algebraic_gamma,
    canonicalize,
    evaluate,
    format_gamma,
    format_poly,
    parse_gamma,
    parse_poly,
)

# ---------------------------------------------------------------------------
# Grammar round trips.


@pytest.mark.parametrize(
    "text",
    [
        "rat:3/5",
        "rat:-6/4",
        "rat:0",
        "rat:7",
        "alg:x^2-2",
        "alg:x^2-2@[1,2]",
        "alg:x^2+1@[-1,1]x[1/2,2]",
        "alg:x^5-x-1",
        "alg:2x^3-3x+3",
        "logratio:3/2",
        "logratio:9/4",
        "const:pi",
        "const:e",
        "num:3.14159~6",
        "num:-0.5~3",
    ],
)
def test_round_trip(text):
    g = parse_gamma(text)
    assert parse_gamma(format_gamma(g)) == g


def test_poly_format_parse():
    assert parse_poly("x^2-2") == (-2, 0, 1)
    assert parse_poly("2x^3+x-5") == (-5, 1, 0, 2)
    assert parse_poly("-x^2+3") == (3, 0, -1)
    assert format_poly((-2, 0, 1)) == "x^2-2"
    assert format_poly((-5, 1, 0, 2)) == "2x^3+x-5"


@pytest.mark.parametrize(
    "text",
    [
        "nonsense",
        "rat:1/0",
        "rat:x",
        "alg:x-1",  # degree 1
        "alg:x^2-4",  # reducible
        "alg:x^9-2x-1",  # degree cap
        "alg:x^2-2@[5,6]",  # empty box
        "alg:x^2-2@[-2,2]",  # two roots
        "logratio:1/2",
        "logratio:2/1",
        "const:phi",
        "num:abc~5",
        "num:1.5~0",
    ],
)
def test_bad_inputs_rejected(text):
    with pytest.raises(InvalidInputError):
        parse_gamma(text)


def test_box_selects_root():
    plus = parse_gamma("alg:x^2-2@[1,2]")
    minus = parse_gamma("alg:x^2-2@[-2,-1]")
    assert plus.root_index != minus.root_index
    assert evaluate(plus, 15).real > 0 > evaluate(minus, 15).real


def test_default_root_is_principal():
    assert evaluate(parse_gamma("alg:x^2-2"), 15).real > 0
    i_gamma = parse_gamma("alg:x^2+1")
    ball = evaluate(i_gamma, 15)
    assert ball.imag == 1 and ball.real == 0 and ball.radius == 0


# ---------------------------------------------------------------------------
# Canonicalization.


def test_canonicalize_examples():
    c = canonicalize(parse_gamma("logratio:9/4"))
    assert c.canonical == LogRatioGamma(3, 2) and c.scale == 1
    c = canonicalize(parse_gamma("logratio:8/2"))
    assert c.canonical == RationalGamma(Fraction(1)) and c.scale == 3
    c = canonicalize(parse_gamma("rat:-6/4"))
    assert c.canonical == RationalGamma(Fraction(1)) and c.scale == Fraction(-3, 2)
    c = canonicalize(parse_gamma("rat:0"))
    assert c.canonical == RationalGamma(Fraction(0)) and c.scale == 1


def test_canonicalize_idempotent_fixed_cases():
    for text in ["logratio:9/4", "logratio:8/2", "rat:-6/4", "const:pi", "alg:x^2-2", "num:1.25~4"]:
        c = canonicalize(parse_gamma(text))
        again = canonicalize(c.canonical)
        assert again.canonical == c.canonical
        assert again.scale == 1


@given(st.integers(2, 60), st.integers(2, 60), st.integers(1, 5), st.integers(1, 5))
@settings(max_examples=80)
def test_canonicalize_logratio_properties(a0, b0, i, j):
    g = LogRatioGamma(a0**i, b0**j)
    c = canonicalize(g)
    if isinstance(c.canonical, LogRatioGamma):
        lr = c.canonical
        from zetagamma.lattice import mult_independent, perfect_power_root

        assert mult_independent([lr.a, lr.b]).independent
        assert perfect_power_root(lr.a)[1] == 1
        assert perfect_power_root(lr.b)[1] == 1
        again = canonicalize(c.canonical)
        assert again.scale == 1 and again.canonical == c.canonical
    else:
        # dependent arguments always collapse to a rational, never loop
        assert isinstance(c.canonical, RationalGamma)


def test_dependent_logratio_collapses():
    c = canonicalize(LogRatioGamma(4, 8))
    assert c.canonical == RationalGamma(Fraction(1)) and c.scale == Fraction(2, 3)


@given(
    st.fractions(min_value=Fraction(-30), max_value=Fraction(30), max_denominator=12)
)
def test_canonicalize_rational(q):
    c = canonicalize(RationalGamma(q))
    if q == 0:
        assert c.scale == 1 and c.canonical.value == 0
    else:
        assert c.scale == q and c.canonical.value == 1


def test_numeric_consistency_of_scale():
    """evaluate(input) equals scale * evaluate(canonical) within radii, for
    200 seeded random rational and log-ratio gammas at 40 digits."""
    rng = random.Random(20260811)
    for _ in range(200):
        if rng.random() < 0.5:
            g = RationalGamma(Fraction(rng.randint(-40, 40), rng.randint(1, 12)))
        else:
            g = LogRatioGamma(rng.randint(2, 80), rng.randint(2, 80))
        c = canonicalize(g)
        v_in = evaluate(g, 40)
        v_can = evaluate(c.canonical, 40)
        with mpmath.workdps(60):
            scale = mpmath.mpf(c.scale.numerator) / c.scale.denominator
            diff = abs(v_in.real - scale * v_can.real)
            assert diff <= v_in.radius + abs(scale) * v_can.radius + mpmath.mpf(10) ** -35


# ---------------------------------------------------------------------------
# Evaluation.


def test_evaluate_rational():
    ball = evaluate(RationalGamma(Fraction(1, 2)), 10)
    assert ball.real == 0.5 and ball.radius <= mpmath.mpf(10) ** -10


def test_evaluate_logratio_frozen_digits():
    # oracle: high-precision logarithm quotient
    with mpmath.workdps(50):
        oracle = mpmath.log(3) / mpmath.log(2)
        assert mpmath.nstr(oracle, 20) == "1.5849625007211561815"
    ball = evaluate(LogRatioGamma(3, 2), 20)
    with mpmath.workdps(50):
        assert abs(ball.real - oracle) <= ball.radius
        assert ball.radius <= abs(ball.real) * mpmath.mpf(10) ** -20


def test_evaluate_named_constants():
    with mpmath.workdps(45):
        assert abs(evaluate(NamedGamma("pi"), 40).real - mpmath.pi) < mpmath.mpf(10) ** -38
        assert abs(evaluate(NamedGamma("e"), 40).real - mpmath.e) < mpmath.mpf(10) ** -38


def test_evaluate_algebraic_sqrt2():
    ball = evaluate(parse_gamma("alg:x^2-2@[1,2]"), 30)
    with mpmath.workdps(70):  # oracle well beyond the ball's precision
        assert abs(ball.real - mpmath.sqrt(2)) <= ball.radius + mpmath.mpf(10) ** -60
    assert ball.is_real


def test_evaluate_numeric_literal_precision():
    g = NumericGamma("3.14159", 6)
    ball = evaluate(g, 5)
    assert abs(ball.real - 3.14159) < 1e-4
    with pytest.raises(PrecisionExceededError):
        evaluate(g, 7)


def test_evaluate_quintic_root():
    g = parse_gamma("alg:x^5-x-1")
    ball = evaluate(g, 30)
    # the real root of x^5 - x - 1 (oracle: mpmath polynomial root)
    with mpmath.workdps(40):
        oracle = mpmath.findroot(lambda t: t**5 - t - 1, 1.17)
        assert abs(ball.real - oracle) <= ball.radius + mpmath.mpf(10) ** -35


def test_boundary_box_rejected():
    # Re(i) = 0 sits exactly on this box edge: undecidable, must error out.
    with pytest.raises(InvalidInputError):
        algebraic_gamma((1, 0, 1), Box(Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2)))


def test_canonical_gamma_requires_nonzero_scale():
    with pytest.raises(InvalidInputError):
        CanonicalGamma(RationalGamma(Fraction(1)), Fraction(0))


def test_parser_rejects_huge_exponents_before_allocating():
    with pytest.raises(InvalidInputError):
        parse_poly("x^99999999-2")
    with pytest.raises(InvalidInputError):
        parse_gamma("alg:x^123456789+1")


@given(st.text(alphabet="rautlogicnspex:/@[],~.^+-0123456789", max_size=24))
@settings(max_examples=300)
def test_grammar_fuzz_never_crashes(text):
    # arbitrary input either parses or raises the package's input error
    try:
        g = parse_gamma(text)
    except InvalidInputError:
        return
    assert parse_gamma(format_gamma(g)) == g
