"""Tests for the polynomial text parser and canonical printer."""

from fractions import Fraction

import pytest

from fano_lines.exact_poly import MultiPoly, variables
from fano_lines.parser import MAX_EXPONENT, ParseError, format_poly, parse_poly

XY = ("x", "y")
X, Y = variables(XY)


class TestLiterals:
    def test_integer(self):
        assert parse_poly("42", XY) == MultiPoly(XY, {(0, 0): 42})

    def test_negative_integer(self):
        assert parse_poly("-33", XY) == MultiPoly(XY, {(0, 0): -33})

    def test_rational(self):
        assert parse_poly("1/2", XY) == MultiPoly(XY, {(0, 0): Fraction(1, 2)})

    def test_negative_rational(self):
        assert parse_poly("-3/4", XY) == MultiPoly(XY, {(0, 0): Fraction(-3, 4)})

    def test_zero(self):
        assert parse_poly("0", XY).is_zero

    def test_zero_denominator(self):
        with pytest.raises(ParseError, match="zero denominator"):
            parse_poly("1/0", XY)


class TestGrammar:
    def test_sum_and_difference(self):
        assert parse_poly("x + y - 3", XY) == X + Y - 3

    def test_power_binds_tighter_than_product(self):
        assert parse_poly("2*x^3", XY) == 2 * X**3

    def test_product_binds_tighter_than_sum(self):
        assert parse_poly("x + 2*y", XY) == X + 2 * Y

    def test_implicit_multiplication(self):
        assert parse_poly("2x^2y", XY) == 2 * X**2 * Y

    def test_adjacent_variables_multiply(self):
        assert parse_poly("xy", XY) == X * Y

    def test_parentheses(self):
        assert parse_poly("(x + y)^2", XY) == X**2 + 2 * X * Y + Y**2

    def test_implicit_multiplication_with_parentheses(self):
        assert parse_poly("2(x + y)x", XY) == 2 * X**2 + 2 * X * Y

    def test_unary_minus_binds_looser_than_power(self):
        assert parse_poly("-x^2", XY) == -(X**2)

    def test_double_negation(self):
        assert parse_poly("--x", XY) == X

    def test_unary_plus(self):
        assert parse_poly("+x - +y", XY) == X - Y

    def test_whitespace_insensitive(self):
        assert parse_poly(" x ^ 2 + 1 / 2 ", XY) == X**2 + Fraction(1, 2)

    def test_rational_coefficient_times_variable(self):
        assert parse_poly("1/2x", XY) == Fraction(1, 2) * X

    def test_octic_form(self):
        assert parse_poly("x^8+14x^4y^4+y^8", XY) == X**8 + 14 * X**4 * Y**4 + Y**8

    def test_icosahedral_form(self):
        expected = X * Y * (X**10 + 11 * X**5 * Y**5 - Y**10)
        assert parse_poly("xy(x^10+11x^5y^5-y^10)", XY) == expected

    def test_four_variable_ring(self):
        ring = ("x", "y", "z", "t")
        x, y, z, t = variables(ring)
        assert parse_poly("x^4 - x*y^3 - z^4 + z*t^3", ring) == (
            x**4 - x * y**3 - z**4 + z * t**3
        )

    def test_multi_letter_variables_longest_match(self):
        ring = ("p24", "p34")
        p24, p34 = variables(ring)
        assert parse_poly("p24p34 + p34^2", ring) == p24 * p34 + p34**2


class TestErrors:
    def test_unclosed_parenthesis_position(self):
        with pytest.raises(ParseError, match="offset 4") as info:
            parse_poly("x^2(", XY)
        assert info.value.position == 4

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown variable") as info:
            parse_poly("x + w", XY)
        assert info.value.position == 4

    def test_unexpected_character(self):
        with pytest.raises(ParseError, match="unexpected character"):
            parse_poly("x @ y", XY)

    def test_missing_operand(self):
        with pytest.raises(ParseError, match="expected an expression"):
            parse_poly("x + ", XY)

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_poly("", XY)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError, match="unexpected"):
            parse_poly("x + y)", XY)

    def test_exponent_overflow(self):
        assert parse_poly(f"x^{MAX_EXPONENT}", XY) == X**64
        with pytest.raises(ParseError, match="exceeds the maximum 64"):
            parse_poly(f"x^{MAX_EXPONENT + 1}", XY)

    def test_negative_exponent(self):
        with pytest.raises(ParseError, match="exponent"):
            parse_poly("x^-2", XY)

    def test_stacked_exponent_rejected(self):
        with pytest.raises(ParseError, match="unexpected"):
            parse_poly("x^2^3", XY)

    def test_division_by_variable_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("x/2", XY)

    def test_parse_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_poly("(", XY)

    def test_duplicate_variables_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            parse_poly("x", ("x", "x"))


class TestRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            "0",
            "-x^3 - y",
            "x^8+14x^4y^4+y^8",
            "xy(x^10+11x^5y^5-y^10)",
            "1/2x^2 - 2/3y + 7",
        ],
    )
    def test_parse_print_parse(self, text):
        poly = parse_poly(text, XY)
        printed = format_poly(poly)
        assert parse_poly(printed, XY) == poly

    def test_seeded_round_trips(self):
        import random

        rng = random.Random(20260819)
        ring = ("x", "y", "z", "t")
        for _ in range(25):
            terms = {}
            for _ in range(rng.randrange(1, 8)):
                exps = tuple(rng.randrange(0, 5) for _ in ring)
                coeff = Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
                if coeff:
                    terms[exps] = coeff
            poly = MultiPoly(ring, terms)
            assert parse_poly(format_poly(poly), ring) == poly
