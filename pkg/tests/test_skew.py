"""Tests for explicit pairwise-disjoint line families on smooth surfaces."""

import numpy as np
import pytest

from fano_lines.exact_poly import variables
from fano_lines.lines import Line3, line_on_surface, lines_disjoint
from fano_lines.p1_geometry import BinaryForm
from fano_lines.separable import SeparableSurface, count_and_emit
from fano_lines.skew import (
    SkewFamily,
    SkewVerification,
    rams_family,
    rams_surface,
    skew_bounds,
    verify_skew_set,
)

X, Y, Z, T = variables(("x", "y", "z", "t"))


class TestRamsSurface:
    def test_degree_seven_terms(self):
        expected = X**6 * Y + X * Y**6 + Z**6 * T + Z * T**6
        assert rams_surface(7) == expected

    def test_degree_three(self):
        assert rams_surface(3) == X**2 * Y + X * Y**2 + Z**2 * T + Z * T**2

    def test_rejects_low_degree(self):
        with pytest.raises(ValueError):
            rams_surface(2)

    def test_custom_ring(self):
        surface = rams_surface(5, ring=("a", "b", "c", "d"))
        assert surface.ring == ("a", "b", "c", "d")
        assert int(surface.degree) == 5


class TestRamsFamily:
    def test_degree_seven(self):
        family = rams_family(7)
        assert isinstance(family, SkewFamily)
        assert family.degree == 7
        assert family.claimed_size == 7 * 5 + 4 == 39
        assert len(family) == 39
        assert len(family.lines) == 39

    def test_degree_seven_verification(self):
        family = rams_family(7)
        result = verify_skew_set(family.surface, family.lines)
        assert result.ok
        assert result.count == 39
        assert result.violation is None
        assert result.min_pairing > 1e-6

    def test_degree_nine(self):
        family = rams_family(9)
        assert family.claimed_size == 9 * 7 + 4 == 67
        assert len(family) == 67
        result = verify_skew_set(family.surface, family.lines)
        assert result.ok
        assert result.min_pairing > 1e-6

    def test_lines_individually_on_surface(self):
        family = rams_family(7)
        for line in family.lines:
            assert line_on_surface(family.surface, line, tol=1e-8)

    def test_lines_pairwise_disjoint(self):
        lines = rams_family(7).lines
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                assert lines_disjoint(lines[i], lines[j], tol=1e-8)

    @pytest.mark.parametrize("d", [5, 6, 8, 10])
    def test_rejects_unsupported_degrees(self, d):
        with pytest.raises(ValueError):
            rams_family(d)

    def test_family_is_frozen(self):
        family = rams_family(7)
        with pytest.raises(AttributeError):
            family.degree = 9

    @pytest.mark.slow
    def test_degree_eleven(self):
        family = rams_family(11)
        assert len(family) == 11 * 9 + 4 == 103
        result = verify_skew_set(family.surface, family.lines)
        assert result.ok
        assert result.min_pairing > 1e-6


class TestVerifySkewSet:
    def test_off_surface_line_reported(self):
        family = rams_family(7)
        bad = Line3((1, 0, 0, 0), (0, 1, 0, 0))  # not on the surface
        lines = (family.lines[0], bad, family.lines[1])
        result = verify_skew_set(family.surface, lines)
        assert not result.ok
        assert result.violation == ("containment", 1)

    def test_meeting_lines_reported(self):
        # Two distinct lines through (1:0:0:0) on the cubic xy(x+y) ... use
        # a separable cubic with grid lines that share a vertex instead.
        surface = SeparableSurface(
            BinaryForm([1, 0, 0, 1]), BinaryForm([-1, 0, 0, -1])
        )
        report = count_and_emit(surface)
        lines = list(report.all_lines())
        meeting = None
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                if not lines_disjoint(lines[i], lines[j]):
                    meeting = (lines[i], lines[j])
                    break
            if meeting:
                break
        assert meeting is not None
        result = verify_skew_set(surface.surface_form(), meeting)
        assert not result.ok
        assert result.violation[0] == "incidence"

    def test_single_line_trivially_skew(self):
        family = rams_family(7)
        result = verify_skew_set(family.surface, family.lines[:1])
        assert result.ok
        assert result.count == 1
        assert result.min_pairing == float("inf")

    def test_accepts_bare_polynomial_surface(self):
        family = rams_family(7)
        result = verify_skew_set(rams_surface(7), family.lines)
        assert result.ok
        assert isinstance(result, SkewVerification)


class TestSkewBounds:
    def test_degree_seven(self):
        assert skew_bounds(7) == {
            "miyaoka": 70,
            "rams": 37,
            "constructed": 39,
            "known_max": "open",
        }

    def test_degree_three(self):
        assert skew_bounds(3) == {
            "miyaoka": 6,
            "rams": 5,
            "constructed": None,
            "known_max": 6,
        }

    def test_degree_four(self):
        assert skew_bounds(4) == {
            "miyaoka": 16,
            "rams": 10,
            "constructed": None,
            "known_max": 16,
        }

    def test_even_degrees_have_no_construction(self):
        for d in (6, 8, 10, 20):
            assert skew_bounds(d)["constructed"] is None

    def test_construction_below_miyaoka(self):
        for d in (7, 9, 11, 13, 15):
            bounds = skew_bounds(d)
            assert bounds["constructed"] == d * (d - 2) + 4
            assert bounds["constructed"] > bounds["rams"]
            assert bounds["constructed"] < bounds["miyaoka"]

    def test_rejects_low_degree(self):
        with pytest.raises(ValueError):
            skew_bounds(2)


class TestSeparableCrossCheck:
    def test_total_line_count_of_degree_seven_surface(self):
        # The degree-7 family's surface is separable with 3d^2 - 4d lines in
        # total; the 39 disjoint ones are a sub-family.
        surface = SeparableSurface(
            BinaryForm([0, 1, 0, 0, 0, 0, 1, 0]),     # x^6 y + x y^6
            BinaryForm([0, -1, 0, 0, 0, 0, -1, 0]),   # -(z^6 t + z t^6)
        )
        report = count_and_emit(surface)
        assert report.total == 3 * 49 - 4 * 7 == 119
