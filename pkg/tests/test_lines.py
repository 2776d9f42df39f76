"""Tests for line representation, Pluecker coordinates, and containment."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from fano_lines.exact_poly import MultiPoly, variables
from fano_lines.lines import Line3, evaluate_at_points, line_on_surface, lines_disjoint

RING4 = ("x", "y", "z", "t")
X, Y, Z, T = variables(RING4)


def fermat(d):
    return X**d + Y**d + Z**d + T**d


def fermat_diff(d):
    return X**d - Y**d - Z**d + T**d


class TestPluckerCoordinates:
    def test_axis_line_z_t_zero(self):
        line = Line3((1, 0, 0, 0), (0, 1, 0, 0))
        assert line.exact
        assert line.plucker == (1, 0, 0, 0, 0, 0)

    def test_axis_line_x_y_zero(self):
        line = Line3((0, 0, 1, 0), (0, 0, 0, 1))
        assert line.plucker == (0, 0, 0, 0, 0, 1)

    def test_normalization_largest_entry_is_one(self):
        line = Line3((3, 0, 0, 0), (0, 5, 0, 0))
        assert line.plucker == (1, 0, 0, 0, 0, 0)
        numeric = Line3((3.0, 1.0, 0.5, 0.25), (0.0, 5.0, 1.0, 2.0))
        assert max(abs(p) for p in numeric.plucker) == 1.0

    def test_plucker_relation_random_exact(self):
        rng = random.Random(7)
        for _ in range(25):
            a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
            b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
            try:
                line = Line3(a, b)
            except ValueError:
                continue
            assert line.plucker_relation_residual() == 0

    def test_plucker_relation_random_numeric(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            line = Line3(a, b)
            assert abs(line.plucker_relation_residual()) < 1e-12

    def test_proportional_points_rejected(self):
        with pytest.raises(ValueError):
            Line3((1, 2, 3, 4), (2, 4, 6, 8))
        with pytest.raises(ValueError):
            Line3((1.0, 2.0, 3.0, 4.0), (2.0, 4.0, 6.0, 8.0))

    def test_same_line_under_basis_change(self):
        line = Line3((1, 1, 0, 0), (0, 0, 1, 1))
        other = Line3((2, 2, 3, 3), (1, 1, -1, -1))  # combinations of the same points
        assert line.same_line(other)
        third = Line3((1, 0, 0, 0), (0, 1, 0, 0))
        assert not line.same_line(third)

    def test_from_basis_matrix(self):
        matrix = [(1, 0), (1, 0), (0, 1), (0, 1)]
        line = Line3.from_basis_matrix(matrix)
        assert line.same_line(Line3((1, 1, 0, 0), (0, 0, 1, 1)))


class TestCanonicalBasis:
    def test_echelon_rows_identity(self):
        line = Line3((1, 1, 0, 0), (0, 0, 1, 1))
        assert line.stratum_index() == 2  # p12 = 0, p13 = 1
        col0, col1 = line.canonical_basis()
        assert (col0[0], col1[0]) == (1, 0)
        assert (col0[2], col1[2]) == (0, 1)

    def test_grid_line_strata(self):
        # Lines joining a zero of a form in (x, y) with a zero of a form in
        # (z, t) land in cells 2-5 depending on which coordinates vanish.
        assert Line3((1, 2, 0, 0), (0, 0, 1, 3)).stratum_index() == 2
        assert Line3((0, 1, 0, 0), (0, 0, 1, 3)).stratum_index() == 4
        assert Line3((1, 2, 0, 0), (0, 0, 0, 1)).stratum_index() == 3
        assert Line3((0, 1, 0, 0), (0, 0, 0, 1)).stratum_index() == 5

    def test_generic_line_stratum_one(self):
        line = Line3((1, 0, 2, 3), (0, 1, 4, 5))
        assert line.stratum_index() == 1
        col0, col1 = line.canonical_basis()
        assert col0 == (1, 0, 2, 3)
        assert col1 == (0, 1, 4, 5)


class TestIncidence:
    def test_disjoint_axis_lines(self):
        zt = Line3((1, 0, 0, 0), (0, 1, 0, 0))  # z = t = 0
        xy = Line3((0, 0, 1, 0), (0, 0, 0, 1))  # x = y = 0
        assert lines_disjoint(zt, xy)

    def test_meeting_lines(self):
        zt = Line3((1, 0, 0, 0), (0, 1, 0, 0))  # z = t = 0
        yt = Line3((1, 0, 0, 0), (0, 0, 1, 0))  # y = t = 0, meet at [1:0:0:0]
        assert not lines_disjoint(zt, yt)

    def test_pairing_symmetric(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            l1 = Line3(rng.standard_normal(4), rng.standard_normal(4))
            l2 = Line3(rng.standard_normal(4), rng.standard_normal(4))
            assert abs(l1.pairing(l2) - l2.pairing(l1)) < 1e-12

    def test_numeric_tolerance(self):
        zt = Line3((1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0))
        nearly_meeting = Line3((1.0, 0.0, 1e-12, 0.0), (0.0, 1.0, 0.0, 1e-12))
        assert not lines_disjoint(zt, nearly_meeting, tol=1e-8)


class TestContainment:
    def test_line_on_fermat_quartic_difference(self):
        surface = fermat_diff(4)  # x^4 - y^4 - z^4 + t^4
        line = Line3((1, 1, 0, 0), (0, 0, 1, 1))
        assert line_on_surface(surface, line)

    def test_z_t_zero_not_on_fermat_difference(self):
        surface = fermat_diff(4)
        line = Line3((1, 0, 0, 0), (0, 1, 0, 0))
        assert not line_on_surface(surface, line)

    def test_numeric_matches_exact(self):
        surface = fermat_diff(4)
        on = Line3((1.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 1.0))
        off = Line3((1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0))
        assert line_on_surface(surface, on, tol=1e-8)
        assert not line_on_surface(surface, off, tol=1e-8)

    def test_complex_line_on_fermat_cubic(self):
        # On x^3+y^3+z^3+t^3, the line through (1, -1, 0, 0) and (0, 0, 1, -w)
        # with w a cube root of unity lies on the surface.
        surface = fermat(3)
        w = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
        line = Line3((1, -1, 0, 0), (0, 0, 1, -w))
        assert line_on_surface(surface, line, tol=1e-10)

    def test_fraction_scaled_line(self):
        surface = fermat_diff(4)
        line = Line3(
            (Fraction(1, 3), Fraction(1, 3), 0, 0),
            (0, 0, Fraction(2, 7), Fraction(2, 7)),
        )
        assert line.exact
        assert line_on_surface(surface, line)

    def test_rejects_wrong_ring(self):
        poly = MultiPoly.variable(("x", "y"), "x")
        line = Line3((1, 0, 0, 0), (0, 1, 0, 0))
        with pytest.raises(ValueError):
            line_on_surface(poly, line)

    def test_exact_flag_requires_exact_line(self):
        surface = fermat_diff(4)
        line = Line3((1.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 1.0))
        with pytest.raises(ValueError):
            line_on_surface(surface, line, exact=True)


class TestBatchEvaluation:
    def test_matches_pointwise_evaluate(self):
        surface = fermat_diff(5) + 3 * X**2 * Y * Z * T
        rng = np.random.default_rng(17)
        pts = rng.standard_normal((40, 4)) + 1j * rng.standard_normal((40, 4))
        batch = evaluate_at_points(surface, pts)
        for k in range(40):
            direct = surface.evaluate(list(pts[k]))
            assert abs(batch[k] - direct) < 1e-9 * max(1.0, abs(direct))

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            evaluate_at_points(fermat(3), np.zeros((4,)))
