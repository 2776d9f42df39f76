"""Lines in projective 3-space.

A line is stored as a rank-2 basis of two spanning points (the columns of a
4x2 matrix) together with its six Pluecker coordinates

    (p12, p13, p14, p23, p24, p34),   p_ij = u_i v_j - u_j v_i,

normalized so the entry of largest modulus is exactly 1.  The module provides
containment testing against a surface form (exact for rational data, residual
based otherwise) and the Grassmannian incidence pairing used to decide whether
two lines meet.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_poly import MultiPoly

__all__ = [
    "Line3",
    "line_on_surface",
    "lines_disjoint",
    "evaluate_at_points",
]

#: Row pairs defining the six Pluecker coordinates, in coordinate order.
PIVOT_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

_TIE = 1.0 - 1e-9  # relative threshold for "entry of largest modulus"


def _is_exact_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class Line3:
    """A projective line spanned by two points of P^3.

    Parameters
    ----------
    point_a, point_b:
        Length-4 coordinate sequences.  If every entry is an ``int`` or
        ``Fraction`` the line is stored exactly; otherwise entries are
        coerced to ``complex``.
    """

    __slots__ = ("basis", "plucker", "exact")

    def __init__(self, point_a: Sequence, point_b: Sequence):
        a = tuple(point_a)
        b = tuple(point_b)
        if len(a) != 4 or len(b) != 4:
            raise ValueError("spanning points must have four coordinates")
        exact = all(_is_exact_scalar(v) for v in a + b)
        if exact:
            a = tuple(Fraction(v) for v in a)
            b = tuple(Fraction(v) for v in b)
        else:
            a = tuple(complex(v) for v in a)
            b = tuple(complex(v) for v in b)
        minors = tuple(a[i] * b[j] - a[j] * b[i] for i, j in PIVOT_PAIRS)
        magnitudes = [abs(m) for m in minors]
        top = max(magnitudes)
        if exact:
            if top == 0:
                raise ValueError("points are proportional; they do not span a line")
        else:
            scale = max(max(abs(v) for v in a), 1.0) * max(max(abs(v) for v in b), 1.0)
            if top <= 1e-12 * scale:
                raise ValueError("points are proportional; they do not span a line")
        lead = next(m for m, mag in zip(minors, magnitudes) if mag >= _TIE * top)
        self.basis = (a, b)
        self.plucker = tuple(m / lead for m in minors)
        self.exact = exact

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_basis_matrix(cls, matrix) -> "Line3":
        """Build a line from a 4x2 matrix whose columns span it."""
        rows = [list(row) for row in matrix]
        if len(rows) != 4 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 4x2 matrix")
        return cls([r[0] for r in rows], [r[1] for r in rows])

    # -- basic data ------------------------------------------------------------

    def __repr__(self):
        kind = "exact" if self.exact else "numeric"
        return f"Line3({kind}, plucker={self.plucker})"

    def plucker_relation_residual(self):
        """p12*p34 - p13*p24 + p14*p23 on the normalized coordinates."""
        p12, p13, p14, p23, p24, p34 = self.plucker
        return p12 * p34 - p13 * p24 + p14 * p23

    def plucker_key(self) -> tuple:
        """Deterministic sort key derived from the normalized coordinates."""
        out = []
        for entry in self.plucker:
            value = complex(entry)
            out.append((round(value.real, 9), round(value.imag, 9)))
        return tuple(out)

    def stratum_index(self) -> int:
        """1-based index of the first nonvanishing Pluecker coordinate.

        The six affine cells of the Grassmannian are indexed by the first
        coordinate (in the order p12, p13, p14, p23, p24, p34) that does not
        vanish; this returns the cell containing the line.
        """
        if self.exact:
            for i, entry in enumerate(self.plucker):
                if entry != 0:
                    return i + 1
        else:
            top = max(abs(entry) for entry in self.plucker)
            for i, entry in enumerate(self.plucker):
                if abs(entry) > 1e-8 * top:
                    return i + 1
        raise AssertionError("normalized Pluecker vector cannot vanish")

    def canonical_basis(self) -> tuple:
        """Column-echelon basis: rows (i, j) of the first pivot pair become I.

        Returns a pair of columns (each a 4-tuple) spanning the same line,
        with basis[[i]] = (1, 0) and basis[[j]] = (0, 1) where (i, j) is the
        row pair of the first nonvanishing Pluecker coordinate.
        """
        cell = self.stratum_index() - 1
        i, j = PIVOT_PAIRS[cell]
        a, b = self.basis
        m00, m01 = a[i], b[i]
        m10, m11 = a[j], b[j]
        det = m00 * m11 - m01 * m10
        inv = ((m11 / det, -m01 / det), (-m10 / det, m00 / det))
        col0 = tuple(a[r] * inv[0][0] + b[r] * inv[1][0] for r in range(4))
        col1 = tuple(a[r] * inv[0][1] + b[r] * inv[1][1] for r in range(4))
        return col0, col1

    # -- comparisons -----------------------------------------------------------

    def pairing(self, other: "Line3"):
        """Bilinear incidence pairing; zero iff the two lines meet.

        Computed on the normalized Pluecker vectors as
        p12*q34 - p13*q24 + p14*q23 + p34*q12 - p24*q13 + p23*q14.
        """
        p12, p13, p14, p23, p24, p34 = self.plucker
        q12, q13, q14, q23, q24, q34 = other.plucker
        return (
            p12 * q34 - p13 * q24 + p14 * q23
            + p34 * q12 - p24 * q13 + p23 * q14
        )

    def same_line(self, other: "Line3", tol: float = 1e-9) -> bool:
        """True when the two Pluecker vectors are projectively equal."""
        if self.exact and other.exact:
            return self.plucker == other.plucker
        p = np.array([complex(v) for v in self.plucker])
        q = np.array([complex(v) for v in other.plucker])
        inner = abs(np.vdot(p, q))
        return inner >= (1.0 - tol) * float(np.linalg.norm(p) * np.linalg.norm(q))


def lines_disjoint(line_a: Line3, line_b: Line3, tol: float = 1e-8) -> bool:
    """True iff the two lines do not meet.

    Two lines of P^3 intersect exactly when their mutual Pluecker pairing
    vanishes.  For a pair of exact lines the test is exact; otherwise the
    pairing of the normalized coordinate vectors must exceed ``tol``.
    """
    pairing = line_a.pairing(line_b)
    if line_a.exact and line_b.exact:
        return pairing != 0
    return abs(complex(pairing)) > tol


def _coefficient_norm(surface: MultiPoly) -> float:
    return float(sum(abs(c) for c in surface.terms.values()))


def line_on_surface(surface: MultiPoly, line: Line3, tol: float = 1e-8,
                    exact: bool | None = None) -> bool:
    """Decide whether ``line`` lies on the zero set of ``surface``.

    The restriction of the degree-d form F to the parametrized line
    u*col1 + v*col2 is a binary form of degree d in (u, v); the line lies on
    the surface iff all its d+1 coefficients vanish.  For exact (rational)
    lines the restriction is computed symbolically and compared with zero.
    Numerically the form is evaluated at d+1 distinct parameters on the line,
    at points scaled to sup-norm 1, and every residual must stay below
    ``tol`` times the coefficient 1-norm of F.
    """
    poly = getattr(surface, "poly", surface)
    if len(poly.ring) != 4:
        raise ValueError("surface must be a polynomial in four variables")
    if exact is None:
        exact = line.exact
    if exact and not line.exact:
        raise ValueError("exact containment test requires an exact line")
    col_a, col_b = line.basis
    if exact:
        ring = ("u", "v")
        u = MultiPoly.variable(ring, "u")
        v = MultiPoly.variable(ring, "v")
        images = {
            name: u * col_a[k] + v * col_b[k]
            for k, name in enumerate(poly.ring)
        }
        return poly.substitute(images, ring=ring).is_zero
    if poly.is_zero:
        return True
    degree = int(poly.degree)
    fnorm = _coefficient_norm(poly)
    a = np.array([complex(x) for x in col_a])
    b = np.array([complex(x) for x in col_b])
    for k in range(degree + 1):
        theta = 0.37 + math.pi * k / (degree + 1)
        point = math.cos(theta) * a + math.sin(theta) * b
        point = point / max(abs(point))
        value = poly.evaluate(list(point))
        if abs(value) >= tol * fnorm:
            return False
    return True


def evaluate_at_points(surface: MultiPoly, points) -> np.ndarray:
    """Evaluate a 4-variable form at many points at once.

    ``points`` is an (N, 4) complex array; the result is the length-N vector
    of values.  Used for batch containment verification of emitted lines.
    """
    poly = getattr(surface, "poly", surface)
    pts = np.asarray(points, dtype=complex)
    if pts.ndim != 2 or pts.shape[1] != len(poly.ring):
        raise ValueError("points must form an (N, nvars) array")
    values = np.zeros(pts.shape[0], dtype=complex)
    for exps, coeff in poly.terms.items():
        mono = np.full(pts.shape[0], float(coeff), dtype=complex)
        for j, e in enumerate(exps):
            if e:
                mono *= pts[:, j] ** int(e)
        values += mono
    return values
