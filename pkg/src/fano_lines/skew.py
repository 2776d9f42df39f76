"""Pairwise-disjoint (skew) line families on smooth surfaces in P^3.

Two lines of P^3 are disjoint exactly when their mutual Pluecker pairing is
nonzero.  This module constructs an explicit family of d*(d-2) + 4 pairwise
disjoint lines on the degree-d surface

    x^(d-1) y + x y^(d-1) + z^(d-1) t + z t^(d-1) = 0

for d >= 7 with d and d-2 coprime, verifies such families (containment and
pairwise disjointness, with the minimum pairing magnitude as the margin), and
tabulates the known bounds on the maximal number of skew lines.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exact_poly import MultiPoly
from .lines import Line3, line_on_surface, lines_disjoint

__all__ = [
    "SkewFamily",
    "SkewVerification",
    "rams_surface",
    "rams_family",
    "verify_skew_set",
    "skew_bounds",
    "lines_disjoint",
]

RING4 = ("x", "y", "z", "t")

# the sign pattern of the incidence pairing in Pluecker coordinates
# (p12, p13, p14, p23, p24, p34) . (q34, -q24, q23, q14, -q13, q12)
_PAIRING_FLIP = np.array([5, 4, 3, 2, 1, 0])
_PAIRING_SIGN = np.array([1.0, -1.0, 1.0, 1.0, -1.0, 1.0])


def rams_surface(d: int, ring=RING4) -> MultiPoly:
    """The degree-d form x^(d-1)y + xy^(d-1) + z^(d-1)t + zt^(d-1)."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    ring = tuple(ring)
    if len(ring) != 4:
        raise ValueError("the ambient ring must have exactly 4 variables")
    return MultiPoly(
        ring,
        {
            (d - 1, 1, 0, 0): 1,
            (1, d - 1, 0, 0): 1,
            (0, 0, d - 1, 1): 1,
            (0, 0, 1, d - 1): 1,
        },
    )


def _unit_root(order: int, k: int) -> complex:
    """exp(2*pi*i*k/order), Newton-polished on z^order = 1."""
    z = cmath.exp(2j * cmath.pi * (k % order) / order)
    for _ in range(5):
        residual = z**order - 1.0
        if abs(residual) < 1e-14:
            break
        z -= residual / (order * z ** (order - 1))
    return z


@dataclass(frozen=True)
class SkewFamily:
    """A verified family of pairwise disjoint lines on a surface."""

    degree: int
    surface: MultiPoly
    lines: tuple
    claimed_size: int

    def __len__(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class SkewVerification:
    """Outcome of checking a line family for containment and skewness.

    ``min_pairing`` is the smallest |incidence pairing| over all pairs of
    normalized Pluecker vectors: the margin by which disjointness holds
    (infinity for families of fewer than two lines).  ``violation`` is None
    or the first offence found, ("containment", i) or ("incidence", i, j).
    """

    ok: bool
    count: int
    min_pairing: float
    violation: tuple | None


def rams_family(d: int, tol: float = 1e-10) -> SkewFamily:
    """An explicit family of d*(d-2) + 4 pairwise disjoint lines.

    Requires d >= 7 with gcd(d, d-2) = 1 (d odd).  With eta running over all
    roots of unity of order dividing d*(d-2), the line spanned by
    (0 : 1 : 0 : -eta^(d-1)) and (-eta : 0 : 1 : 0) lies on rams_surface(d);
    these d*(d-2) lines together with the four coordinate-plane lines

        {x = 0, z + eps*t = 0}, {y = 0, z + t = 0},
        {z = 0, x + eps*y = 0}, {t = 0, x + y = 0}

    (eps a primitive (d-2)-nd root of unity) are pairwise disjoint.  The
    family is verified before it is returned.
    """
    if d < 7 or math.gcd(d, d - 2) != 1:
        raise ValueError(
            "the construction needs degree d >= 7 with d and d - 2 coprime"
        )
    order = d * (d - 2)
    lines = []
    for k in range(order):
        eta = _unit_root(order, k)
        eta_top = _unit_root(order, k * (d - 1))
        lines.append(Line3((0, 1, 0, -eta_top), (-eta, 0, 1, 0)))
    eps = _unit_root(d - 2, 1)
    lines.append(Line3((0, 1, 0, 0), (0, 0, -eps, 1)))
    lines.append(Line3((1, 0, 0, 0), (0, 0, -1, 1)))
    lines.append(Line3((-eps, 1, 0, 0), (0, 0, 0, 1)))
    lines.append(Line3((-1, 1, 0, 0), (0, 0, 1, 0)))

    surface = rams_surface(d)
    report = verify_skew_set(surface, lines, tol=tol)
    if not report.ok:
        raise RuntimeError(f"constructed family failed verification: {report.violation}")
    return SkewFamily(
        degree=d,
        surface=surface,
        lines=tuple(lines),
        claimed_size=d * (d - 2) + 4,
    )


def _pairing_matrix(lines) -> np.ndarray:
    """|incidence pairing| for every pair of lines, from normalized vectors."""
    vecs = np.array(
        [[complex(v) for v in line.plucker] for line in lines], dtype=complex
    )
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    vecs = vecs / norms
    partner = vecs[:, _PAIRING_FLIP] * _PAIRING_SIGN
    return np.abs(vecs @ partner.T)


def verify_skew_set(surface, lines, tol: float = 1e-8) -> SkewVerification:
    """Check that every line lies on the surface and no two lines meet.

    Containment is tested with :func:`line_on_surface` at the given
    tolerance.  Disjointness of all pairs is evaluated in one vectorized
    pass over normalized Pluecker vectors; a pair meets when its pairing
    magnitude is at most ``tol``.
    """
    if isinstance(surface, MultiPoly):
        form = surface
    else:
        form = getattr(surface, "poly", None)
        if not isinstance(form, MultiPoly):
            raise TypeError("surface must be a MultiPoly or carry one as .poly")
    lines = list(lines)
    for i, line in enumerate(lines):
        if not line_on_surface(form, line, tol=tol):
            return SkewVerification(
                ok=False, count=len(lines), min_pairing=0.0,
                violation=("containment", i),
            )
    if len(lines) < 2:
        return SkewVerification(
            ok=True, count=len(lines), min_pairing=math.inf, violation=None
        )
    pairings = _pairing_matrix(lines)
    ii, jj = np.triu_indices(len(lines), k=1)
    values = pairings[ii, jj]
    worst = int(np.argmin(values))
    min_pairing = float(values[worst])
    if min_pairing <= tol:
        return SkewVerification(
            ok=False, count=len(lines), min_pairing=min_pairing,
            violation=("incidence", int(ii[worst]), int(jj[worst])),
        )
    return SkewVerification(
        ok=True, count=len(lines), min_pairing=min_pairing, violation=None
    )


def skew_bounds(d: int) -> dict:
    """Known bounds on the maximal number of pairwise disjoint lines.

    ``miyaoka`` is the upper bound 2d(d-2) for d >= 4 (6 for cubics, where
    the maximum is classical); ``rams`` the d(d-2)+2 construction lower
    bound; ``constructed`` the size d(d-2)+4 of the family this module
    builds when d >= 7 with d, d-2 coprime (None otherwise); ``known_max``
    the exact maximum where known (6 for d=3, 16 for d=4) and "open" beyond.
    """
    if d < 3:
        raise ValueError("degree must be at least 3")
    constructible = d >= 7 and math.gcd(d, d - 2) == 1
    if d == 3:
        known = 6
    elif d == 4:
        known = 16
    else:
        known = "open"
    return {
        "miyaoka": 6 if d == 3 else 2 * d * (d - 2),
        "rams": d * (d - 2) + 2,
        "constructed": d * (d - 2) + 4 if constructible else None,
        "known_max": known,
    }
