"""Closed-form upper bounds for the number of lines on a smooth surface.

Four bounds are tabulated for a smooth degree-d surface in projective
3-space:

* ``segre`` -- the classical uniform bound (d-2)(11d-6).
* ``uniform`` -- the sharper conditional bound d(7d-12), valid when the
  surface contains d coplanar lines none of which is of the second kind.
* ``per_line_cap`` -- the maximal number of lines that can meet one line of
  the first kind: 8d-14.
* ``miyaoka`` -- the bound 2d(d-2) on pairwise disjoint (skew) lines.

``separable_max`` records the best count attained by surfaces of the shape
phi(x, y) - psi(z, t), and ``best_known`` the best count attained by any
known smooth surface.  The two agree except in degree 8, where a
non-separable octic reaches 352 lines; ``best_known`` meets the ``uniform``
bound exactly in degrees 4, 6, 8 and 12, while ``separable_max`` alone does
so in degrees 4, 6 and 12.  The module is pure arithmetic: no polynomial
computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .separable import maximal_count

__all__ = ["BoundTable", "bound_table", "uniform_bound_derivation"]

# Line-count records achieved by known non-separable surfaces, where they
# beat every separable example of the same degree.
_NON_SEPARABLE_RECORDS = {8: 352}


@dataclass(frozen=True)
class BoundTable:
    """All closed-form line-count bounds for one degree."""

    d: int
    segre: int
    uniform: int
    per_line_cap: int
    separable_max: int
    best_known: int
    miyaoka: int


def bound_table(d: int) -> BoundTable:
    """Evaluate every bound at degree ``d`` (exact integer arithmetic)."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    separable_max = maximal_count(d)
    return BoundTable(
        d=d,
        segre=(d - 2) * (11 * d - 6),
        uniform=d * (7 * d - 12),
        per_line_cap=8 * d - 14,
        separable_max=separable_max,
        best_known=max(separable_max, _NON_SEPARABLE_RECORDS.get(d, 0)),
        miyaoka=2 * d * (d - 2),
    )


def uniform_bound_derivation(d: int) -> dict:
    """The three intermediate quantities behind the d(7d-12) bound.

    A plane section consisting of d lines is met by every other line on the
    surface, each of the d plane lines meets at most ``per_line`` lines in
    total, hence ``off_plane_per_line`` lines not in the plane, and summing
    gives ``total`` = d + d(7d-13) = d(7d-12).
    """
    if d < 3:
        raise ValueError("degree must be at least 3")
    per_line = 8 * d - 14
    off_plane = per_line - (d - 1)
    total = d + d * (7 * d - 13)
    assert total == d * (7 * d - 12)
    return {
        "per_line": per_line,
        "off_plane_per_line": off_plane,
        "total": total,
    }
