"""Exact line counting on smooth surfaces in P^3 via Pluecker charts.

The Grassmannian of lines in P^3 sits inside P^5 as the quadric
p12*p34 - p13*p24 + p14*p23 = 0.  Splitting it into the six disjoint cells
where the first nonvanishing Pluecker coordinate (in the order p12, p13,
p14, p23, p24, p34) is normalized to 1 gives, for each cell, an explicit
polynomial parametrization of the lines it contains.  Restricting a degree-d
surface form F to the parametrized line and collecting the d+1 coefficients
in the line parameters (u, v) yields a polynomial system per cell whose
solutions are exactly the lines of that cell lying on the surface.

Counting is exact: each system's Groebner basis gives the quotient dimension
(the number of solutions with multiplicity), and a radicality certificate
upgrades it to a count of distinct lines.  Numeric extraction of the actual
lines is available separately and never affects the exact counts.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _modcert
from .exact_poly import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    GroebnerBasis,
    MultiPoly,
    buchberger,
    is_squarefree_univariate,
    normal_form,
    standard_monomials,
    univariate_eliminant,
)
from .lines import Line3, line_on_surface

__all__ = [
    "SurfaceForm",
    "StratumSystem",
    "StratumCount",
    "LineCount",
    "as_surface_form",
    "build_stratum_system",
    "count_stratum",
    "count_lines",
    "enumerate_lines",
    "solve_stratum",
    "is_smooth",
    "Line3",
    "line_on_surface",
]

# Exact certification switches from rational eliminants to the modular
# certificate above this quotient dimension (rational arithmetic cost grows
# steeply with the dimension).
_EXACT_CERT_LIMIT = 64

# The six cells of the Pluecker stratification.  Each entry maps the stratum
# index to (free variable names, two spanning columns); a column entry is an
# integer constant, a variable name, or ("-", name) for a negated variable.
# Stratum k is the locus where the k-th Pluecker coordinate (in the order
# p12, p13, p14, p23, p24, p34) is the first nonzero one, scaled to 1.
_CHARTS = {
    1: (("c", "d", "g", "h"), ((1, 0, "c", "d"), (0, 1, "g", "h"))),
    2: (("b", "d", "h"), ((1, "b", 0, "d"), (0, 0, 1, "h"))),
    3: (("p24", "p34"), ((1, "p24", "p34", 0), (0, 0, 0, 1))),
    4: (("p34", "p24"), ((0, 1, 0, ("-", "p34")), (0, 0, 1, "p24"))),
    5: (("p34",), ((0, 1, "p34", 0), (0, 0, 0, 1))),
    6: ((), ((0, 0, 1, 0), (0, 0, 0, 1))),
}


class SurfaceForm:
    """A nonzero homogeneous form of degree >= 3 in four coordinates."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: MultiPoly):
        if isinstance(poly, SurfaceForm):
            poly = poly.poly
        if not isinstance(poly, MultiPoly):
            raise TypeError("surface form must be a MultiPoly")
        if len(poly.ring) != 4:
            raise ValueError("surface form must live in a ring of 4 variables")
        if poly.is_zero:
            raise ValueError("surface form must be nonzero")
        degree = int(poly.degree)
        if any(sum(exps) != degree for exps in poly.terms):
            raise ValueError("surface form must be homogeneous")
        if degree < 3:
            raise ValueError("surface degree must be at least 3")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("SurfaceForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, SurfaceForm):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(
            ("SurfaceForm", self.poly.ring, frozenset(self.poly.terms.items()))
        )

    def __repr__(self):
        return f"SurfaceForm({self.poly})"


def as_surface_form(surface) -> SurfaceForm:
    if isinstance(surface, SurfaceForm):
        return surface
    return SurfaceForm(surface)


@dataclass(frozen=True)
class StratumSystem:
    """The polynomial system cutting out the lines of one Pluecker cell.

    ``equations`` are the d+1 coefficients of the surface form restricted to
    the cell's parametrized line, as primitive integer polynomials in
    ``free_vars`` with positive leading coefficient.  ``columns`` is the pair
    of spanning columns of the parametrization, with entries given over the
    same variables.
    """

    stratum: int
    free_vars: tuple
    equations: tuple
    columns: tuple


@dataclass(frozen=True)
class StratumCount:
    """Outcome of exact solution counting on one stratum system.

    ``status`` is "counted", "positive-dimensional" or "budget exceeded".
    When counted, ``count`` is the quotient dimension (solutions with
    multiplicity) and ``certified_reduced`` records whether the system was
    proven radical, in which case the count equals the number of distinct
    lines in the cell.
    """

    stratum: int
    status: str
    count: int = None
    certified_reduced: bool = None
    detail: str = ""


@dataclass(frozen=True)
class LineCount:
    """Total line count with the per-stratum breakdown."""

    total: int
    strata: tuple
    smooth_checked: bool

    @property
    def certified(self) -> bool:
        return all(s.certified_reduced for s in self.strata)

    def by_stratum(self) -> dict:
        return {s.stratum: s.count for s in self.strata}


def _content_normalized(poly: MultiPoly) -> MultiPoly:
    """Scale to primitive integer coefficients with positive leading one."""
    if poly.is_zero:
        return poly
    coeffs = list(poly.terms.values())
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    num_gcd = 0
    for c in coeffs:
        num_gcd = math.gcd(num_gcd, c.numerator)
    scaled = poly * Fraction(den_lcm, num_gcd)
    if scaled.leading_coeff() < 0:
        scaled = -scaled
    return scaled


def build_stratum_system(surface, stratum: int) -> StratumSystem:
    """Restrict the surface form to the given Pluecker cell.

    Returns the d+1 coefficient equations of F(u*col1 + v*col2) in the
    cell's free variables (u^d first, v^d last).
    """
    S = as_surface_form(surface)
    if stratum not in _CHARTS:
        raise ValueError("stratum index must be between 1 and 6")
    free, (col1, col2) = _CHARTS[stratum]
    work_ring = free + ("u", "v")

    def entry(e) -> MultiPoly:
        if isinstance(e, int):
            return MultiPoly.constant(work_ring, e)
        if isinstance(e, tuple):
            return -MultiPoly.variable(work_ring, e[1])
        return MultiPoly.variable(work_ring, e)

    u = MultiPoly.variable(work_ring, "u")
    v = MultiPoly.variable(work_ring, "v")
    assignments = {
        name: u * entry(a) + v * entry(b)
        for name, a, b in zip(S.poly.ring, col1, col2)
    }
    restricted = S.poly.substitute(assignments, work_ring)

    d = S.degree
    nfree = len(free)
    buckets = {i: {} for i in range(d + 1)}  # keyed by the v-exponent
    for exps, coeff in restricted.terms.items():
        head, udeg, vdeg = exps[:nfree], exps[-2], exps[-1]
        if udeg + vdeg != d:
            raise AssertionError("restriction lost homogeneity")
        buckets[vdeg][head] = buckets[vdeg].get(head, 0) + coeff
    equations = tuple(
        _content_normalized(MultiPoly(free, buckets[i])) for i in range(d + 1)
    )
    def chart_entry(e) -> MultiPoly:
        if isinstance(e, int):
            return MultiPoly.constant(free, e)
        if isinstance(e, tuple):
            return -MultiPoly.variable(free, e[1])
        return MultiPoly.variable(free, e)

    columns = (
        tuple(chart_entry(e) for e in col1),
        tuple(chart_entry(e) for e in col2),
    )
    return StratumSystem(stratum, free, equations, columns)


def _certify_reduced(gb: GroebnerBasis, dim: int) -> bool:
    """Prove the zero-dimensional ideal radical, or return False.

    Small quotients get the exact criterion: the ideal is radical exactly
    when the minimal polynomial of every coordinate is squarefree.  Large
    quotients use the one-sided modular certificate.
    """
    if dim <= _EXACT_CERT_LIMIT:
        return all(
            is_squarefree_univariate(univariate_eliminant(gb, var))
            for var in gb.ring
        )
    return _modcert.certify_radical(gb, dim)


def _count_stratum_raising(system: StratumSystem, budget: int) -> StratumCount:
    equations = [e for e in system.equations if not e.is_zero]
    if not system.free_vars:
        # The cell is a single line; it lies on the surface iff every
        # restriction coefficient vanishes identically.
        count = 0 if equations else 1
        return StratumCount(system.stratum, "counted", count, True)
    if not equations:
        return StratumCount(
            system.stratum,
            "positive-dimensional",
            detail="every restriction coefficient vanishes identically",
        )
    gb = buchberger(equations, budget=budget)
    monomials = standard_monomials(gb)
    if monomials is None:
        return StratumCount(system.stratum, "positive-dimensional")
    dim = len(monomials)
    if dim == 0:
        return StratumCount(system.stratum, "counted", 0, True)
    return StratumCount(system.stratum, "counted", dim, _certify_reduced(gb, dim))


def count_stratum(system: StratumSystem, budget: int = DEFAULT_BUDGET) -> StratumCount:
    """Count the lines of one cell exactly (see StratumCount)."""
    try:
        return _count_stratum_raising(system, budget)
    except BudgetExceeded as exc:
        return StratumCount(system.stratum, "budget exceeded", detail=str(exc))


def count_lines(
    surface,
    budget: int = DEFAULT_BUDGET,
    threads: int = None,
    skip_smooth_check: bool = False,
) -> LineCount:
    """Count all lines on a smooth surface, summed over the six cells.

    The cells are disjoint, so the per-stratum counts add without
    deduplication.  Raises BudgetExceeded when a Groebner run exhausts its
    budget and RuntimeError when a cell turns out positive-dimensional
    (infinitely many lines; cannot happen on a smooth surface).
    """
    S = as_surface_form(surface)
    smooth_checked = not skip_smooth_check
    if not skip_smooth_check and not is_smooth(S, budget=budget):
        raise ValueError(
            "surface is singular; line counts are only defined for smooth surfaces "
            "(pass skip_smooth_check=True to force the computation)"
        )
    systems = [build_stratum_system(S, k) for k in range(6, 0, -1)]
    workers = threads if threads else min(6, len(systems))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _count_stratum_raising(s, budget), systems))
    else:
        results = [_count_stratum_raising(s, budget) for s in systems]
    results.sort(key=lambda r: r.stratum)
    for r in results:
        if r.status == "positive-dimensional":
            raise RuntimeError(
                f"stratum {r.stratum} contains infinitely many lines; "
                "the surface cannot be smooth"
            )
    total = sum(r.count for r in results)
    return LineCount(total, tuple(results), smooth_checked)


def is_smooth(surface, budget: int = DEFAULT_BUDGET) -> bool:
    """Jacobian criterion: the four partials vanish together only at 0.

    The common zero locus of the partial derivatives is finite (hence, by
    homogeneity, the origin alone) exactly when the quotient by their ideal
    is finite-dimensional.
    """
    S = as_surface_form(surface)
    partials = [S.poly.derivative(name) for name in S.poly.ring]
    partials = [p for p in partials if not p.is_zero]
    if len(partials) < 4:
        return False  # a missing coordinate makes the form a singular cone
    gb = buchberger(partials, budget=budget)
    return standard_monomials(gb) is not None


# -- numeric extraction -------------------------------------------------


def _eigen_points(gb: GroebnerBasis, monomials, rng: random.Random):
    """Solve the zero-dimensional system by the eigenvector method.

    Returns the solution points as coordinate tuples (one per quotient
    dimension, multiplicities collapsing numerically), or None when the
    random linear form fails to separate them.
    """
    ring = gb.ring
    dim = len(monomials)
    index = {m: i for i, m in enumerate(monomials)}
    coeffs = [Fraction(rng.randrange(2, 100)) for _ in ring]
    w = MultiPoly(ring, {tuple(int(i == j) for j in range(len(ring))): c
                         for i, c in enumerate(coeffs)})
    matrix = np.zeros((dim, dim), dtype=complex)
    for col, mono in enumerate(monomials):
        product = w * MultiPoly(ring, {mono: 1})
        nf = normal_form(product, gb.generators, gb.order)
        for exps, c in nf.terms.items():
            matrix[index[exps], col] = complex(c)
    values, vectors = np.linalg.eig(matrix.T)
    one = index[(0,) * len(ring)]
    var_nfs = [
        normal_form(MultiPoly.variable(ring, name), gb.generators, gb.order)
        for name in ring
    ]
    points = []
    scale = max(1.0, float(np.abs(vectors).max()))
    for i in range(dim):
        u = vectors[:, i]
        if abs(u[one]) < 1e-10 * scale:
            return None  # defective eigenvector; retry with a new form
        u = u / u[one]
        point = []
        for nf in var_nfs:
            point.append(sum(complex(c) * u[index[m]] for m, c in nf.terms.items()))
        points.append(tuple(point))
    return points


def _newton_polish(equations, derivatives, point, steps: int = 12):
    point = np.array(point, dtype=complex)
    for _ in range(steps):
        residual = np.array([e.evaluate(list(point)) for e in equations])
        if np.abs(residual).max() < 1e-15:
            break
        jacobian = np.array(
            [[d.evaluate(list(point)) for d in row] for row in derivatives]
        )
        step, *_ = np.linalg.lstsq(jacobian, -residual, rcond=None)
        point = point + step
        if np.abs(step).max() < 1e-15:
            break
    return tuple(point)


def solve_stratum(
    system: StratumSystem, budget: int = DEFAULT_BUDGET, tol: float = 1e-8
):
    """Numerically extract the distinct lines of one cell.

    Solves the stratum system by the eigenvector method with Newton
    refinement and maps the solutions through the cell parametrization.
    Extraction never affects exact counts; use count_stratum for those.
    """
    equations = [e for e in system.equations if not e.is_zero]
    col1, col2 = system.columns
    if not system.free_vars:
        if equations:
            return ()
        point_a = tuple(complex(e.evaluate([])) for e in col1)
        point_b = tuple(complex(e.evaluate([])) for e in col2)
        return (Line3(point_a, point_b),)
    if not equations:
        raise ValueError("stratum system is positive-dimensional")
    gb = buchberger(equations, budget=budget)
    monomials = standard_monomials(gb)
    if monomials is None:
        raise ValueError("stratum system is positive-dimensional")
    if not monomials:
        return ()
    derivatives = [[e.derivative(v) for v in system.free_vars] for e in equations]
    rng = random.Random(0x51A7 + system.stratum)
    points = None
    for _ in range(8):
        points = _eigen_points(gb, monomials, rng)
        if points is not None:
            break
    if points is None:
        raise RuntimeError("could not separate the stratum's solutions numerically")
    lines = {}
    for point in points:
        point = _newton_polish(equations, derivatives, point)
        values = list(point)
        point_a = tuple(complex(e.evaluate(values)) for e in col1)
        point_b = tuple(complex(e.evaluate(values)) for e in col2)
        line = Line3(point_a, point_b)
        residual = max(
            abs(e.evaluate(values)) for e in equations
        )
        if residual > tol:
            raise RuntimeError(
                f"stratum {system.stratum} solution failed to refine "
                f"(residual {residual:.3g})"
            )
        lines.setdefault(line.plucker_key(), line)
    return tuple(lines[k] for k in sorted(lines))


def enumerate_lines(surface, budget: int = DEFAULT_BUDGET, tol: float = 1e-8):
    """Extract every line on the surface, sorted by canonical Pluecker key.

    Each extracted line is re-verified directly against the surface form.
    """
    S = as_surface_form(surface)
    out = []
    for stratum in range(6, 0, -1):
        system = build_stratum_system(S, stratum)
        for line in solve_stratum(system, budget=budget, tol=tol):
            if not line_on_surface(S.poly, line, tol=max(tol, 1e-6)):
                raise RuntimeError(
                    f"extracted line in stratum {stratum} failed containment"
                )
            out.append(line)
    out.sort(key=lambda l: l.plucker_key())
    return tuple(out)
