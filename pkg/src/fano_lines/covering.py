"""Lines on cyclic covers t^d = f(x,y,z) via total inflections of the branch curve.

A line on the surface t^d = f projects to a line L in the plane that meets
the branch curve C : f = 0 at a single point with full intersection
multiplicity d (a *total inflection*, with L the tangent there).  Conversely
every total inflection contributes exactly d lines: over L the surface
equation factors as the product of t - xi^i * w with w a d-th root of the
restricted form.  Counting lines on the cover therefore reduces to locating
the total inflections of C, which all lie on the intersection of C with its
Hessian curve; Bezout bounds their number beta by 3d.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_poly import (
    MultiPoly,
    buchberger,
    exact_div,
    sylvester_resultant,
    standard_monomials,
    variables,
)
from .lines import Line3, line_on_surface

__all__ = [
    "PlaneCurve",
    "InflectionReport",
    "as_plane_curve",
    "hessian",
    "total_inflections",
    "covering_lines",
]


class PlaneCurve:
    """A nonzero homogeneous form of degree >= 3 in three coordinates."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: MultiPoly):
        if isinstance(poly, PlaneCurve):
            poly = poly.poly
        if not isinstance(poly, MultiPoly):
            raise TypeError("plane curve must be a MultiPoly")
        if len(poly.ring) != 3:
            raise ValueError("plane curve must live in a ring of 3 variables")
        if poly.is_zero:
            raise ValueError("plane curve must be nonzero")
        degree = int(poly.degree)
        if any(sum(exps) != degree for exps in poly.terms):
            raise ValueError("plane curve must be homogeneous")
        if degree < 3:
            raise ValueError("curve degree must be at least 3")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("PlaneCurve is immutable")

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(
            ("PlaneCurve", self.poly.ring, frozenset(self.poly.terms.items()))
        )

    def __repr__(self):
        return f"PlaneCurve({self.poly})"


def as_plane_curve(curve) -> PlaneCurve:
    if isinstance(curve, PlaneCurve):
        return curve
    return PlaneCurve(curve)


@dataclass(frozen=True)
class InflectionReport:
    """Outcome of the total-inflection search on a branch curve.

    ``candidates`` holds every numerically located intersection point of the
    curve with its Hessian as (point, multiplicity estimate) pairs;
    ``total_inflections`` the subset that passed the contact-order-d test;
    ``undetermined`` any point where the test could not decide at the given
    tolerance; ``lines`` the beta*d verified lines on t^d = f.
    """

    candidates: tuple
    total_inflections: tuple
    undetermined: tuple
    lines: tuple

    @property
    def beta(self) -> int:
        return len(self.total_inflections)


def hessian(curve) -> MultiPoly:
    """Determinant of the matrix of second partials.

    Degree 3(d-2) for a smooth curve; identically zero determinants (cones,
    split forms) are returned as the zero polynomial.
    """
    C = as_plane_curve(curve)
    f = C.poly
    a, b, c = f.ring
    fa, fb, fc = f.derivative(a), f.derivative(b), f.derivative(c)
    faa, fab, fac = fa.derivative(a), fa.derivative(b), fa.derivative(c)
    fbb, fbc = fb.derivative(b), fb.derivative(c)
    fcc = fc.derivative(c)
    return (
        faa * (fbb * fcc - fbc * fbc)
        - fab * (fab * fcc - fbc * fac)
        + fac * (fab * fbc - fbb * fac)
    )


def _curve_is_smooth(C: PlaneCurve) -> bool:
    partials = [C.poly.derivative(name) for name in C.poly.ring]
    partials = [p for p in partials if not p.is_zero]
    if len(partials) < 3:
        return False
    gb = buchberger(partials)
    return standard_monomials(gb) is not None


def _squarefree_decomposition(p: MultiPoly):
    """Yun's algorithm: [(k, part)] with p = const * prod part**k, each part
    squarefree and the parts pairwise coprime (characteristic zero)."""
    var = p.ring[0]
    deriv = p.derivative(var)
    g = _poly_gcd_univariate(p, deriv)
    if int(g.degree) == 0:
        return [(1, p)]
    parts = []
    c = exact_div(p, g)
    d = exact_div(deriv, g) - c.derivative(var)
    k = 1
    while int(c.degree) > 0:
        a = _poly_gcd_univariate(c, d)
        if int(a.degree) > 0:
            parts.append((k, a))
        c = exact_div(c, a)
        d = exact_div(d, a) - c.derivative(var)
        k += 1
    return parts


def _roots_of_exact(part: MultiPoly) -> np.ndarray:
    """Roots of an exact univariate polynomial, scaled before conversion."""
    deg = int(part.degree)
    coeffs = [part.coefficient((j,)) for j in range(deg, -1, -1)]
    top = max(abs(c) for c in coeffs)
    return np.roots([float(c / top) for c in coeffs])


def _poly_gcd_univariate(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic-free gcd via repeated exact pseudo-division (small degrees)."""
    while not b.is_zero:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_mod(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    blm, blc = b.leading_term()
    while not a.is_zero and a.degree >= b.degree:
        alm, alc = a.leading_term()
        shift = int(alm[0] - blm[0])
        a = a - b * MultiPoly(a.ring, {(shift,): alc / blc})
    return a


def _proj_same(a, b, tol: float) -> bool:
    """Whether two projective points (complex tuples) coincide within tol."""
    va = np.asarray(a, dtype=complex)
    vb = np.asarray(b, dtype=complex)
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na == 0 or nb == 0:
        return False
    overlap = abs(np.vdot(va, vb)) / (na * nb)
    return 1.0 - overlap < tol * tol / 2 + 1e-14


def _normalize_proj(vec) -> tuple:
    arr = np.asarray(vec, dtype=complex)
    pivot = max(range(arr.size), key=lambda i: abs(arr[i]))
    return tuple(arr / arr[pivot])


def _restriction_coeffs(f: MultiPoly, p, q) -> np.ndarray:
    """Coefficients of f(s*p + u*q) as a binary form, ascending in u."""
    d = int(f.degree)
    out = np.zeros(d + 1, dtype=complex)
    rows: dict = {}

    def row(base_p, base_q, power):
        key = (base_p, base_q, power)
        got = rows.get(key)
        if got is None:
            got = np.array(
                [math.comb(power, k) * base_p ** (power - k) * base_q ** k
                 for k in range(power + 1)],
                dtype=complex,
            )
            rows[key] = got
        return got

    for exps, c in f.terms.items():
        term = np.array([1.0 + 0j])
        for coord, e in enumerate(exps):
            if e:
                term = np.convolve(term, row(complex(p[coord]), complex(q[coord]), e))
        padded = np.zeros(d + 1, dtype=complex)
        padded[: term.size] = term
        out += float(c) * padded
    return out


def _tangent_direction(point, gradient) -> tuple:
    """A second point spanning the tangent line {q : gradient . q = 0}."""
    n = np.asarray(gradient, dtype=complex)
    p = np.asarray(point, dtype=complex)
    candidates = [np.cross(n, e) for e in np.eye(3, dtype=complex)]
    best, best_score = None, -1.0
    p_unit = p / np.linalg.norm(p)
    for cand in candidates:
        norm = np.linalg.norm(cand)
        if norm < 1e-12:
            continue
        unit = cand / norm
        score = float(np.linalg.norm(unit - np.vdot(p_unit, unit) * p_unit))
        if score > best_score:
            best, best_score = unit, score
    if best is None or best_score < 1e-8:
        raise RuntimeError("ill-conditioned intersection: degenerate tangent frame")
    return tuple(best)


def _tangent_setup(point, gradient):
    """Choose a cross-product axis and a normalizing entry for the tangent.

    Fixing both choices once per candidate keeps the tangent representative
    a continuous function of the point during local refinement, so finite
    differences of the restriction coefficients are meaningful.
    """
    n = np.asarray(gradient, dtype=complex)
    p = np.asarray(point, dtype=complex)
    norm_p = np.linalg.norm(p)
    if norm_p == 0:
        raise RuntimeError("ill-conditioned intersection: degenerate tangent frame")
    p_unit = p / norm_p
    basis = np.eye(3, dtype=complex)
    axis, best_score = None, -1.0
    for i in range(3):
        cand = np.cross(n, basis[i])
        norm = np.linalg.norm(cand)
        if norm < 1e-12:
            continue
        unit = cand / norm
        score = float(np.linalg.norm(unit - np.vdot(p_unit, unit) * p_unit))
        if score > best_score:
            axis, best_score = i, score
    if axis is None or best_score < 1e-8:
        raise RuntimeError("ill-conditioned intersection: degenerate tangent frame")
    q = np.cross(n, basis[axis])
    pivot = int(np.argmax(np.abs(q)))
    return axis, pivot


def _polish_total_inflection(f: MultiPoly, f_aff: MultiPoly, frame_mat, x, y):
    """Refine a candidate so the below-top restriction coefficients vanish.

    One complex unknown: the chart abscissa (the ordinate follows the curve
    by Newton).  Least-squares steps against the first d coefficients of the
    restriction to the tangent converge quadratically at a genuine total
    inflection; elsewhere the residual stalls and the caller's contact test
    rejects the point.  Returns (x, y, residual) for the best point seen.
    """
    d = int(f.degree)
    gradient_polys = [f.derivative(name) for name in f.ring]
    p0 = frame_mat @ np.array([x, y, 1.0 + 0j])
    grad0 = [g.evaluate(list(p0)) for g in gradient_polys]
    try:
        axis, pivot = _tangent_setup(p0, grad0)
    except RuntimeError:
        return x, y, math.inf
    basis = np.eye(3, dtype=complex)

    def low_vector(xc, yc):
        yc = _newton_1d(f_aff, xc, yc)
        if yc is None:
            return None, None, 0.0
        p = frame_mat @ np.array([xc, yc, 1.0 + 0j])
        grad = np.array([g.evaluate(list(p)) for g in gradient_polys])
        q = np.cross(grad, basis[axis])
        if abs(q[pivot]) < 1e-12 * max(1.0, np.abs(q).max()):
            return None, None, 0.0
        q = q / q[pivot]
        coeffs = _restriction_coeffs(f, tuple(p), tuple(q))
        return coeffs[:d], yc, float(np.abs(coeffs).sum())

    def relative(res, span):
        return res / (span + 1e-300)

    v, y, span = low_vector(x, y)
    if v is None:
        return x, y, math.inf
    best = (x, y, relative(float(np.abs(v).max()), span))
    for _ in range(25):
        h = 1e-7 * (1.0 + abs(x))
        v_h, _, _ = low_vector(x + h, y)
        if v_h is None:
            break
        deriv = (v_h - v) / h
        denom = float(np.vdot(deriv, deriv).real)
        if denom < 1e-300:
            break
        delta = -np.vdot(deriv, v) / denom
        x_new = x + delta
        v_new, y_new, span = low_vector(x_new, y)
        if v_new is None:
            break
        res = relative(float(np.abs(v_new).max()), span)
        if res < best[2]:
            best = (x_new, y_new, res)
        if res > 4.0 * best[2]:
            break
        x, y, v = x_new, y_new, v_new
        if res == 0.0 or abs(delta) < 1e-15 * (1.0 + abs(x)):
            break
    return best


def _newton_2d(f_aff: MultiPoly, h_aff: MultiPoly, x, y):
    """Joint Newton for f = h = 0 in the chart; None unless it converges."""
    fx, fy = (f_aff.derivative(v) for v in f_aff.ring)
    hx, hy = (h_aff.derivative(v) for v in h_aff.ring)
    for _ in range(60):
        fv = f_aff.evaluate([x, y])
        hv = h_aff.evaluate([x, y])
        jac = np.array(
            [[fx.evaluate([x, y]), fy.evaluate([x, y])],
             [hx.evaluate([x, y]), hy.evaluate([x, y])]],
            dtype=complex,
        )
        try:
            step = np.linalg.solve(jac, np.array([fv, hv], dtype=complex))
        except np.linalg.LinAlgError:
            return None
        x, y = x - step[0], y - step[1]
        if abs(step[0]) + abs(step[1]) < 1e-14 * (1.0 + abs(x) + abs(y)):
            break

    def local_scale(p):
        return sum(
            abs(float(c)) * abs(x) ** ex * abs(y) ** ey
            for (ex, ey), c in p.terms.items()
        )

    if abs(f_aff.evaluate([x, y])) > 1e-9 * max(local_scale(f_aff), 1e-12):
        return None
    if abs(h_aff.evaluate([x, y])) > 1e-9 * max(local_scale(h_aff), 1e-12):
        return None
    return x, y


def _random_frame(rng: random.Random):
    # small entries keep the eliminant's integer coefficients moderate,
    # which keeps its roots well-conditioned in floating point
    while True:
        entries = [[Fraction(rng.randrange(-2, 3)) for _ in range(3)] for _ in range(3)]
        det = (
            entries[0][0] * (entries[1][1] * entries[2][2] - entries[1][2] * entries[2][1])
            - entries[0][1] * (entries[1][0] * entries[2][2] - entries[1][2] * entries[2][0])
            + entries[0][2] * (entries[1][0] * entries[2][1] - entries[1][1] * entries[2][0])
        )
        if det:
            return entries


def _intersection_candidates(C: PlaneCurve, H: MultiPoly, tol: float):
    """Numerically solve C = H = 0: list of (point, multiplicity estimate).

    Works in a random projective frame so that the affine chart z = 1 sees
    every intersection point.  The frame is accepted only when the eliminant
    reaches the full Bezout degree, both forms keep their full degree in the
    chart ordinate, and no candidate abscissa is a vertical-tangent abscissa
    of the curve.  The eliminant's exact squarefree decomposition then gives
    each abscissa its exact total intersection multiplicity, which anchors
    the classification of the curve branches over it.
    """
    f = C.poly
    ring = f.ring
    d = int(f.degree)
    deg_h = 3 * (d - 2)
    bezout = d * deg_h
    rng = random.Random(0xB0_7A11)
    accepted = None
    for _ in range(20):
        frame = _random_frame(rng)
        images = {
            name: MultiPoly(ring, {tuple(int(k == j) for k in range(3)): frame[i][j]
                                   for j in range(3) if frame[i][j]})
            for i, name in enumerate(ring)
        }
        f_aff = _dehomogenize(f.substitute(images, ring))
        h_aff = _dehomogenize(H.substitute(images, ring))
        # full ordinate degree: every fiber of the chart projection then has
        # d curve branches, and eliminant root orders equal fiber
        # intersection multiplicities
        if f_aff.coefficient((0, d)) == 0 or h_aff.coefficient((0, deg_h)) == 0:
            continue
        resultant = sylvester_resultant(f_aff, h_aff, f_aff.ring[1])
        if resultant.is_zero or int(resultant.degree) != bezout:
            continue
        parts = _squarefree_decomposition(resultant)
        squarefree = parts[0][1]
        for _, part in parts[1:]:
            squarefree = squarefree * part
        # reject frames in which some candidate's tangent passes through the
        # chart's vertical direction: there the y-section has a multiple root
        # and branch separation fails.  Exactly detectable as a common root
        # of the eliminant and the y-discriminant of the curve.
        discriminant = sylvester_resultant(
            f_aff, f_aff.derivative(f_aff.ring[1]), f_aff.ring[1]
        )
        if discriminant.is_zero:
            continue
        if int(_poly_gcd_univariate(squarefree, discriminant).degree) > 0:
            continue
        accepted = (f_aff, h_aff, frame, parts)
        break
    if accepted is None:
        raise RuntimeError("ill-conditioned intersection: no usable projective frame")
    f_aff, h_aff, frame, parts = accepted

    h_scale = max(abs(float(c)) for c in h_aff.terms.values())
    frame_mat = np.array([[float(v) for v in row] for row in frame])

    def chart_near(a, b):
        return abs(a[0] - b[0]) + abs(a[1] - b[1]) < 1e-6 * (
            1.0 + abs(b[0]) + abs(b[1])
        )

    # Classify the curve branches over each abscissa.  A branch whose contact
    # polish converges is a total inflection and accounts for local
    # intersection multiplicity exactly d - 2; whatever multiplicity the
    # abscissa has left is carried by simple(r) intersections, which must
    # survive a joint Newton refinement on (curve, Hessian).  Near-misses of
    # a total inflection are discarded by the exact budget, not by thresholds.
    candidate_totals, candidate_simple = [], []
    for mult_k, part in parts:
        for x0 in _roots_of_exact(part):
            x0 = complex(x0)
            section = _y_section(f_aff, x0)
            if section is None:
                raise RuntimeError("ill-conditioned intersection: lost ordinate degree")
            local_totals, undecided = [], []
            for y0 in np.roots(section):
                y0 = _newton_1d(f_aff, x0, complex(y0))
                if y0 is None:
                    raise RuntimeError("ill-conditioned intersection: refinement failed")
                local = sum(
                    abs(float(c)) * abs(x0) ** ex * abs(y0) ** ey
                    for (ex, ey), c in h_aff.terms.items()
                )
                if abs(h_aff.evaluate([x0, y0])) > 1e-5 * max(local, 1e-9 * h_scale):
                    continue
                x1, y1, resid = _polish_total_inflection(f, f_aff, frame_mat, x0, y0)
                if resid < 1e-10 and abs(x1 - x0) < 0.01 * (1.0 + abs(x0)):
                    if not any(chart_near((x1, y1), q) for q in local_totals):
                        local_totals.append((x1, y1))
                else:
                    undecided.append((x0, y0))
            remaining = mult_k - (d - 2) * len(local_totals)
            if remaining < 0:
                raise RuntimeError(
                    "ill-conditioned intersection: fiber multiplicity overrun"
                )
            candidate_totals.extend(local_totals)
            if remaining == 0:
                continue
            survivors = []
            for x0b, y0b in undecided:
                refined = _newton_2d(f_aff, h_aff, x0b, y0b)
                if refined is None:
                    continue
                if abs(refined[0] - x0b) > 0.01 * (1.0 + abs(x0b)):
                    continue
                if any(chart_near(refined, q) for q in local_totals):
                    continue
                if any(chart_near(refined, q) for q in survivors):
                    continue
                survivors.append(refined)

            def total_gap(pt):
                if not local_totals:
                    return math.inf
                return min(abs(pt[0] - a) + abs(pt[1] - b) for a, b in local_totals)

            # prefer points far from the fiber's total inflections: residual
            # near-misses of a total are the least credible
            survivors.sort(key=total_gap, reverse=True)
            survivors = survivors[:remaining]
            for i, pt in enumerate(survivors):
                mult = 1 + (remaining - len(survivors) if i == 0 else 0)
                candidate_simple.append((pt, mult))

    candidates = []
    for xc, yc in candidate_totals:
        original = frame_mat @ np.array([xc, yc, 1.0 + 0j])
        candidates.append((_normalize_proj(original), max(1, d - 2)))
    for (xc, yc), mult in candidate_simple:
        original = frame_mat @ np.array([xc, yc, 1.0 + 0j])
        candidates.append((_normalize_proj(original), mult))
    return candidates


def _dehomogenize(p: MultiPoly) -> MultiPoly:
    """Set the last variable to 1, keeping the first two."""
    ring = p.ring
    chart = ring[:2]
    terms: dict = {}
    for exps, c in p.terms.items():
        key = exps[:2]
        terms[key] = terms.get(key, 0) + c
    return MultiPoly(chart, terms)


def _y_section(f_aff: MultiPoly, x0: complex):
    """Dense descending coefficients of y -> f(x0, y), or None if trivial."""
    degy = max(e for _, e in f_aff.terms)
    coeffs = np.zeros(degy + 1, dtype=complex)
    for (ex, ey), c in f_aff.terms.items():
        coeffs[degy - ey] += float(c) * x0 ** ex
    if abs(coeffs[0]) < 1e-12 * max(1.0, np.abs(coeffs).max()):
        return None
    return coeffs


def _newton_1d(f_aff: MultiPoly, x0: complex, y0: complex):
    fy = f_aff.derivative(f_aff.ring[1])
    y = y0
    for _ in range(40):
        val = f_aff.evaluate([x0, y])
        slope = fy.evaluate([x0, y])
        if abs(slope) < 1e-14:
            return None
        step = val / slope
        y = y - step
        if abs(step) < 1e-14 * max(1.0, abs(y)):
            return y
    return y


def total_inflections(curve, tol: float = 1e-8) -> InflectionReport:
    """Locate the points of the curve whose tangent has full contact order d.

    Every such point lies on the intersection of the curve with its Hessian;
    each intersection point is tested directly by restricting the curve form
    to the tangent line and checking that all coefficients below order d
    vanish relative to the form's scale.
    """
    C = as_plane_curve(curve)
    if not _curve_is_smooth(C):
        raise ValueError("singular curve")
    d = C.degree
    H = hessian(C)
    raw = _intersection_candidates(C, H, tol)

    # merge duplicate geometric points; the merge radius must dominate the
    # locator's scatter, which can exceed the contact tolerance
    merge_eps = max(10 * tol, 1e-6)
    merged = []
    for point, mult in raw:
        for i, (q, qmult) in enumerate(merged):
            if _proj_same(point, q, merge_eps):
                merged[i] = (q, max(qmult, mult))
                break
        else:
            merged.append((point, mult))

    f = C.poly
    gradient_polys = [f.derivative(name) for name in f.ring]
    scale = sum(abs(float(c)) for c in f.terms.values())
    totals, undetermined = [], []
    for point, _ in merged:
        grad = [g.evaluate(list(point)) for g in gradient_polys]
        direction = _tangent_direction(point, grad)
        coeffs = _restriction_coeffs(f, point, direction)
        low = np.abs(coeffs[:d]).max()
        top = abs(coeffs[d])
        if low < tol * scale and top > tol * scale:
            totals.append(point)
        elif low < 100 * tol * scale:
            undetermined.append(point)
    if len(totals) > 3 * d:
        raise RuntimeError(
            "ill-conditioned intersection: more total inflections than the "
            "Bezout bound allows"
        )
    lines = _emit_lines(C, totals, tol)
    return InflectionReport(
        candidates=tuple(merged),
        total_inflections=tuple(totals),
        undetermined=tuple(undetermined),
        lines=lines,
    )


def _fresh_cover_var(ring) -> str:
    if "t" not in ring:
        return "t"
    k = 0
    while f"t{k}" in ring:
        k += 1
    return f"t{k}"


def _emit_lines(C: PlaneCurve, totals, tol: float):
    f = C.poly
    d = C.degree
    cover = _fresh_cover_var(f.ring)
    ring4 = f.ring + (cover,)
    surface = MultiPoly.variable(ring4, cover) ** d - f.map_ring(ring4)
    gradient_polys = [f.derivative(name) for name in f.ring]
    xi = cmath.exp(2j * cmath.pi / d)
    lines = []
    for point in totals:
        grad = [g.evaluate(list(point)) for g in gradient_polys]
        direction = _tangent_direction(point, grad)
        coeffs = _restriction_coeffs(f, point, direction)
        w = coeffs[d] ** (1.0 / d)
        for i in range(d):
            point_a = (*point, 0j)
            point_b = (*direction, xi**i * w)
            line = Line3(point_a, point_b)
            if not line_on_surface(surface, line, tol=max(tol, 1e-8)):
                raise RuntimeError("emitted covering line failed containment")
            lines.append(line)
    lines.sort(key=lambda l: l.plucker_key())
    return tuple(lines)


def covering_lines(curve, tol: float = 1e-8):
    """The lines of the cyclic cover t^d = f: d per total inflection."""
    return total_inflections(curve, tol).lines
