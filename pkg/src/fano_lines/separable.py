"""Lines on surfaces of the form phi(x, y) - psi(z, t) = 0.

For binary forms phi, psi of equal degree d >= 3 with simple zeros, every
line on the surface is one of:

* a *grid* line joining a zero (x_i : y_i) of phi (embedded in the plane
  z = t = 0) to a zero (z_j : t_j) of psi (in the plane x = y = 0) -- there
  are exactly d^2 of these; or
* a *ruling* line (x, y) = c * M (z, t) where M is one of the alpha
  projectivities of P^1 carrying the zero set of psi onto the zero set of
  phi, and c ranges over the d solutions of c^d * lambda = 1 with lambda the
  scalar making phi(M(z, t)) = lambda * psi(z, t).

The total is therefore d^2 + alpha * d = d(d + alpha).  This module counts
and emits all of them, counts real lines, constructs forms whose symmetry
group is any prescribed finite Moebius group, and evaluates the maximal
possible count per degree.
"""

from __future__ import annotations

import cmath
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_poly import MultiPoly, variables
from .lines import Line3, evaluate_at_points
from .p1_geometry import (
    BinaryForm,
    GroupTag,
    as_binary_form,
    canonical_matrix,
    classify_group,
    projectivities_between,
    roots_p1,
)

__all__ = [
    "SeparableSurface",
    "LineReport",
    "count_and_emit",
    "count_real_lines",
    "build_form",
    "maximal_count",
]

RING4 = ("x", "y", "z", "t")

#: Degrees where extra polyhedral symmetry beats the generic 3d^2 maximum.
_EXCEPTIONAL_MAXIMA = {4: 64, 6: 180, 8: 256, 12: 864, 20: 1600}


class SeparableSurface:
    """The surface phi(x, y) - psi(z, t) = 0 in P^3.

    Both forms must have the same degree d >= 3; the surface is smooth
    exactly when both have simple zeros, which the counting operations
    verify when they compute the zero sets.
    """

    __slots__ = ("phi", "psi", "degree")

    def __init__(self, phi, psi):
        self.phi = as_binary_form(phi)
        self.psi = as_binary_form(psi)
        if self.phi.degree != self.psi.degree:
            raise ValueError("the two binary forms must have the same degree")
        if self.phi.degree < 3:
            raise ValueError("degree must be at least 3")
        self.degree = self.phi.degree

    def surface_form(self, ring: Sequence[str] = RING4) -> MultiPoly:
        """The defining 4-variable form phi(x, y) - psi(z, t)."""
        ring = tuple(ring)
        phi4 = self.phi.poly(ring[:2]).map_ring(ring)
        psi4 = self.psi.poly(ring[2:]).map_ring(ring)
        return phi4 - psi4

    def __repr__(self):
        return f"SeparableSurface(phi={self.phi}, psi={self.psi})"


@dataclass(frozen=True)
class LineReport:
    """Complete description of the lines on a separable surface.

    ``grid_lines`` holds the d^2 joins; ``ruling_lines`` holds alpha groups
    of d lines, one group per projectivity; ``group`` classifies the
    symmetry group when phi and psi are proportional (None otherwise);
    ``real_count`` counts emitted lines whose normalized Pluecker vector is
    real.
    """

    grid_lines: tuple
    ruling_lines: tuple
    alpha: int
    total: int
    group: GroupTag | None
    real_count: int

    def all_lines(self) -> list:
        flat = list(self.grid_lines)
        for group in self.ruling_lines:
            flat.extend(group)
        return flat


# -- scalar and composition helpers -------------------------------------------


def _compose_coeffs(coeffs: Sequence[complex], mat) -> np.ndarray:
    """Ascending coefficients of phi(m11*u + m12*v, m21*u + m22*v).

    ``coeffs[i]`` is the coefficient of x^i y^(d-i); the result uses the
    same convention in (u, v).
    """
    d = len(coeffs) - 1
    m11, m12 = complex(mat[0][0]), complex(mat[0][1])
    m21, m22 = complex(mat[1][0]), complex(mat[1][1])
    out = np.zeros(d + 1, dtype=complex)
    for i, a in enumerate(coeffs):
        if not a:
            continue
        px = np.array([math.comb(i, j) * m11**j * m12 ** (i - j)
                       for j in range(i + 1)], dtype=complex)
        k = d - i
        py = np.array([math.comb(k, j) * m21**j * m22 ** (k - j)
                       for j in range(k + 1)], dtype=complex)
        out += complex(a) * np.convolve(px, py)
    return out


def _proportionality_scalar(composed: np.ndarray, target: Sequence[complex],
                            tol: float) -> complex:
    """The scalar lam with composed = lam * target, verified coefficientwise.

    lam is read off at the largest-modulus coefficient of the target and
    then checked on every coefficient, which is robust against cancellation
    in any single position.
    """
    tgt = np.asarray(target, dtype=complex)
    k = int(np.argmax(np.abs(tgt)))
    lam = composed[k] / tgt[k]
    residual = float(np.max(np.abs(composed - lam * tgt)))
    scale = float(np.max(np.abs(composed)))
    if residual > tol * max(scale, 1e-300):
        raise RuntimeError(
            "scalar mismatch: the matrix does not carry one form onto the other "
            f"(relative residual {residual / max(scale, 1e-300):.3e})"
        )
    return lam


def _proportional_forms(f: BinaryForm, g: BinaryForm) -> bool:
    """True when f = lam * g exactly for some rational lam."""
    if f.degree != g.degree:
        return False
    lam = None
    for a, b in zip(f.coefficients, g.coefficients):
        if (a == 0) != (b == 0):
            return False
        if b != 0 and lam is None:
            lam = a / b
    return lam is not None and all(
        a == lam * b for a, b in zip(f.coefficients, g.coefficients)
    )


def _is_real_point(pair, tol: float) -> bool:
    a, b = pair
    return abs((a * b.conjugate()).imag) < tol


def _is_real_matrix(mat: np.ndarray, tol: float) -> bool:
    return bool(np.max(np.abs(canonical_matrix(mat).imag)) < tol)


def _is_real_line(line: Line3, tol: float) -> bool:
    return all(abs(complex(p).imag) < tol for p in line.plucker)


# -- verification --------------------------------------------------------------


def _verify_containment(form: MultiPoly, lines: Sequence[Line3], tol: float) -> None:
    """Batch-check that every line lies on the surface.

    Each line is sampled at d+1 parameters; each sample point is scaled to
    sup-norm 1 so the residual bound tol * ||F||_1 is meaningful.
    """
    if not lines:
        return
    d = int(form.degree)
    thetas = 0.37 + math.pi * np.arange(d + 1) / (d + 1)
    cos, sin = np.cos(thetas), np.sin(thetas)
    a = np.array([[complex(v) for v in ln.basis[0]] for ln in lines])
    b = np.array([[complex(v) for v in ln.basis[1]] for ln in lines])
    pts = cos[None, :, None] * a[:, None, :] + sin[None, :, None] * b[:, None, :]
    pts = pts.reshape(-1, 4)
    pts = pts / np.max(np.abs(pts), axis=1, keepdims=True)
    residuals = np.abs(evaluate_at_points(form, pts))
    fnorm = float(sum(abs(c) for c in form.terms.values()))
    worst = float(np.max(residuals))
    if worst >= tol * fnorm:
        raise RuntimeError(
            f"an emitted line fails containment verification "
            f"(worst residual {worst:.3e} vs bound {tol * fnorm:.3e})"
        )


def _verify_distinct(lines: Sequence[Line3]) -> None:
    keys = {ln.plucker_key() for ln in lines}
    if len(keys) != len(lines):
        raise RuntimeError("emitted lines are not pairwise distinct")


# -- main operations -----------------------------------------------------------


def count_and_emit(surface: SeparableSurface, tol: float = 1e-8) -> LineReport:
    """Count and explicitly emit every line on a separable surface.

    Returns a LineReport with the d^2 grid lines, the alpha groups of d
    ruling lines, the symmetry-group classification when phi and psi are
    proportional, and the number of real lines among those emitted.  Every
    line is verified to lie on the surface and the emitted set is verified
    to be pairwise distinct; emission order is deterministic (sorted by
    Pluecker key).
    """
    if not isinstance(surface, SeparableSurface):
        raise TypeError("count_and_emit expects a SeparableSurface")
    d = surface.degree
    zeros_phi = roots_p1(surface.phi, tol)
    zeros_psi = roots_p1(surface.psi, tol)

    grid = [
        Line3((a, b, 0, 0), (0, 0, c, e))
        for (a, b) in zeros_phi
        for (c, e) in zeros_psi
    ]
    grid.sort(key=Line3.plucker_key)

    matrices = projectivities_between(zeros_psi, zeros_phi, tol)
    alpha = len(matrices)
    phi_coeffs = [complex(c) for c in surface.phi.coefficients]
    psi_coeffs = [complex(c) for c in surface.psi.coefficients]

    ruling = []
    for mat in matrices:
        lam = _proportionality_scalar(_compose_coeffs(phi_coeffs, mat), psi_coeffs, tol)
        radius, angle = cmath.polar(1.0 / lam)
        base = radius ** (1.0 / d) * cmath.exp(1j * angle / d)
        group_lines = []
        for m in range(d):
            c = base * cmath.exp(2j * cmath.pi * m / d)
            point_a = (c * mat[0][0], c * mat[1][0], 1.0, 0.0)
            point_b = (c * mat[0][1], c * mat[1][1], 0.0, 1.0)
            group_lines.append(Line3(point_a, point_b))
        group_lines.sort(key=Line3.plucker_key)
        ruling.append(tuple(group_lines))
    ruling.sort(key=lambda g: g[0].plucker_key())

    all_lines = grid + [ln for group in ruling for ln in group]
    _verify_containment(surface.surface_form(), all_lines, tol)
    _verify_distinct(all_lines)

    total = d * d + alpha * d
    if total != len(all_lines):
        raise AssertionError("internal count mismatch")

    group_tag = None
    if _proportional_forms(surface.phi, surface.psi):
        group_tag = classify_group(matrices, tol)

    real_count = sum(1 for ln in all_lines if _is_real_line(ln, tol))
    return LineReport(
        grid_lines=tuple(grid),
        ruling_lines=tuple(ruling),
        alpha=alpha,
        total=total,
        group=group_tag,
        real_count=real_count,
    )


def count_real_lines(surface: SeparableSurface, tol: float = 1e-8) -> int:
    """Closed-form real-line count for a surface with real coefficients.

    Counts (real zeros of phi) * (real zeros of psi) grid lines, plus one
    ruling line per real-matrix projectivity when d is odd and two when d
    is even.  The closed form assumes all zeros are real and that every
    real symmetry has positive scaling factor; outside that regime a
    RuntimeWarning is issued (the parity rule can then overcount -- compare
    LineReport.real_count, which tests each emitted line directly).
    """
    if not isinstance(surface, SeparableSurface):
        raise TypeError("count_real_lines expects a SeparableSurface")
    d = surface.degree
    zeros_phi = roots_p1(surface.phi, tol)
    zeros_psi = roots_p1(surface.psi, tol)
    real_phi = sum(1 for p in zeros_phi if _is_real_point(p, tol))
    real_psi = sum(1 for p in zeros_psi if _is_real_point(p, tol))
    if real_phi < len(zeros_phi) or real_psi < len(zeros_psi):
        warnings.warn(
            "real-line count outside the supported regime (some zeros are not "
            "real); the closed-form count may differ from the true number of "
            "real lines -- compare LineReport.real_count",
            RuntimeWarning,
            stacklevel=2,
        )
    count = real_phi * real_psi
    matrices = projectivities_between(zeros_psi, zeros_phi, tol)
    phi_coeffs = [complex(c) for c in surface.phi.coefficients]
    psi_coeffs = [complex(c) for c in surface.psi.coefficients]
    extra_per_matrix = 1 if d % 2 else 2
    for mat in matrices:
        if not _is_real_matrix(mat, tol):
            continue
        count += extra_per_matrix
        if d % 2 == 0:
            lam = _proportionality_scalar(
                _compose_coeffs(phi_coeffs, mat), psi_coeffs, tol
            )
            if lam.real < 0:
                warnings.warn(
                    "a real symmetry has a negative scaling factor; the "
                    "even-degree parity rule counts 2 real lines for it but "
                    "its ruling contains none -- compare LineReport.real_count",
                    RuntimeWarning,
                    stacklevel=2,
                )
    return count


def maximal_count(d: int) -> int:
    """Largest possible number of lines on a separable surface of degree d.

    3d^2 in general; degrees 4, 6, 8, 12, 20 admit polyhedral symmetry
    groups that beat the generic bound (64, 180, 256, 864, 1600).
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 3:
        raise ValueError("degree must be an integer >= 3")
    return _EXCEPTIONAL_MAXIMA.get(d, 3 * d * d)


# -- form construction ---------------------------------------------------------

_X, _Y = variables(("x", "y"))

# Ground forms for the tetrahedral group: the two 4-point orbits (vertices
# and face centers) and the 6-point edge-midpoint orbit.
_T4 = _X**4 - _X * _Y**3
_T4B = 8 * _X**3 * _Y + _Y**4
_T6 = 8 * _X**6 + 20 * _X**3 * _Y**3 - _Y**6

# Octahedral ground forms: 6-, 8-, and 12-point orbits.
_O6 = _X * _Y * (_X**4 - _Y**4)
_O8 = _X**8 + 14 * _X**4 * _Y**4 + _Y**8
_O12 = _X**12 - 33 * _X**8 * _Y**4 - 33 * _X**4 * _Y**8 + _Y**12

# Icosahedral ground forms: 12-, 20-, and 30-point orbits.
_I12 = _X * _Y * (_X**10 + 11 * _X**5 * _Y**5 - _Y**10)
_I20 = (
    -(_X**20 + _Y**20)
    + 228 * (_X**15 * _Y**5 - _X**5 * _Y**15)
    - 494 * _X**10 * _Y**10
)
_I30 = (
    (_X**30 + _Y**30)
    + 522 * (_X**25 * _Y**5 - _X**5 * _Y**25)
    - 10005 * (_X**20 * _Y**10 + _X**10 * _Y**20)
)


def _distinct_rationals(rng: random.Random, count: int, *, lo: int = -40,
                        hi: int = 40, max_den: int = 6, exclude=()) -> list:
    out: list = []
    seen = set(exclude)
    while len(out) < count:
        q = Fraction(rng.randint(lo, hi), rng.randint(1, max_den))
        if q in seen:
            continue
        seen.add(q)
        out.append(q)
    return out


def _product(factors) -> MultiPoly:
    result = MultiPoly.constant(("x", "y"), 1)
    for f in factors:
        result = result * f
    return result


def _build_trivial(d: int, rng: random.Random) -> MultiPoly:
    if d < 5:
        raise ValueError(
            f"inadmissible (d, tag): every set of {d} <= 4 points has a "
            "nontrivial symmetry group; the trivial group requires degree >= 5"
        )
    roots = _distinct_rationals(rng, d, lo=-30, hi=30, max_den=4)
    return _product(_X - r * _Y for r in roots)


def _build_cyclic(d: int, k: int, rng: random.Random) -> MultiPoly:
    def orbit_product(beta: int) -> MultiPoly:
        lams = _distinct_rationals(rng, beta, lo=-20, hi=20, max_den=4,
                                   exclude=(Fraction(0),))
        return _product(_X**k - lam * _Y**k for lam in lams)

    if d % k == 0 and d // k >= 3:
        return orbit_product(d // k)
    if (d - 1) % k == 0 and (d - 1) // k >= 1 and d >= 5:
        return _X * orbit_product((d - 1) // k)
    if (d - 2) % k == 0 and (d - 2) // k >= 3:
        return _X * _Y * orbit_product((d - 2) // k)
    raise ValueError(
        f"inadmissible (d, tag): a cyclic group of order {k} needs "
        f"d = b*{k} with b >= 3, d = 1 + b*{k} with d >= 5, or "
        f"d = 2 + b*{k} with b >= 3; none fits d = {d}"
    )


def _build_dihedral(d: int, k: int, rng: random.Random) -> MultiPoly:
    candidates = []
    for rank, (a, b) in enumerate(((0, 1), (1, 1), (0, 0), (1, 0))):
        rem = d - 2 * a - b * k
        if rem < 0 or rem % (2 * k):
            continue
        gamma = rem // (2 * k)
        if gamma == 0 and b == 0:
            continue  # degree 2a <= 2 cannot carry the group
        if gamma == 0 and a == 1 and k in (2, 4):
            # 0, infinity and the k-th roots of unity then acquire extra
            # symmetries (a larger dihedral group for k = 2, the octahedral
            # group for k = 4).
            continue
        candidates.append((gamma, rank, a, b))
    if not candidates:
        raise ValueError(
            f"inadmissible (d, tag): a dihedral group with parameter {k} needs "
            f"d = 2a + b*{k} + c*{2 * k} with a, b in {{0, 1}}, c >= 0 "
            f"(k = 2, 4 excluded when c = 0 and a = 1); none fits d = {d}"
        )
    _, _, a, b = min(candidates)
    gamma = (d - 2 * a - b * k) // (2 * k)
    factors = []
    if a:
        factors.append(_X * _Y)
    if b:
        factors.append(_X**k - _Y**k)
    if gamma:
        lams = _distinct_rationals(rng, gamma, lo=2, hi=20, max_den=4,
                                   exclude=(Fraction(0), Fraction(1), Fraction(-1)))
        for lam in lams:
            c = lam + 1 / lam
            factors.append(_X ** (2 * k) - c * _X**k * _Y**k + _Y ** (2 * k))
    return _product(factors)


def _polyhedral_decompositions(d: int, lengths: tuple, limits: tuple):
    """All (m_1, ..., m_r) with sum m_i * lengths[i] = d, m_i <= limits[i]
    (None meaning unbounded)."""
    out = []

    def rec(i: int, rest: int, chosen: tuple):
        if i == len(lengths):
            if rest == 0:
                out.append(chosen)
            return
        step = lengths[i]
        top = rest // step if limits[i] is None else min(limits[i], rest // step)
        for m in range(top + 1):
            rec(i + 1, rest - m * step, chosen + (m,))

    rec(0, d, ())
    return out


def _build_tetrahedral(d: int, rng: random.Random) -> MultiPoly:
    # Orbit lengths 4 (x2), 6, 12; the combinations (2,0,0), (0,1,0) and
    # (2,1,0) acquire octahedral symmetry and are excluded.
    options = [
        (a, b, g)
        for (a, b, g) in _polyhedral_decompositions(d, (4, 6, 12), (2, 1, None))
        if not (g == 0 and (a, b) in ((2, 0), (0, 1), (2, 1)))
        and (a, b, g) != (0, 0, 0)
    ]
    if not options:
        raise ValueError(
            "inadmissible (d, tag): the tetrahedral group needs "
            "d = 4a + 6b + 12g with a in {0, 1, 2}, b in {0, 1}, g >= 0, "
            "excluding (a, b) in {(2, 0), (0, 1), (2, 1)} when g = 0 "
            f"(those gain octahedral symmetry); none fits d = {d}"
        )
    a, b, g = max(options, key=lambda abc: (abc[2], -abc[0]))
    factors = [_T4] * (a >= 1) + [_T4B] * (a == 2) + [_T6] * b
    for c in _distinct_rationals(rng, g, lo=2, hi=30, max_den=3,
                                 exclude=(Fraction(0),)):
        factors.append(_T4**3 - c * _T4B**3)
    return _product(factors)


def _build_octahedral(d: int, rng: random.Random) -> MultiPoly:
    options = _polyhedral_decompositions(d, (6, 8, 12, 24), (1, 1, 1, None))
    options = [o for o in options if o != (0, 0, 0, 0)]
    if not options:
        raise ValueError(
            "inadmissible (d, tag): the octahedral group needs "
            "d = 6a + 8b + 12g + 24e with a, b, g in {0, 1}, e >= 0; "
            f"none fits d = {d}"
        )
    a, b, g, e = max(options, key=lambda o: (o[3], o[2], o[1]))
    factors = [_O6] * a + [_O8] * b + [_O12] * g
    for c in _distinct_rationals(rng, e, lo=2, hi=30, max_den=3,
                                 exclude=(Fraction(0), Fraction(1))):
        factors.append(_O8**3 - c * _O12**2)
    return _product(factors)


def _build_icosahedral(d: int, rng: random.Random) -> MultiPoly:
    options = _polyhedral_decompositions(d, (12, 20, 30, 60), (1, 1, 1, None))
    options = [o for o in options if o != (0, 0, 0, 0)]
    if not options:
        raise ValueError(
            "inadmissible (d, tag): the icosahedral group needs "
            "d = 12a + 20b + 30g + 60e with a, b, g in {0, 1}, e >= 0; "
            f"none fits d = {d}"
        )
    a, b, g, e = max(options, key=lambda o: (o[3], o[2], o[1]))
    factors = [_I12] * a + [_I20] * b + [_I30] * g
    for c in _distinct_rationals(rng, e, lo=2, hi=30, max_den=3,
                                 exclude=(Fraction(0), Fraction(1728))):
        factors.append(_I20**3 - c * _I12**5)
    return _product(factors)


def _symmetry_group_of(form: BinaryForm, tol: float) -> GroupTag:
    zeros = roots_p1(form, tol)
    matrices = projectivities_between(zeros, zeros, tol)
    return classify_group(matrices, tol)


def build_form(d: int, tag, seed: int = 0) -> BinaryForm:
    """Construct a degree-d binary form whose symmetry group matches ``tag``.

    ``tag`` is a GroupTag or a string such as "cyclic:4", "D3", "T".  Any
    generic factors are drawn deterministically from ``seed``; the
    constructed form is validated by recomputing its symmetry group with
    this package's own machinery, redrawing generic factors on the rare
    accidental degeneration.  Raises ValueError when (d, tag) violates the
    orbit-length decomposition of the requested group.
    """
    if isinstance(tag, str):
        tag = GroupTag.parse(tag)
    if not isinstance(tag, GroupTag):
        raise TypeError("tag must be a GroupTag or a parseable string")
    if not isinstance(d, int) or isinstance(d, bool) or d < 3:
        raise ValueError("degree must be an integer >= 3")

    builders = {
        "trivial": lambda rng: _build_trivial(d, rng),
        "cyclic": lambda rng: _build_cyclic(d, tag.parameter, rng),
        "dihedral": lambda rng: _build_dihedral(d, tag.parameter, rng),
        "tetrahedral": lambda rng: _build_tetrahedral(d, rng),
        "octahedral": lambda rng: _build_octahedral(d, rng),
        "icosahedral": lambda rng: _build_icosahedral(d, rng),
    }
    if tag.kind not in builders:
        raise ValueError(f"unknown group kind {tag.kind!r}")

    last_error = None
    for attempt in range(40):
        rng = random.Random(1_000_003 * seed + attempt)
        poly = builders[tag.kind](rng)  # raises ValueError when inadmissible
        form = BinaryForm.from_poly(poly)
        try:
            found = _symmetry_group_of(form, tol=1e-8)
        except ValueError as exc:  # multiple roots from a degenerate draw
            last_error = exc
            continue
        if (found.kind, found.order) == (tag.kind, tag.order):
            return form
        last_error = RuntimeError(
            f"draw produced symmetry group {found.symbol} instead of {tag.symbol}"
        )
    raise RuntimeError(
        f"could not construct a validated ({d}, {tag.symbol}) form "
        f"after 40 attempts: {last_error}"
    )
