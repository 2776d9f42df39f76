"""Geometry of points on the projective line.

Points of P^1 are held as unit-norm homogeneous coordinate pairs (a, b)
representing (a : b); the chordal distance between unit pairs is
|a1*b2 - a2*b1|, which is projectively well defined and bounded by 1.
The module finds roots of binary forms, enumerates the projectivities
carrying one finite point set onto another, and classifies the finite
subgroups of the Moebius group that arise as symmetry groups of such
sets (cyclic, dihedral, tetrahedral, octahedral, icosahedral).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_poly import MultiPoly

_DEDUP_GRID = 1e-6
_NEWTON_STEPS = 30


def normalize_point(pair) -> tuple:
    """Scale a homogeneous pair to unit norm with the larger entry real positive."""
    a, b = complex(pair[0]), complex(pair[1])
    n = math.hypot(abs(a), abs(b))
    if n == 0.0:
        raise ValueError("(0, 0) does not define a point of the projective line")
    a /= n
    b /= n
    anchor = a if abs(a) >= abs(b) else b
    phase = anchor / abs(anchor)
    return (a / phase, b / phase)


def chordal_distance(p, q) -> float:
    """Chordal distance between two unit-norm homogeneous pairs."""
    return abs(p[0] * q[1] - p[1] * q[0])


class BinaryForm:
    """A nonzero homogeneous form in two variables with exact coefficients.

    ``coefficients[i]`` is the rational coefficient of x^i y^(d-i), so the
    degree is ``len(coefficients) - 1``.  Floats are rejected to keep the
    representation exact; pass ints, Fractions, or strings like "1/2".
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence):
        coeffs = []
        for c in coefficients:
            if isinstance(c, float):
                raise TypeError("binary form coefficients must be exact rationals")
            coeffs.append(Fraction(c))
        if len(coeffs) < 2:
            raise ValueError("a binary form must have degree at least 1")
        if not any(coeffs):
            raise ValueError("the zero form is not a valid binary form")
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "BinaryForm":
        if len(poly.ring) != 2:
            raise ValueError("a binary form must live in a two-variable ring")
        if poly.is_zero:
            raise ValueError("the zero form is not a valid binary form")
        if not poly.is_homogeneous():
            raise ValueError("binary form must be homogeneous")
        d = int(poly.degree)
        out = [Fraction(0)] * (d + 1)
        for (i, _), c in poly.terms.items():
            out[i] = Fraction(c)
        return cls(out)

    def poly(self, ring: Sequence[str] = ("x", "y")) -> MultiPoly:
        d = self.degree
        terms = {(i, d - i): c for i, c in enumerate(self.coefficients) if c}
        return MultiPoly(ring, terms)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        return str(self.poly())

    def __repr__(self):
        return f"BinaryForm({self})"


def as_binary_form(form) -> BinaryForm:
    """Coerce a BinaryForm or a two-variable MultiPoly to a BinaryForm."""
    if isinstance(form, BinaryForm):
        return form
    if isinstance(form, MultiPoly):
        return BinaryForm.from_poly(form)
    raise TypeError(f"expected a binary form, got {type(form).__name__}")


class PointSetP1:
    """A finite set of pairwise-distinct points of P^1.

    Points are stored as unit pairs in a deterministic order (finite points
    sorted by their affine value, the infinite point last).  Creation fails
    if two points are closer than twice the resolution, which is how a
    multiple root of a binary form is detected and reported.
    """

    def __init__(self, points: Sequence, tol: float = 1e-8):
        pts = [normalize_point(p) for p in points]

        def sort_key(p):
            a, b = p
            if abs(b) <= abs(a) * 1e-14:
                return (1, 0.0, 0.0)
            t = a / b
            return (0, t.real, t.imag)

        pts.sort(key=sort_key)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if chordal_distance(pts[i], pts[j]) <= 2 * tol:
                    raise ValueError(
                        "points are closer than the working resolution "
                        "(multiple root or tolerance too coarse)"
                    )
        self.points = pts
        self.tol = tol

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __repr__(self):
        shown = ", ".join(
            "inf" if abs(b) <= abs(a) * 1e-14 else format(a / b, ".4g")
            for a, b in self.points
        )
        return f"PointSetP1([{shown}])"

    def as_array(self) -> np.ndarray:
        """The points as a 2 x n complex array of column vectors."""
        return np.array(self.points, dtype=complex).T


def _dense_complex_coeffs(form) -> list:
    """Ascending coefficients c_i of sum c_i x^i y^(d-i) for a binary form."""
    return [complex(c) for c in as_binary_form(form).coefficients]


def _polish_root(coeffs_asc: list, r: complex) -> complex:
    """Refine a root of f(t) = sum c_i t^i by Newton in a stable chart.

    For |r| <= 1 iterate on f directly; otherwise iterate on the reversed
    polynomial at s = 1/r, which keeps every quantity bounded.
    """
    d = len(coeffs_asc) - 1
    if abs(r) <= 1.0:
        work = coeffs_asc
        t = r
        flip = False
    else:
        work = coeffs_asc[::-1]
        t = 1.0 / r
        flip = True
    dwork = [i * c for i, c in enumerate(work)][1:]
    for _ in range(_NEWTON_STEPS):
        f = 0j
        for c in reversed(work):
            f = f * t + c
        fp = 0j
        for c in reversed(dwork):
            fp = fp * t + c
        if fp == 0:
            break
        step = f / fp
        t -= step
        if abs(step) <= 1e-16 * max(1.0, abs(t)):
            break
    return (1.0 / t if t != 0 else complex("inf")) if flip else t


def roots_p1(form, tol: float = 1e-8) -> PointSetP1:
    """The root set of a separable binary form as points of P^1.

    Raises ValueError (via PointSetP1) when the form has a multiple root at
    the working resolution.
    """
    coeffs = _dense_complex_coeffs(form)
    d = len(coeffs) - 1
    m = max(i for i, c in enumerate(coeffs) if c != 0)
    pts = []
    if d - m >= 2:
        raise ValueError(
            "points are closer than the working resolution "
            "(multiple root or tolerance too coarse)"
        )
    if d - m == 1:
        pts.append((1.0 + 0j, 0j))
    if m > 0:
        head = coeffs[: m + 1]
        raw = np.roots(head[::-1])
        for r in raw:
            r = _polish_root(head, complex(r))
            if cmath.isinf(abs(r)):
                pts.append((1.0 + 0j, 0j))
            else:
                pts.append((r, 1.0 + 0j))
    return PointSetP1(pts, tol)


# -- Moebius transformations --------------------------------------------------


def apply_mobius(mat: np.ndarray, point) -> tuple:
    """Image of a P^1 point under a projective 2x2 matrix, as a unit pair."""
    a, b = point
    return normalize_point((mat[0, 0] * a + mat[0, 1] * b, mat[1, 0] * a + mat[1, 1] * b))


def _triple_to_standard(p1, p2, p3) -> np.ndarray:
    """Matrix of the Moebius map sending p1, p2, p3 to 0, infinity, 1."""
    c1 = p3[0] * p2[1] - p3[1] * p2[0]
    c2 = p3[0] * p1[1] - p3[1] * p1[0]
    return np.array(
        [
            [p1[1] * c1, -p1[0] * c1],
            [p2[1] * c2, -p2[0] * c2],
        ],
        dtype=complex,
    )


def _adjugate(mat: np.ndarray) -> np.ndarray:
    return np.array(
        [[mat[1, 1], -mat[0, 1]], [-mat[1, 0], mat[0, 0]]], dtype=complex
    )


def mobius_from_triples(src, dst) -> np.ndarray:
    """The unique Moebius matrix carrying three distinct points to three others."""
    src = [normalize_point(p) for p in src]
    dst = [normalize_point(p) for p in dst]
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("exactly three source and three destination points required")
    ms = _triple_to_standard(*src)
    md = _triple_to_standard(*dst)
    return _adjugate(md) @ ms


def canonical_matrix(mat: np.ndarray) -> np.ndarray:
    """Projective representative: divide by the first entry of near-maximal modulus."""
    flat = mat.reshape(-1)
    top = max(abs(e) for e in flat)
    if top == 0:
        raise ValueError("zero matrix does not define a projectivity")
    for e in flat:
        if abs(e) >= top * (1 - 1e-9):
            return mat / e
    raise AssertionError("unreachable")


def _matrix_key(mat: np.ndarray) -> tuple:
    rep = canonical_matrix(mat).reshape(-1)
    return tuple(
        (round(e.real / _DEDUP_GRID), round(e.imag / _DEDUP_GRID)) for e in rep
    )


def same_projectivity(a: np.ndarray, b: np.ndarray, eps: float = 1e-8) -> bool:
    """Whether two nonzero matrices define the same projectivity.

    Uses the phase-invariant criterion |<A, B>| = ||A|| ||B||, which is
    immune to the pivot choice made by canonical_matrix.
    """
    inner = abs(np.vdot(a, b))
    return inner >= (1 - eps) * float(np.linalg.norm(a) * np.linalg.norm(b))


class _ProjectiveIndex:
    """Deduplicated store of projectivities with tolerant lookup.

    Lookup first tries the rounded-grid key and falls back to a linear scan
    with the phase-invariant comparison, so matrices sitting on a grid
    boundary are still recognized.
    """

    def __init__(self):
        self.mats: list = []
        self._by_key: dict = {}

    def find(self, mat: np.ndarray):
        idx = self._by_key.get(_matrix_key(mat))
        if idx is not None:
            return idx
        for i, m in enumerate(self.mats):
            if same_projectivity(m, mat):
                return i
        return None

    def add(self, mat: np.ndarray) -> int:
        mat = canonical_matrix(mat)
        idx = len(self.mats)
        self.mats.append(mat)
        self._by_key.setdefault(_matrix_key(mat), idx)
        return idx


def projectivities_between(src: PointSetP1, dst: PointSetP1, tol: float = 1e-8) -> list:
    """All projectivities of P^1 carrying the set src onto the set dst.

    Every candidate is pinned down by where the first three source points
    go, so all ordered triples of destination points are tried; a candidate
    is kept when it maps every source point to within ``tol`` (chordal) of
    a destination point, bijectively.  Returned matrices are canonical
    projective representatives, deduplicated.
    """
    n = len(src)
    if n != len(dst):
        return []
    if n < 3:
        raise ValueError("projectivity enumeration needs at least three points")
    src_arr = src.as_array()  # 2 x n
    dst_arr = dst.as_array()
    ms = _triple_to_standard(src[0], src[1], src[2])

    triples = list(itertools.permutations(range(n), 3))
    d1 = dst_arr[:, [t[0] for t in triples]]  # 2 x K
    d2 = dst_arr[:, [t[1] for t in triples]]
    d3 = dst_arr[:, [t[2] for t in triples]]
    c1 = d3[0] * d2[1] - d3[1] * d2[0]  # K
    c2 = d3[0] * d1[1] - d3[1] * d1[0]
    K = len(triples)
    md = np.empty((K, 2, 2), dtype=complex)
    md[:, 0, 0] = d1[1] * c1
    md[:, 0, 1] = -d1[0] * c1
    md[:, 1, 0] = d2[1] * c2
    md[:, 1, 1] = -d2[0] * c2
    adj = np.empty_like(md)
    adj[:, 0, 0] = md[:, 1, 1]
    adj[:, 0, 1] = -md[:, 0, 1]
    adj[:, 1, 0] = -md[:, 1, 0]
    adj[:, 1, 1] = md[:, 0, 0]
    mats = adj @ ms  # K x 2 x 2

    imgs = mats @ src_arr  # K x 2 x n
    norms = np.sqrt(np.abs(imgs[:, 0, :]) ** 2 + np.abs(imgs[:, 1, :]) ** 2)
    # A matrix built from distinct triples is invertible, so norms are positive.
    imgs = imgs / norms[:, None, :]
    # cross[k, i, j] = det(image_i, dst_j): chordal distances.
    cross = np.abs(
        imgs[:, 0, :, None] * dst_arr[None, 1, None, :]
        - imgs[:, 1, :, None] * dst_arr[None, 0, None, :]
    )
    nearest = cross.argmin(axis=2)  # K x n
    best = cross.min(axis=2)
    hit = best.max(axis=1) < tol
    store = _ProjectiveIndex()
    for k in np.flatnonzero(hit):
        assign = nearest[k]
        if len(set(assign.tolist())) != n:
            continue
        if store.find(mats[k]) is None:
            store.add(mats[k])
    return store.mats


# -- finite subgroups of the Moebius group ------------------------------------


@dataclass(frozen=True)
class GroupTag:
    """Classification of a finite Moebius group: kind, order, and the
    rotational parameter k for cyclic (order k) / dihedral (order 2k)."""

    kind: str
    order: int
    parameter: int | None = None

    @classmethod
    def trivial(cls) -> "GroupTag":
        return cls("trivial", 1)

    @classmethod
    def cyclic(cls, k: int) -> "GroupTag":
        if k < 2:
            raise ValueError("cyclic parameter must be at least 2 (order 1 is the trivial group)")
        return cls("cyclic", k, k)

    @classmethod
    def dihedral(cls, k: int) -> "GroupTag":
        if k < 2:
            raise ValueError("dihedral parameter must be at least 2")
        return cls("dihedral", 2 * k, k)

    @classmethod
    def tetrahedral(cls) -> "GroupTag":
        return cls("tetrahedral", 12)

    @classmethod
    def octahedral(cls) -> "GroupTag":
        return cls("octahedral", 24)

    @classmethod
    def icosahedral(cls) -> "GroupTag":
        return cls("icosahedral", 60)

    @classmethod
    def parse(cls, text: str) -> "GroupTag":
        """Parse tags like 'trivial', 'cyclic:4', 'C4', 'dihedral:3', 'D3',
        'T', 'O', 'I' (long names also accepted)."""
        if isinstance(text, GroupTag):
            return text
        s = text.strip()
        low = s.lower()
        if low in ("trivial", "1"):
            return cls.trivial()
        named = {
            "t": cls.tetrahedral, "tetrahedral": cls.tetrahedral,
            "o": cls.octahedral, "octahedral": cls.octahedral,
            "i": cls.icosahedral, "icosahedral": cls.icosahedral,
        }
        if low in named:
            return named[low]()
        for prefix, builder in (("cyclic", cls.cyclic), ("dihedral", cls.dihedral),
                                ("c", cls.cyclic), ("d", cls.dihedral)):
            body = None
            if low.startswith(prefix + ":"):
                body = low[len(prefix) + 1:]
            elif prefix in ("c", "d") and low.startswith(prefix) and low[len(prefix):].isdigit():
                body = low[len(prefix):]
            if body is not None:
                if not body.isdigit():
                    raise ValueError(f"bad group parameter in {text!r}")
                return builder(int(body))
        raise ValueError(
            f"unrecognized group tag {text!r}; expected trivial, cyclic:k, dihedral:k, T, O, or I"
        )

    @property
    def symbol(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "cyclic":
            return f"C{self.parameter}"
        if self.kind == "dihedral":
            return f"D{self.parameter}"
        return {"tetrahedral": "T", "octahedral": "O", "icosahedral": "I"}[self.kind]


def classify_group(matrices: Sequence, tol: float = 1e-8) -> GroupTag:
    """Identify a finite set of projective matrices as a Moebius group.

    Raises ValueError when the set is not closed under composition (up to
    the deduplication resolution), since then it is not a group at all.
    """
    store = _ProjectiveIndex()
    for m in matrices:
        m = np.asarray(m, dtype=complex)
        if store.find(m) is not None:
            raise ValueError("duplicate group elements")
        store.add(m)
    mats = store.mats
    n = len(mats)
    if n == 0:
        raise ValueError("empty set of matrices")

    def index_of(mat) -> int:
        idx = store.find(mat)
        if idx is None:
            raise ValueError("set of projectivities is not closed under composition")
        return idx

    identity = index_of(np.eye(2, dtype=complex))

    # Cayley table & element orders (orders divide n, so n steps suffice).
    orders = []
    for m in mats:
        power = m
        order = 1
        while index_of(power) != identity:
            power = canonical_matrix(power @ m)
            order += 1
            if order > n:
                raise ValueError("set of projectivities is not closed under composition")
        orders.append(order)
    for a in mats:
        for b in mats:
            index_of(canonical_matrix(a @ b))

    if n == 1:
        return GroupTag("trivial", 1)
    if n in orders:
        return GroupTag("cyclic", n, n)
    if n % 2 == 0:
        k = n // 2
        rotations = [i for i, o in enumerate(orders) if o == k]
        involutions = [i for i, o in enumerate(orders) if o == 2]
        for i in rotations:
            a = mats[i]
            a_inv_key = _matrix_key(_adjugate(a))
            for j in involutions:
                b = mats[j]
                conj = canonical_matrix(b @ a @ _adjugate(b))
                if _matrix_key(conj) == a_inv_key:
                    return GroupTag("dihedral", n, k)
    if n == 12:
        return GroupTag("tetrahedral", 12)
    if n == 24:
        return GroupTag("octahedral", 24)
    if n == 60:
        return GroupTag("icosahedral", 60)
    raise ValueError(f"unrecognized group order {n} for a finite Moebius group")
