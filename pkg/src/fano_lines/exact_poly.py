"""Exact multivariate polynomial arithmetic over the rationals.

Provides sparse polynomials with ``Fraction`` coefficients together with
the exact machinery the rest of the package is built on:

* monomial orders (degrevlex, grlex, lex) realised as packed-integer keys
  so that integer comparison agrees with the monomial order,
* normal forms (multivariate division) with fraction-free integer steps,
* Buchberger's algorithm with the Gebauer-Moeller pair update and a
  work budget,
* standard-monomial enumeration and quotient dimension for
  zero-dimensional ideals,
* univariate eliminants (minimal polynomials of a coordinate in the
  quotient ring) via Krylov iteration,
* a squarefreeness test for univariate polynomials (primitive PRS gcd),
* Sylvester resultants evaluated by fraction-free (Bareiss) elimination.

Deliberately out of scope: polynomial factorisation and arithmetic in
positive characteristic.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import _kernel

ORDER_NAMES = ("degrevlex", "grlex", "lex")

DEFAULT_BUDGET = 1_000_000

_BITS = 12
_FIELD_MAX = (1 << _BITS) - 1
# Keep packed-field sums (lcm of two keys, products in reductions) below
# the field capacity with a wide margin.
_MAX_PACK_DEGREE = 1500


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner-basis run exceeds its reduction budget."""

    def __init__(self, spent: int, budget: int):
        super().__init__(
            f"polynomial reduction budget exceeded ({spent} reductions, budget {budget})"
        )
        self.spent = spent
        self.budget = budget


class MonomialOrder:
    """A monomial order on ``nvars`` variables realised as packed keys.

    ``pack`` maps an exponent tuple to an integer such that comparing the
    integers with ``<`` agrees with the monomial order.  Multiplication of
    monomials is ``a + b - offset`` where ``offset`` is the key of the
    monomial 1.
    """

    __slots__ = ("name", "nvars", "bits", "nfields", "complemented", "offset")

    def __init__(self, name: str, nvars: int):
        if name not in ORDER_NAMES:
            raise ValueError(f"unknown monomial order {name!r}; choose from {ORDER_NAMES}")
        if nvars < 0:
            raise ValueError("number of variables must be nonnegative")
        self.name = name
        self.nvars = nvars
        self.bits = _BITS
        if name == "lex":
            self.nfields = max(nvars, 1)
            self.complemented = False
        else:
            self.nfields = nvars + 1
            self.complemented = name == "degrevlex"
        if self.complemented:
            offset = 0
            for i in range(nvars):
                offset |= _FIELD_MAX << (i * _BITS)
            self.offset = offset
        else:
            self.offset = 0

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent tuple has wrong length")
        deg = 0
        for e in exps:
            if e < 0:
                raise ValueError("negative exponent")
            deg += e
        if deg > _MAX_PACK_DEGREE:
            raise OverflowError(f"total degree {deg} exceeds packing capacity")
        if self.name == "lex":
            key = 0
            for e in exps:
                key = (key << _BITS) | e
            return key
        if self.name == "grlex":
            key = deg
            for e in exps:
                key = (key << _BITS) | e
            return key
        # degrevlex: degree field on top, complemented exponents below with
        # the last variable in the most significant exponent field.
        key = deg
        for e in reversed(exps):
            key = (key << _BITS) | (_FIELD_MAX - e)
        return key

    def unpack(self, key: int) -> tuple:
        n = self.nvars
        if self.name == "lex":
            exps = [0] * n
            for i in range(n - 1, -1, -1):
                exps[i] = key & _FIELD_MAX
                key >>= _BITS
            return tuple(exps)
        if self.name == "grlex":
            exps = [0] * n
            for i in range(n - 1, -1, -1):
                exps[i] = key & _FIELD_MAX
                key >>= _BITS
            return tuple(exps)
        exps = [0] * n
        for i in range(n):
            exps[i] = _FIELD_MAX - (key & _FIELD_MAX)
            key >>= _BITS
        return tuple(exps)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.offset

    def divides(self, a: int, b: int) -> bool:
        return _kernel.divides(a, b, self.nfields, self.bits, self.complemented)

    def lcm(self, a: int, b: int) -> int:
        ea = self.unpack(a)
        eb = self.unpack(b)
        return self.pack(tuple(map(max, ea, eb)))

    def degree(self, key: int) -> int:
        if self.name == "lex":
            return sum(self.unpack(key))
        return key >> (self.nvars * _BITS)


@lru_cache(maxsize=None)
def monomial_order(name: str, nvars: int) -> MonomialOrder:
    """Return the cached MonomialOrder instance for (name, nvars)."""
    return MonomialOrder(name, nvars)


def _rat_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class MultiPoly:
    """A sparse multivariate polynomial with Fraction coefficients.

    ``ring`` is a tuple of distinct variable names; ``terms`` maps exponent
    tuples to nonzero Fractions.  Instances are treated as immutable.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Sequence[str], terms: Mapping[tuple, object] | None = None):
        ring = tuple(ring)
        if len(set(ring)) != len(ring):
            raise ValueError("ring variables must be distinct")
        for name in ring:
            if not name or not isinstance(name, str):
                raise ValueError(f"invalid variable name {name!r}")
        clean: dict = {}
        if terms:
            n = len(ring)
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if not coeff:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != n:
                    raise ValueError("exponent tuple has wrong length for ring")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                clean[exps] = coeff
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "MultiPoly":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Sequence[str], value) -> "MultiPoly":
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): Fraction(value)})

    @classmethod
    def variable(cls, ring: Sequence[str], name: str) -> "MultiPoly":
        ring = tuple(ring)
        i = ring.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(ring)))
        return cls(ring, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, ring: Sequence[str], exps: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(ring, {tuple(exps): Fraction(coeff)})

    # -- basic structure -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree; minus infinity for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def leading_term(self, order: str = "degrevlex") -> tuple:
        """Return (exponent tuple, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        ord_ = monomial_order(order, len(self.ring))
        exps = max(self.terms, key=ord_.pack)
        return exps, self.terms[exps]

    def leading_monomial(self, order: str = "degrevlex") -> tuple:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: str = "degrevlex") -> Fraction:
        return self.leading_term(order)[1]

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return _raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.ring)
            return _raw(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(key, 0) + ca * cb
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return _raw(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.ring, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self == MultiPoly.constant(self.ring, other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and evaluation ------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        i = self.ring.index(name)
        terms: dict = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if not e:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            s = terms.get(key, 0) + c * e
            if s:
                terms[key] = s
            else:
                del terms[key]
        return _raw(self.ring, terms)

    def evaluate(self, values: Sequence):
        """Evaluate at a point.  Exact for int/Fraction inputs, numeric otherwise."""
        if len(values) != len(self.ring):
            raise ValueError("wrong number of values")
        exact = all(isinstance(v, (int, Fraction)) for v in values)
        total = Fraction(0) if exact else 0j
        for exps, c in self.terms.items():
            mono = 1
            for v, e in zip(values, exps):
                if e:
                    mono *= v ** e
            total += (c if exact else float(c)) * mono
        return total

    def substitute(self, assignments: Mapping[str, object], ring: Sequence[str] | None = None) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Unassigned variables must exist in the target ring and map to
        themselves.  The target ring is taken from the first polynomial
        value when not given explicitly.
        """
        if ring is None:
            for v in assignments.values():
                if isinstance(v, MultiPoly):
                    ring = v.ring
                    break
            else:
                ring = self.ring
        ring = tuple(ring)
        images: list = []
        for name in self.ring:
            if name in assignments:
                v = assignments[name]
                if isinstance(v, MultiPoly):
                    if v.ring != ring:
                        raise ValueError("substitution values live in different rings")
                    images.append(v)
                else:
                    images.append(MultiPoly.constant(ring, v))
            else:
                images.append(MultiPoly.variable(ring, name))
        caches: list = [{0: MultiPoly.constant(ring, 1), 1: img} for img in images]
        result = MultiPoly.zero(ring)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(ring, c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                cache = caches[i]
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            result = result + term
        return result

    def map_ring(self, ring: Sequence[str]) -> "MultiPoly":
        """Reinterpret this polynomial in a ring containing its variables."""
        ring = tuple(ring)
        positions = [ring.index(name) for name in self.ring]
        n = len(ring)
        terms: dict = {}
        for exps, c in self.terms.items():
            key = [0] * n
            for pos, e in zip(positions, exps):
                key[pos] = e
            terms[tuple(key)] = c
        return _raw(ring, terms)

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ord_ = monomial_order("degrevlex", len(self.ring))
        pieces = []
        for exps in sorted(self.terms, key=ord_.pack, reverse=True):
            c = self.terms[exps]
            parts = []
            for name, e in zip(self.ring, exps):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            mag = abs(c)
            if not parts:
                body = _rat_str(mag)
            elif mag == 1:
                body = "*".join(parts)
            else:
                body = _rat_str(mag) + "*" + "*".join(parts)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = [body if sign == "+" else "-" + body]
        for sign, body in pieces[1:]:
            out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly[{', '.join(self.ring)}]({self})"


def _raw(ring: tuple, terms: dict) -> MultiPoly:
    """Build a MultiPoly from already-normalised data without validation."""
    p = object.__new__(MultiPoly)
    object.__setattr__(p, "ring", ring)
    object.__setattr__(p, "terms", terms)
    return p


# -- packing between MultiPoly and the reduction kernel ---------------------


def _pack_exact(p: MultiPoly, ord_: MonomialOrder):
    """Pack with denominators cleared: returns (keys desc, int coeffs, denom)."""
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    items = sorted(((ord_.pack(e), c) for e, c in p.terms.items()), reverse=True)
    keys = [k for k, _ in items]
    coeffs = [int(c * denom) for _, c in items]
    return keys, coeffs, denom


def _pack_primitive(p: MultiPoly, ord_: MonomialOrder):
    """Pack as a primitive integer polynomial with positive leading coefficient."""
    keys, coeffs, _ = _pack_exact(p, ord_)
    if not keys:
        return [], []
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    if coeffs[0] < 0:
        g = -g
    if g != 1:
        coeffs = [c // g for c in coeffs]
    return keys, coeffs


def _unpack_poly(ring: tuple, ord_: MonomialOrder, keys, coeffs, denom=1) -> MultiPoly:
    return _raw(ring, {ord_.unpack(k): Fraction(c, denom) for k, c in zip(keys, coeffs)})


def normal_form(p: MultiPoly, basis: Iterable[MultiPoly], order: str = "degrevlex") -> MultiPoly:
    """Remainder of p under multivariate division by the listed polynomials.

    The divisor chosen at each step is the first polynomial in list order
    whose leading monomial divides the term under reduction, which makes
    the result deterministic for a fixed list.
    """
    basis = [g for g in basis if not g.is_zero]
    ord_ = monomial_order(order, len(p.ring))
    for g in basis:
        if g.ring != p.ring:
            raise ValueError("polynomials live in different rings")
    if p.is_zero or not basis:
        return p
    fkeys, fcoeffs, denom = _pack_exact(p, ord_)
    glms, gkeys, gcoeffs = [], [], []
    for g in basis:
        k, c = _pack_primitive(g, ord_)
        glms.append(k[0])
        gkeys.append(k)
        gcoeffs.append(c)
    kernel = _kernel.normal_form_for(ord_.nfields, ord_.bits)
    keys, coeffs, scale = kernel(
        fkeys, fcoeffs, glms, gkeys, gcoeffs,
        ord_.nfields, ord_.bits, ord_.offset, ord_.complemented, True,
    )
    return _unpack_poly(p.ring, ord_, keys, coeffs, denom * scale)


# -- Groebner bases ----------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis: monic generators sorted by decreasing
    leading monomial, together with the order they were computed in."""

    def __init__(self, generators: Iterable[MultiPoly], order: str):
        self.generators = list(generators)
        self.order = order
        self._packed = None

    @property
    def ring(self) -> tuple:
        if not self.generators:
            raise ValueError("empty basis has no ring")
        return self.generators[0].ring

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and self.generators == other.generators

    def __repr__(self):
        return f"GroebnerBasis(order={self.order!r}, {len(self.generators)} generators)"

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def packed(self):
        """Packed primitive-integer form (lms, keys, coeffs) for kernel calls."""
        if self._packed is None:
            ord_ = monomial_order(self.order, len(self.ring))
            glms, gkeys, gcoeffs = [], [], []
            for g in self.generators:
                k, c = _pack_primitive(g, ord_)
                glms.append(k[0])
                gkeys.append(k)
                gcoeffs.append(c)
            self._packed = (glms, gkeys, gcoeffs)
        return self._packed


def _spoly(ord_: MonomialOrder, a, b):
    """S-polynomial of two packed primitive polynomials (keys, coeffs)."""
    ak, ac = a
    bk, bc = b
    off = ord_.offset
    big = ord_.lcm(ak[0], bk[0])
    ua = big - ak[0] + off
    ub = big - bk[0] + off
    d = gcd(ac[0], bc[0])
    ma = bc[0] // d
    mb = ac[0] // d
    for shift, keys in ((ua, ak), (ub, bk)):
        qraw = _kernel.raw_fields(shift, ord_.nfields, ord_.bits, ord_.complemented)
        for k in keys:
            rf = _kernel.raw_fields(k, ord_.nfields, ord_.bits, ord_.complemented)
            if any(q + r > _FIELD_MAX for q, r in zip(qraw, rf)):
                raise OverflowError(
                    "monomial exponent exceeded packing capacity in S-polynomial"
                )
    acc: dict = {}
    for k, c in zip(ak, ac):
        acc[ua + k - off] = ma * c
    for k, c in zip(bk, bc):
        k2 = ub + k - off
        v = acc.get(k2, 0) - mb * c
        if v:
            acc[k2] = v
        else:
            acc.pop(k2, None)
    keys = sorted(acc, reverse=True)
    return keys, [acc[k] for k in keys]


def buchberger(
    generators: Iterable[MultiPoly],
    order: str = "degrevlex",
    budget: int = DEFAULT_BUDGET,
) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal the generators span.

    Pair handling follows Gebauer-Moeller (coprime, chain and multiple
    criteria); pairs are processed in normal selection order (smallest lcm
    first).  Every polynomial reduction counts against ``budget`` and a
    BudgetExceeded is raised as soon as it is spent.
    """
    gens = list(generators)
    for g in gens:
        if not isinstance(g, MultiPoly):
            raise TypeError("generators must be MultiPoly instances")
    if not gens:
        raise ValueError("at least one generator is required")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    ord_ = monomial_order(order, len(ring))
    kernel = _kernel.normal_form_for(ord_.nfields, ord_.bits)

    packed = []
    seen = set()
    for g in gens:
        k, c = _pack_primitive(g, ord_)
        if not k:
            continue
        tag = (tuple(k), tuple(c))
        if tag not in seen:
            seen.add(tag)
            packed.append((k, c))
    if not packed:
        return GroebnerBasis([], order)
    packed.sort(key=lambda kc: (kc[0][0], kc[0], kc[1]))

    glms: list = []
    gkeys: list = []
    gcoeffs: list = []
    pairs: dict = {}
    spent = 0

    def reduce_once(keys, coeffs):
        nonlocal spent
        spent += 1
        if spent > budget:
            raise BudgetExceeded(spent, budget)
        return kernel(
            keys, coeffs, glms, gkeys, gcoeffs,
            ord_.nfields, ord_.bits, ord_.offset, ord_.complemented, False,
        )

    def add(keys, coeffs):
        lmf = keys[0]
        t = len(glms)
        for ij in list(pairs):
            big = pairs[ij]
            if (
                ord_.divides(lmf, big)
                and ord_.lcm(glms[ij[0]], lmf) != big
                and ord_.lcm(glms[ij[1]], lmf) != big
            ):
                del pairs[ij]
        groups: dict = {}
        for i in range(t):
            groups.setdefault(ord_.lcm(glms[i], lmf), []).append(i)
        kept: list = []
        for big in sorted(groups):
            if all(not ord_.divides(other, big) for other in kept):
                kept.append(big)
        for big in kept:
            members = groups[big]
            if any(ord_.mul(glms[i], lmf) == big for i in members):
                continue
            pairs[(min(members), t)] = big
        glms.append(lmf)
        gkeys.append(keys)
        gcoeffs.append(coeffs)

    for keys, coeffs in packed:
        k, c, _ = reduce_once(keys, coeffs)
        if k:
            add(k, c)

    while pairs:
        (i, j), _ = min(
            pairs.items(),
            key=lambda kv: (ord_.degree(kv[1]), kv[1], kv[0]),
        )
        del pairs[(i, j)]
        skeys, scoeffs = _spoly(ord_, (gkeys[i], gcoeffs[i]), (gkeys[j], gcoeffs[j]))
        if not skeys:
            continue
        k, c, _ = reduce_once(skeys, scoeffs)
        if k:
            add(k, c)

    # Minimalize: keep only generators whose leading monomial no other kept
    # generator's leading monomial divides (smallest first, so equal leading
    # monomials keep one representative).
    by_lm = sorted(range(len(glms)), key=lambda i: (glms[i], gkeys[i], gcoeffs[i]))
    minimal: list = []
    for i in by_lm:
        if not any(ord_.divides(glms[j], glms[i]) for j in minimal):
            minimal.append(i)

    # Interreduce: fully reduce each survivor against the others, then make
    # the results monic.  This yields the unique reduced Groebner basis.
    reduced = []
    for i in minimal:
        olms = [glms[j] for j in minimal if j != i]
        okeys = [gkeys[j] for j in minimal if j != i]
        ocoeffs = [gcoeffs[j] for j in minimal if j != i]
        k, c, _ = kernel(
            gkeys[i], gcoeffs[i], olms, okeys, ocoeffs,
            ord_.nfields, ord_.bits, ord_.offset, ord_.complemented, False,
        )
        reduced.append((k, c))
    reduced.sort(key=lambda kc: kc[0][0], reverse=True)
    out = []
    for k, c in reduced:
        lead = c[0]
        out.append(_unpack_poly(ring, ord_, k, c, lead))
    return GroebnerBasis(out, order)


# -- quotient structure -------------------------------------------------------


def standard_monomials(gb: GroebnerBasis):
    """Monomials outside the leading-term ideal, sorted ascending.

    Returns None when the quotient is not finite-dimensional (no pure power
    of some variable appears among the leading monomials).
    """
    if not gb.generators:
        return None
    ring = gb.ring
    n = len(ring)
    ord_ = monomial_order(gb.order, n)
    lms = gb.leading_monomials()
    bounds = [None] * n
    for exps in lms:
        support = [i for i, e in enumerate(exps) if e]
        if not support:
            return []  # 1 is in the ideal
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or exps[i] < bounds[i]:
                bounds[i] = exps[i]
    if any(b is None for b in bounds):
        return None
    lms_desc = sorted(lms, key=ord_.pack)
    standard = []
    for exps in itertools.product(*(range(b) for b in bounds)):
        for lead in lms_desc:
            if all(a >= b for a, b in zip(exps, lead)):
                break
        else:
            standard.append(exps)
    standard.sort(key=ord_.pack)
    return standard


def quotient_dimension(gb: GroebnerBasis):
    """Dimension of the quotient as a rational vector space (inf if not finite)."""
    sm = standard_monomials(gb)
    if sm is None:
        return math.inf
    return len(sm)


def _monomial_normal_form_packed(gb: GroebnerBasis, key: int):
    """Normal form of a single packed monomial: ((keys...), (coeffs...), scale)."""
    ord_ = monomial_order(gb.order, len(gb.ring))
    glms, gkeys, gcoeffs = gb.packed()
    kernel = _kernel.normal_form_for(ord_.nfields, ord_.bits)
    keys, coeffs, scale = kernel(
        [key], [1], glms, gkeys, gcoeffs,
        ord_.nfields, ord_.bits, ord_.offset, ord_.complemented, True,
    )
    return keys, coeffs, scale


def univariate_eliminant(gb: GroebnerBasis, var: str) -> MultiPoly:
    """Minimal polynomial of the coordinate ``var`` in the quotient ring.

    The quotient must be zero-dimensional and nonzero.  Returns a monic
    univariate polynomial over the ring (var,): the lowest-degree monic
    polynomial m with m(var) in the ideal.
    """
    sm = standard_monomials(gb)
    if sm is None:
        raise ValueError("quotient is not zero-dimensional")
    dim = len(sm)
    if dim == 0:
        raise ValueError("ideal contains 1; quotient ring is zero")
    ring = gb.ring
    n = len(ring)
    vi = ring.index(var)
    ord_ = monomial_order(gb.order, n)
    index = {m: i for i, m in enumerate(sm)}
    nf_cache: dict = {}

    def shift_vector(vec):
        """Image of a coefficient vector under multiplication by var."""
        out = [Fraction(0)] * dim
        for i, c in enumerate(vec):
            if not c:
                continue
            m = sm[i]
            m2 = m[:vi] + (m[vi] + 1,) + m[vi + 1:]
            j = index.get(m2)
            if j is not None:
                out[j] += c
                continue
            expansion = nf_cache.get(m2)
            if expansion is None:
                keys, coeffs, scale = _monomial_normal_form_packed(gb, ord_.pack(m2))
                expansion = [
                    (index[ord_.unpack(k)], Fraction(cc, scale))
                    for k, cc in zip(keys, coeffs)
                ]
                nf_cache[m2] = expansion
            for j, val in expansion:
                out[j] += c * val
        return out

    # Krylov iteration with incremental echelon reduction over Q.  The raw
    # vector at step k represents var^k, so its relation over the power
    # basis is the unit coefficient vector on x^k; once the reduced vector
    # vanishes, the reduced relation is the (already monic) minimal polynomial.
    pivots: list = []  # (pivot index, normalized vector, relation coefficients)
    vec = [Fraction(0)] * dim
    vec[index[(0,) * n]] = Fraction(1)
    for step in range(dim + 1):
        work = list(vec)
        relw = [Fraction(0)] * step + [Fraction(1)]
        for pidx, pvec, prel in pivots:
            c = work[pidx]
            if not c:
                continue
            for k in range(dim):
                if pvec[k]:
                    work[k] -= c * pvec[k]
            for k in range(len(prel)):
                if prel[k]:
                    relw[k] -= c * prel[k]
            work[pidx] = Fraction(0)
        pidx = next((k for k, v in enumerate(work) if v), None)
        if pidx is None:
            return MultiPoly((var,), {(k,): c for k, c in enumerate(relw)})
        scale = work[pidx]
        work = [v / scale for v in work]
        relw = [v / scale for v in relw]
        pivots.append((pidx, work, relw))
        vec = shift_vector(vec)
    raise AssertionError("Krylov iteration failed to terminate")


# -- univariate utilities -----------------------------------------------------


def variables(ring: Sequence[str]) -> tuple:
    """Convenience: the tuple of variable polynomials of a ring."""
    ring = tuple(ring)
    return tuple(MultiPoly.variable(ring, name) for name in ring)


def _dense_int_coeffs(p: MultiPoly) -> list:
    """Dense ascending integer coefficients of a univariate polynomial
    (denominators cleared, content kept)."""
    if len(p.ring) != 1:
        raise ValueError("polynomial is not univariate")
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    out = [0] * (int(p.degree) + 1 if p.terms else 0)
    for (e,), c in p.terms.items():
        out[e] = int(c * denom)
    return out


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_content(a: list) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(a: list) -> list:
    a = _trim(list(a))
    if not a:
        return a
    g = _int_content(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = [c // g for c in a]
    return a


def _pseudo_rem(a: list, b: list) -> list:
    """Pseudo-remainder of dense integer polynomials (ascending coefficients)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for i, c in enumerate(b):
            a[shift + i] -= la * c
        a = _trim(a)
    return a


def _int_poly_gcd(a: list, b: list) -> list:
    """Gcd of dense integer polynomials via the primitive PRS."""
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    return a


def is_squarefree_univariate(p: MultiPoly) -> bool:
    """True when the univariate polynomial has no repeated roots.

    Decided exactly over the integers: gcd(p, p') must be constant.
    """
    if len(p.ring) != 1:
        raise ValueError("squarefreeness test requires a univariate polynomial")
    if p.is_zero:
        raise ValueError("the zero polynomial is not squarefree or squarefull")
    if p.degree <= 1:
        return True
    a = _dense_int_coeffs(p)
    da = [i * c for i, c in enumerate(a)][1:]
    g = _int_poly_gcd(a, da)
    return len(g) == 1


# -- resultants ---------------------------------------------------------------


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact polynomial division: returns q with a == q*b, else raises."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.ring != b.ring:
        raise ValueError("polynomials live in different rings")
    ring = a.ring
    ord_ = monomial_order("degrevlex", len(ring))
    rem = dict(a.terms)
    blm, blc = b.leading_term()
    quotient: dict = {}
    while rem:
        exps = max(rem, key=ord_.pack)
        c = rem[exps]
        q = tuple(x - y for x, y in zip(exps, blm))
        if any(e < 0 for e in q):
            raise ArithmeticError("polynomial division is not exact")
        qc = c / blc
        quotient[q] = qc
        for eb, cb in b.terms.items():
            key = tuple(x + y for x, y in zip(q, eb))
            s = rem.get(key, 0) - qc * cb
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return _raw(ring, quotient)


def _coeffs_in(p: MultiPoly, var: str):
    """Coefficients of p as a polynomial in var, over the ring without var."""
    i = p.ring.index(var)
    rest = p.ring[:i] + p.ring[i + 1:]
    out: dict = {}
    for exps, c in p.terms.items():
        e = exps[i]
        key = exps[:i] + exps[i + 1:]
        bucket = out.setdefault(e, {})
        bucket[key] = bucket.get(key, 0) + c
    return rest, {e: _raw(rest, {k: v for k, v in t.items() if v}) for e, t in out.items()}


def sylvester_resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant of f and g with respect to var, over the remaining variables.

    The Sylvester matrix is evaluated by fraction-free (Bareiss) elimination,
    which keeps every intermediate entry an exact polynomial quotient.
    """
    if f.ring != g.ring:
        raise ValueError("polynomials live in different rings")
    rest, fc = _coeffs_in(f, var)
    _, gc = _coeffs_in(g, var)
    if f.is_zero or g.is_zero:
        return MultiPoly.zero(rest)
    m = max(fc)
    n = max(gc)
    one = MultiPoly.constant(rest, 1)
    if m == 0 and n == 0:
        return one
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    zero = MultiPoly.zero(rest)
    rows = []
    frow = [fc.get(m - k, zero) for k in range(m + 1)]
    grow = [gc.get(n - k, zero) for k in range(n + 1)]
    for r in range(n):
        rows.append([zero] * r + frow + [zero] * (size - m - 1 - r))
    for r in range(m):
        rows.append([zero] * r + grow + [zero] * (size - n - 1 - r))

    sign = 1
    prev = one
    for k in range(size - 1):
        pivot_row = next((r for r in range(k, size) if not rows[r][k].is_zero), None)
        if pivot_row is None:
            return MultiPoly.zero(rest)
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            head = rows[i][k]
            for j in range(k + 1, size):
                num = pivot * rows[i][j] - head * rows[k][j]
                rows[i][j] = exact_div(num, prev) if not num.is_zero else zero
            rows[i][k] = zero
        prev = pivot
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det
