"""Pure-Python reduction kernel for packed-integer polynomial arithmetic.

Polynomials are handed to this module as parallel lists ``(keys, coeffs)``
where ``keys`` are packed monomial integers sorted in strictly decreasing
order (the packing makes integer comparison agree with the monomial order)
and ``coeffs`` are nonzero Python ints.  The packing layout is described by
three parameters:

* ``nfields`` -- number of bit fields in a key,
* ``bits`` -- width of each field,
* ``offset`` -- packed key of the monomial 1 (nonzero only for layouts
  that store complemented exponents),
* ``complemented`` -- True when the exponent fields store ``MAX - e`` and
  the top field stores the total degree (the degrevlex layout).

Monomial multiplication is ``a + b - offset`` in every layout.
"""

from __future__ import annotations

import heapq
from math import gcd

BACKEND = "pure"


def divides(a: int, b: int, nfields: int, bits: int, complemented: bool) -> bool:
    """Return True when packed monomial *a* divides packed monomial *b*."""
    mask = (1 << bits) - 1
    if complemented:
        # Low nfields-1 fields hold MAX - e; the top field (total degree)
        # is implied by the others and must be skipped.
        for i in range(nfields - 1):
            shift = i * bits
            if (a >> shift) & mask < (b >> shift) & mask:
                return False
        return True
    for i in range(nfields):
        shift = i * bits
        if (a >> shift) & mask > (b >> shift) & mask:
            return False
    return True


def raw_fields(key: int, nfields: int, bits: int, complemented: bool) -> list:
    """Unpack a key into raw (uncomplemented) field values.

    For the complemented layout the low fields store MAX - exponent and the
    top field the total degree; the returned list is [e_0.., degree].  For
    direct layouts the stored fields are returned as-is.
    """
    mask = (1 << bits) - 1
    out = []
    if complemented:
        for _ in range(nfields - 1):
            out.append(mask - (key & mask))
            key >>= bits
        out.append(key)
    else:
        for _ in range(nfields):
            out.append(key & mask)
            key >>= bits
    return out


def _strip_content(work: dict, out_coeffs: list, limit: int = 1) -> int:
    """Return the gcd of every coefficient in *work* and *out_coeffs*.

    Stops early once the running gcd reaches *limit*.
    """
    g = 0
    for c in work.values():
        g = gcd(g, c)
        if g <= limit:
            return g
    for c in out_coeffs:
        g = gcd(g, c)
        if g <= limit:
            return g
    return g


def normal_form_raw(
    fkeys: list,
    fcoeffs: list,
    glms: list,
    gkeys: list,
    gcoeffs: list,
    nfields: int,
    bits: int,
    offset: int,
    complemented: bool,
    exact: bool,
):
    """Reduce (fkeys, fcoeffs) by the basis described by (glms, gkeys, gcoeffs).

    Each basis element must have integer coefficients, positive leading
    coefficient and content 1.  The dividend is repeatedly rescaled by
    integer factors so that every reduction step stays in the integers
    (fraction-free reduction).

    Returns ``(keys, coeffs, scale)`` with keys strictly decreasing.  In
    exact mode the mathematical normal form is ``result / scale``.  In
    primitive mode (``exact=False``) the result is content-stripped with a
    positive leading coefficient and ``scale`` is returned as 1.
    """
    work = dict(zip(fkeys, fcoeffs))
    heap = [-k for k in fkeys]
    heapq.heapify(heap)
    out_keys: list = []
    out_coeffs: list = []
    scale = 1
    nbasis = len(glms)
    mask = (1 << bits) - 1
    bound_cache: dict = {}

    while heap:
        key = -heapq.heappop(heap)
        coeff = work.pop(key, None)
        if not coeff:
            continue
        hit = -1
        for i in range(nbasis):
            if divides(glms[i], key, nfields, bits, complemented):
                hit = i
                break
        if hit < 0:
            out_keys.append(key)
            out_coeffs.append(coeff)
            continue
        gk = gkeys[hit]
        gc = gcoeffs[hit]
        lead = gc[0]
        d = gcd(coeff, lead)
        mult_f = lead // d
        mult_g = coeff // d
        scaled = mult_f != 1
        if scaled:
            scale *= mult_f
            for k2 in work:
                work[k2] *= mult_f
            for i in range(len(out_coeffs)):
                out_coeffs[i] *= mult_f
        quotient = key - gk[0] + offset
        # Guard packed-field overflow: reduction under an order that is not
        # degree-compatible (lex) can grow exponents without bound.
        bounds = bound_cache.get(hit)
        if bounds is None:
            bounds = [0] * nfields
            for k2 in gk:
                for f, v in enumerate(raw_fields(k2, nfields, bits, complemented)):
                    if v > bounds[f]:
                        bounds[f] = v
            bound_cache[hit] = bounds
        qraw = raw_fields(quotient, nfields, bits, complemented)
        for f in range(nfields):
            if qraw[f] + bounds[f] > mask:
                raise OverflowError(
                    "monomial exponent exceeded packing capacity during reduction"
                )
        for i in range(1, len(gk)):
            k2 = quotient + gk[i] - offset
            delta = mult_g * gc[i]
            cur = work.get(k2)
            if cur is None:
                work[k2] = -delta
                heapq.heappush(heap, -k2)
            else:
                cur -= delta
                if cur:
                    work[k2] = cur
                else:
                    del work[k2]
        if scaled:
            # Rescaling is what drives coefficient growth; strip shared
            # content right away (the gcd sweep exits early at 1).
            g = _strip_content(work, out_coeffs, limit=1)
            if exact:
                g = gcd(g, scale)
            if g > 1:
                for k2 in work:
                    work[k2] //= g
                out_coeffs[:] = [c // g for c in out_coeffs]
                if exact:
                    scale //= g
    if not out_keys:
        return [], [], 1
    if exact:
        g = gcd(scale, _strip_content({}, out_coeffs, limit=1))
        if g > 1:
            out_coeffs = [c // g for c in out_coeffs]
            scale //= g
        return out_keys, out_coeffs, scale
    g = _strip_content({}, out_coeffs, limit=1)
    if out_coeffs[0] < 0:
        g = -g
    if g != 1:
        out_coeffs = [c // g for c in out_coeffs]
    return out_keys, out_coeffs, 1
