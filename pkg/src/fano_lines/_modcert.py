"""Modular certificate that a zero-dimensional polynomial system is radical.

Exact squarefreeness tests on univariate eliminants become expensive when the
quotient dimension is large (rational coefficient growth), so for big systems
we certify radicality with a one-sided modular argument:

1. reduce the rational Groebner basis modulo a prime p that keeps every
   coefficient denominator invertible (the basis is monic, so leading terms
   survive automatically);
2. verify that the reduction is still a Groebner basis by re-checking all
   S-polynomial reductions mod p — then it has the same leading ideal, hence
   the same standard-monomial basis and the same quotient dimension D;
3. pick a random linear form L and compute the minimal polynomial of the
   Krylov vector of the multiplication operator M_L mod p.  If it reaches
   full degree D and is squarefree, it equals the characteristic polynomial
   of M_L mod p.

Because normal forms against a monic basis only ever divide by coefficient
denominators that are invertible mod p, the matrix of M_L mod p is the
entrywise reduction of the rational matrix, so its characteristic polynomial
is the reduction of the rational one.  A squarefree reduction forces the
rational characteristic polynomial to be squarefree, which gives M_L a full
set of distinct eigenvalues, so the system has D distinct solutions and the
ideal is radical.

Failure to certify proves nothing (the prime or the linear form may simply be
unlucky); callers must treat a False result as "count may include
multiplicities", never as a proof of non-radicality.
"""

from __future__ import annotations

import random

import numpy as np

from .exact_poly import GroebnerBasis, monomial_order, standard_monomials

# Primes near 5e7 keep all intermediate products D * (p-1)^2 comfortably
# inside int64 for quotient dimensions up to a few thousand.
_PRIME_CEILING = 50_000_000
_NUM_PRIMES = 6


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _working_primes() -> list:
    primes = []
    n = _PRIME_CEILING - 1
    while len(primes) < _NUM_PRIMES:
        if _is_prime(n):
            primes.append(n)
        n -= 2
    return primes


_PRIMES = _working_primes()


def _reduce_mod_p(poly, p: int):
    """Coefficient-wise reduction; None when a denominator vanishes mod p."""
    out = {}
    for exps, c in poly.terms.items():
        den = c.denominator % p
        if den == 0:
            return None
        v = c.numerator * pow(den, -1, p) % p
        if v:
            out[exps] = v
    return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _nf_mod_p(work: dict, gens, p: int, pack) -> dict:
    """Normal form of a monic-basis division mod p.  ``gens`` is a list of
    (leading monomial, coefficient dict) pairs with leading coefficient 1."""
    work = {k: v % p for k, v in work.items() if v % p}
    rem: dict = {}
    while work:
        m = max(work, key=pack)
        c = work.pop(m)
        for lm, terms in gens:
            if _divides(lm, m):
                diff = tuple(a - b for a, b in zip(m, lm))
                for mm, cc in terms.items():
                    if mm == lm:
                        continue
                    key = tuple(a + b for a, b in zip(mm, diff))
                    v = (work.get(key, 0) - c * cc) % p
                    if v:
                        work[key] = v
                    else:
                        work.pop(key, None)
                break
        else:
            rem[m] = c
    return rem


def _is_groebner_mod_p(gens, p: int, pack) -> bool:
    """Check that every S-polynomial reduces to zero mod p."""
    for i in range(len(gens)):
        lmi, gi = gens[i]
        for j in range(i + 1, len(gens)):
            lmj, gj = gens[j]
            lcm = tuple(max(a, b) for a, b in zip(lmi, lmj))
            if all(a + b == c for a, b, c in zip(lmi, lmj, lcm)):
                continue  # coprime leading terms always reduce to zero
            di = tuple(a - b for a, b in zip(lcm, lmi))
            dj = tuple(a - b for a, b in zip(lcm, lmj))
            s: dict = {}
            for mm, cc in gi.items():
                s[tuple(a + b for a, b in zip(mm, di))] = cc
            for mm, cc in gj.items():
                key = tuple(a + b for a, b in zip(mm, dj))
                v = (s.get(key, 0) - cc) % p
                if v:
                    s[key] = v
                else:
                    s.pop(key, None)
            if _nf_mod_p(s, gens, p, pack):
                return False
    return True


def _mult_matrix_mod_p(gens, basis, ell, p: int, pack, nvars: int):
    """Matrix of multiplication by the linear form ell (list of per-variable
    coefficients) on the standard-monomial basis, mod p."""
    index = {m: i for i, m in enumerate(basis)}
    dim = len(basis)
    M = np.zeros((dim, dim), dtype=np.int64)
    nf_cache: dict = {}
    for col, b in enumerate(basis):
        acc: dict = {}
        for vi in range(nvars):
            cv = ell[vi]
            if not cv:
                continue
            m = b[:vi] + (b[vi] + 1,) + b[vi + 1 :]
            r = nf_cache.get(m)
            if r is None:
                r = {m: 1} if m in index else _nf_mod_p({m: 1}, gens, p, pack)
                nf_cache[m] = r
            for mm, cc in r.items():
                v = (acc.get(mm, 0) + cv * cc) % p
                if v:
                    acc[mm] = v
                else:
                    acc.pop(mm, None)
        for mm, cc in acc.items():
            M[index[mm], col] = cc
    return M


def _krylov_minpoly_mod_p(M, p: int, rng: random.Random):
    """Minimal polynomial of a random Krylov vector: (coeff array, degree).

    The coefficients satisfy sum(coeffs[k] * M^k v) = 0 with
    coeffs[degree] = 1 (monic).
    """
    dim = M.shape[0]
    v = np.array([rng.randrange(p) for _ in range(dim)], dtype=np.int64)
    echelon: list = []  # (pivot, reduced vector, combination over powers)
    u = v.copy()
    for step in range(dim + 1):
        w = u.copy()
        combo = np.zeros(dim + 1, dtype=np.int64)
        combo[step] = 1
        for pivot, row, rcombo in echelon:
            c = int(w[pivot])
            if c:
                w = (w - c * row) % p
                combo = (combo - c * rcombo) % p
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return combo, step
        pivot = int(nz[0])
        inv = pow(int(w[pivot]), -1, p)
        echelon.append((pivot, w * inv % p, combo * inv % p))
        u = M @ u % p
    raise AssertionError("Krylov iteration exceeded the space dimension")


def _poly_gcd_mod_p(f: list, g: list, p: int) -> list:
    """Euclidean gcd of dense coefficient lists (low to high) mod p."""
    f = [c % p for c in f]
    g = [c % p for c in g]
    while any(g):
        while g and not g[-1]:
            g.pop()
        inv = pow(g[-1], -1, p)
        while len(f) >= len(g) and any(f):
            while f and not f[-1]:
                f.pop()
            if len(f) < len(g):
                break
            c = f[-1] * inv % p
            shift = len(f) - len(g)
            for k in range(len(g)):
                f[shift + k] = (f[shift + k] - c * g[k]) % p
            while f and not f[-1]:
                f.pop()
        f, g = g, f
    while f and not f[-1]:
        f.pop()
    return f


def _is_squarefree_mod_p(coeffs, p: int) -> bool:
    f = [int(c) for c in coeffs]
    deriv = [k * f[k] % p for k in range(1, len(f))]
    gcd = _poly_gcd_mod_p(f, deriv, p)
    return len(gcd) == 1


def certify_radical(gb: GroebnerBasis, dim: int, attempts: int = 3) -> bool:
    """One-sided test that the zero-dimensional ideal of ``gb`` is radical.

    True means the system provably has ``dim`` distinct solutions.  False
    means no certificate was found and says nothing about radicality.
    """
    ring = gb.ring
    nvars = len(ring)
    pack = monomial_order(gb.order, nvars).pack
    basis = standard_monomials(gb)
    if basis is None or len(basis) != dim:
        raise ValueError("basis does not present a quotient of the stated dimension")
    rng = random.Random(0x5EED ^ dim)
    for p in _PRIMES:
        gens = []
        for g in gb.generators:
            terms = _reduce_mod_p(g, p)
            if terms is None:
                gens = None
                break
            gens.append((g.leading_monomial(gb.order), terms))
        if gens is None:
            continue
        if not _is_groebner_mod_p(gens, p, pack):
            continue
        for _ in range(attempts):
            ell = [rng.randrange(1, p) for _ in range(nvars)]
            M = _mult_matrix_mod_p(gens, basis, ell, p, pack, nvars)
            combo, degree = _krylov_minpoly_mod_p(M, p, rng)
            if degree == dim and _is_squarefree_mod_p(combo[: degree + 1], p):
                return True
    return False
