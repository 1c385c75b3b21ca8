"""Polynomial factorization over finite fields.

Distinct-degree factorization plus Cantor-Zassenhaus equal-degree
splitting (the trace-map variant in characteristic 2).  The randomized
split draws from a caller-supplied seeded generator, so runs are
reproducible.  Also provides an irreducibility test and deterministic
search for the first irreducible polynomial of a given degree, which is
how extension fields get their defining polynomials.
"""

import random

from . import polys
from .scalars import Zmod, FiniteField, is_prime
from ..errors import UnsupportedInput

DEFAULT_SEED = 20240801


def random_element(field, rng):
    if isinstance(field, Zmod):
        return rng.randrange(field.m)
    coeffs = [random_element(field.base, rng) for _ in range(field.deg)]
    return tuple(polys.trim(field.base, coeffs))


def random_poly(field, deg_bound, rng):
    """Random polynomial of degree < deg_bound (possibly zero)."""
    coeffs = [random_element(field, rng) for _ in range(deg_bound)]
    return polys.trim(field, coeffs)


def frobenius_power(field, f, e):
    """x^(q^e) mod f."""
    xq = polys.x_poly(field)
    for _ in range(e):
        xq = polys.pow_mod(field, xq, field.size, f)
    return xq


def is_irreducible(field, f):
    """Deterministic irreducibility test for a polynomial over a finite field."""
    f = polys.monic(field, polys.trim(field, list(f)))
    d = polys.degree(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    xq = polys.x_poly(field)
    q = field.size
    powers = {}
    for e in range(1, d + 1):
        xq = polys.pow_mod(field, xq, q, f)
        powers[e] = xq
    if not polys.eq(field, powers[d], polys.x_poly(field)):
        return False
    for r in _prime_divisors(d):
        g = polys.gcd(field, polys.sub(field, powers[d // r],
                                       polys.x_poly(field)), f)
        if polys.degree(g) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def distinct_degree(field, f):
    """Split a monic squarefree polynomial into (product, degree) parts."""
    out = []
    h = polys.x_poly(field)
    rest = list(f)
    d = 0
    while polys.degree(rest) > 2 * d:
        d += 1
        h = polys.pow_mod(field, h, field.size, rest)
        g = polys.gcd(field, polys.sub(field, h, polys.x_poly(field)), rest)
        if polys.degree(g) > 0:
            out.append((g, d))
            rest, r = polys.divmod_(field, rest, g)
            assert not r
            h = polys.mod(field, h, rest)
    if polys.degree(rest) > 0:
        out.append((rest, polys.degree(rest)))
    return out


def equal_degree_split(field, f, d, rng):
    """Split f (a product of >= 2 irreducibles of degree d) into factors."""
    n = polys.degree(f)
    if n == d:
        return [f]
    while True:
        a = random_poly(field, n, rng)
        if polys.degree(a) < 1:
            continue
        g = polys.gcd(field, a, f)
        if 0 < polys.degree(g) < n:
            pieces = g
        else:
            if field.char == 2:
                # trace map over GF(2): sum of a^(2^i)
                t = list(a)
                acc = list(a)
                k = _log2_size(field) * d
                for _ in range(k - 1):
                    t = polys.pow_mod(field, t, 2, f)
                    acc = polys.add(field, acc, t)
                b = acc
            else:
                e = (field.size ** d - 1) // 2
                b = polys.sub(field, polys.pow_mod(field, a, e, f),
                              polys.one(field))
            pieces = polys.gcd(field, b, f)
        if 0 < polys.degree(pieces) < n:
            q, r = polys.divmod_(field, f, pieces)
            assert not r
            return (equal_degree_split(field, pieces, d, rng)
                    + equal_degree_split(field, q, d, rng))


def _log2_size(field):
    k = 0
    s = field.size
    while s > 1:
        s //= 2
        k += 1
    return k


def factor(field, f, rng=None):
    """Full factorization over a finite field.

    Returns (unit, [(monic irreducible, multiplicity), ...]) with the
    product of unit and factor powers equal to the input.
    """
    rng = rng or random.Random(DEFAULT_SEED)
    f = polys.trim(field, list(f))
    if polys.degree(f) < 0:
        raise ZeroDivisionError("factor of the zero polynomial")
    unit = polys.lc(f)
    f = polys.monic(field, f)
    factors = {}
    _factor_monic(field, f, rng, factors)
    ordered = sorted(factors.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return unit, [(list(g), e) for g, e in ordered]


def _factor_monic(field, f, rng, out):
    if polys.degree(f) == 0:
        return
    fp = polys.deriv(field, f)
    if polys.is_zero(fp):
        # f = h(x^p): take p-th roots of coefficients
        p = field.char
        root = _pth_root_poly(field, f, p)
        sub = {}
        _factor_monic(field, root, rng, sub)
        for g, e in sub.items():
            out[g] = out.get(g, 0) + e * p
        return
    sf = polys.divmod_(field, f, polys.gcd(field, f, fp))[0]
    rest = list(f)
    for prod, d in distinct_degree(field, polys.monic(field, sf)):
        for g in equal_degree_split(field, prod, d, rng):
            g = polys.monic(field, g)
            e = 0
            while True:
                q, r = polys.divmod_(field, rest, g)
                if polys.is_zero(r):
                    rest, e = q, e + 1
                else:
                    break
            out[tuple(g)] = out.get(tuple(g), 0) + e
    if polys.degree(rest) > 0:
        _factor_monic(field, polys.monic(field, rest), rng, out)


def _pth_root_poly(field, f, p):
    root = []
    for i in range(0, len(f), p):
        c = f[i]
        root.append(field.pow(c, field.size // p) if not field.is_zero(c)
                    else field.zero())
    return polys.trim(field, root)


def factor_mod_p(coeffs, p, seed=DEFAULT_SEED):
    """Factor an integer-coefficient polynomial modulo a prime p.

    Returns (unit, [(factor as list of residues, multiplicity), ...]);
    factors are monic irreducible over F_p and ordered by (degree,
    coefficients) so the result is deterministic for a fixed seed.
    """
    if not is_prime(p):
        raise UnsupportedInput(f"{p} is not prime")
    field = Zmod(p)
    f = polys.trim(field, [c % p for c in coeffs])
    if polys.is_zero(f):
        raise ZeroDivisionError("factor of the zero polynomial")
    return factor(field, f, random.Random(seed))


def find_irreducible(field, degree):
    """First monic irreducible of the given degree in enumeration order."""
    if degree < 1:
        raise ValueError("degree must be positive")
    elems = list(field.elements())
    idx = [0] * degree
    total = field.size ** degree
    for _ in range(total):
        cand = [elems[i] for i in idx] + [field.one()]
        cand = polys.trim(field, cand)
        if polys.degree(cand) == degree and is_irreducible(field, cand):
            return cand
        for pos in range(degree):
            idx[pos] += 1
            if idx[pos] < len(elems):
                break
            idx[pos] = 0
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


def extension_field(base, degree):
    """The degree-d extension of a finite field, with a fixed modulus."""
    if degree == 1:
        return base
    return FiniteField(base, find_irreducible(base, degree))
