"""Dense univariate polynomial arithmetic over an arbitrary coefficient domain.

A polynomial a_0 + a_1 x + ... + a_d x^d is the list [a_0, a_1, ..., a_d]
of domain payloads with nonzero leading coefficient; [] is the zero
polynomial.  Functions take the coefficient domain as first argument.
Ring operations (add, mul, ...) work over any commutative domain;
divmod, gcd and friends require the domain to be a field.
"""


def trim(dom, f):
    """Strip trailing zero coefficients."""
    d = len(f)
    while d and dom.is_zero(f[d - 1]):
        d -= 1
    return list(f[:d])


def zero():
    return []


def one(dom):
    return [dom.one()]


def const(dom, c):
    return [] if dom.is_zero(c) else [c]


def x_poly(dom):
    return [dom.zero(), dom.one()]


def degree(f):
    """Degree with the convention deg 0 = -1."""
    return len(f) - 1


def is_zero(f):
    return not f


def lc(f):
    """Leading coefficient of a nonzero polynomial."""
    return f[-1]


def eq(dom, f, g):
    if len(f) != len(g):
        return False
    return all(dom.eq(a, b) for a, b in zip(f, g))


def add(dom, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else dom.zero()
        b = g[i] if i < len(g) else dom.zero()
        out.append(dom.add(a, b))
    return trim(dom, out)


def neg(dom, f):
    return [dom.neg(a) for a in f]


def sub(dom, f, g):
    return add(dom, f, neg(dom, g))


def scale(dom, c, f):
    if dom.is_zero(c):
        return []
    return trim(dom, [dom.mul(c, a) for a in f])


def mul(dom, f, g):
    if not f or not g:
        return []
    out = [dom.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if dom.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = dom.add(out[i + j], dom.mul(a, b))
    return trim(dom, out)


def shift(dom, f, k):
    """Multiply by x^k."""
    if not f:
        return []
    return [dom.zero()] * k + list(f)


def pow_(dom, f, e):
    out = one(dom)
    base = list(f)
    while e:
        if e & 1:
            out = mul(dom, out, base)
        e >>= 1
        if e:
            base = mul(dom, base, base)
    return out


def deriv(dom, f):
    out = []
    for i in range(1, len(f)):
        out.append(dom.mul(dom.from_int(i), f[i]))
    return trim(dom, out)


def evaluate(dom, f, point):
    """Horner evaluation at a domain element."""
    acc = dom.zero()
    for a in reversed(f):
        acc = dom.add(dom.mul(acc, point), a)
    return acc


def monic(dom, f):
    """Scale a nonzero polynomial so its leading coefficient is 1."""
    u = dom.invert(lc(f))
    return scale(dom, u, f)


def divmod_(dom, f, g):
    """Quotient and remainder; the domain must be a field and g nonzero."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = degree(g)
    inv_lead = dom.invert(lc(g))
    q = [dom.zero()] * max(0, len(f) - dg)
    while degree(f) >= dg:
        k = degree(f) - dg
        c = dom.mul(f[-1], inv_lead)
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = dom.sub(f[k + i], dom.mul(c, b))
        f = trim(dom, f)
    return trim(dom, q), f


def mod(dom, f, g):
    return divmod_(dom, f, g)[1]


def gcd(dom, f, g):
    """Monic gcd over a field; gcd(0, 0) = 0."""
    a, b = list(f), list(g)
    while b:
        a, b = b, mod(dom, a, b)
    if not a:
        return []
    return monic(dom, a)


def ext_gcd(dom, f, g):
    """Return (d, s, t) with s f + t g = d, d the monic gcd."""
    r0, r1 = list(f), list(g)
    s0, s1 = one(dom), []
    t0, t1 = [], one(dom)
    while r1:
        q, r = divmod_(dom, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(dom, s0, mul(dom, q, s1))
        t0, t1 = t1, sub(dom, t0, mul(dom, q, t1))
    if not r0:
        return [], s0, t0
    u = dom.invert(lc(r0))
    return scale(dom, u, r0), scale(dom, u, s0), scale(dom, u, t0)


def lcm(dom, f, g):
    if not f or not g:
        return []
    return monic(dom, divmod_(dom, mul(dom, f, g), gcd(dom, f, g))[0])


def pow_mod(dom, f, e, m):
    """f^e mod m by binary powering."""
    out = one(dom)
    base = mod(dom, f, m)
    while e:
        if e & 1:
            out = mod(dom, mul(dom, out, base), m)
        e >>= 1
        if e:
            base = mod(dom, mul(dom, base, base), m)
    return out


def squarefree_part(dom, f):
    """f / gcd(f, f'), monic.  Valid over characteristic-zero fields."""
    if not f:
        raise ZeroDivisionError("squarefree part of the zero polynomial")
    if dom.char != 0:
        raise ValueError("squarefree_part requires characteristic zero")
    g = gcd(dom, f, deriv(dom, f))
    q, r = divmod_(dom, f, g)
    assert not r
    return monic(dom, q)


def resultant(dom, f, g):
    """Resultant over a field via the Euclidean remainder sequence."""
    if not f or not g:
        return dom.zero()
    a, b = list(f), list(g)
    res = dom.one()
    sign_flip = False
    while True:
        da, db = degree(a), degree(b)
        if db == 0:
            res = dom.mul(res, dom.pow(b[0], da))
            break
        r = mod(dom, a, b)
        if not r:
            return dom.zero()
        dr = degree(r)
        res = dom.mul(res, dom.pow(lc(b), da - dr))
        if (da % 2) and (db % 2):
            sign_flip = not sign_flip
        a, b = b, r
    if sign_flip:
        res = dom.neg(res)
    return res


def discriminant(dom, f):
    """Discriminant of f over a field: (-1)^(d(d-1)/2) res(f, f') / lc(f)."""
    d = degree(f)
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(dom, f, deriv(dom, f))
    r = dom.div(r, lc(f))
    if (d * (d - 1) // 2) % 2:
        r = dom.neg(r)
    return r


def to_tuple(f):
    return tuple(f)


def from_ints(dom, coeffs):
    return trim(dom, [dom.from_int(c) for c in coeffs])
