"""Multivariate polynomials as nested dense tuples, for function fields.

A polynomial in m variables over a base field is represented densely in
the last variable: the zero polynomial is () at every level, and a
nonzero m-variable polynomial is a tuple of (m-1)-variable payloads
whose last entry is nonzero.  MPolyRing(base, m) exposes the same
domain protocol as the scalar domains, so the univariate helpers in
polys.py can be reused level by level.

gcd uses the primitive pseudo-remainder sequence; exact division is by
classical long division and raises if the quotient is not exact.
"""

from . import polys
from ..errors import GroupFileError


class MPolyRing:
    """Domain of m-variable polynomials over a base field."""

    is_field = False

    def __init__(self, base, nvars):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.base = base
        self.nvars = nvars
        self.coeff = base if nvars == 1 else MPolyRing(base, nvars - 1)
        self.char = base.char

    # -- domain protocol ------------------------------------------------

    def zero(self):
        return ()

    def one(self):
        return self._wrap(self.coeff.one())

    def from_int(self, k):
        c = self.base.from_int(k)
        return self.constant(c)

    def constant(self, c):
        """Embed a base-field element."""
        if self.base.is_zero(c):
            return ()
        out = c
        ring = self
        chain = []
        while isinstance(ring, MPolyRing):
            chain.append(ring)
            ring = ring.coeff if isinstance(ring.coeff, MPolyRing) else None
        for _ in chain:
            out = (out,)
        return out

    def _wrap(self, c):
        return () if self._coeff_is_zero(c) else (c,)

    def _coeff_is_zero(self, c):
        if self.nvars == 1:
            return self.base.is_zero(c)
        return c == ()

    def is_zero(self, a):
        return a == ()

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return tuple(polys.add(self.coeff, list(a), list(b)))

    def sub(self, a, b):
        return tuple(polys.sub(self.coeff, list(a), list(b)))

    def neg(self, a):
        return tuple(polys.neg(self.coeff, list(a)))

    def mul(self, a, b):
        return tuple(polys.mul(self.coeff, list(a), list(b)))

    def pow(self, a, e):
        if e < 0:
            raise ValueError("negative power in a polynomial ring")
        return tuple(polys.pow_(self.coeff, list(a), e))

    def invert(self, a):
        # only unit constants are invertible
        if len(a) != 1:
            raise ZeroDivisionError("non-constant polynomial is not a unit")
        if self.nvars == 1:
            return (self.base.invert(a[0]),)
        return (self.coeff.invert(a[0]),)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    # -- structure ------------------------------------------------------

    def var(self, i):
        """The variable x_i, 1-based."""
        if not 1 <= i <= self.nvars:
            raise ValueError("variable index out of range")
        if i == self.nvars:
            return ((), self.coeff.one()) if self.nvars > 1 else (
                self.base.zero(), self.base.one())
        return self._wrap(self.coeff.var(i))

    def degree(self, a):
        """Degree in the outermost (last) variable; -1 for zero."""
        return len(a) - 1

    def lc_scalar(self, a):
        """The base-field coefficient of the recursively leading term."""
        if a == ():
            return self.base.zero()
        if self.nvars == 1:
            return a[-1]
        return self.coeff.lc_scalar(a[-1])

    def scale_scalar(self, c, a):
        if self.base.is_zero(c):
            return ()
        if self.nvars == 1:
            return tuple(polys.scale(self.base, c, list(a)))
        return tuple(self.coeff.scale_scalar(c, x) for x in a)

    def normalize_monic(self, a):
        """Scale so the recursively leading base coefficient is 1."""
        if a == ():
            return a
        return self.scale_scalar(self.base.invert(self.lc_scalar(a)), a)

    def evaluate(self, a, point, target, embed):
        """Evaluate at a tuple of target-field elements.

        embed maps base-field elements into the target field.
        """
        if a == ():
            return target.zero()
        acc = target.zero()
        t = point[self.nvars - 1]
        for c in reversed(a):
            if self.nvars == 1:
                cv = embed(c)
            else:
                cv = self.coeff.evaluate(c, point, target, embed)
            acc = target.add(target.mul(acc, t), cv)
        return acc

    # -- division and gcd -----------------------------------------------

    def coeff_div_exact(self, a, b):
        if self.nvars == 1:
            return self.base.div(a, b)
        return self.coeff.div_exact(a, b)

    def div_exact(self, f, g):
        """Exact quotient f / g; raises if the division leaves a remainder."""
        if g == ():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(f)
        dg = self.degree(g)
        q = [self.coeff.zero() if self.nvars > 1 else self.base.zero()] * max(
            0, len(r) - dg)
        while r:
            dr = len(r) - 1
            if dr < dg:
                break
            c = self.coeff_div_exact(r[-1], g[-1])
            q[dr - dg] = c
            for i in range(dg + 1):
                term = (self.base.mul(c, g[i]) if self.nvars == 1
                        else self.coeff.mul(c, g[i]))
                if self.nvars == 1:
                    r[dr - dg + i] = self.base.sub(r[dr - dg + i], term)
                else:
                    r[dr - dg + i] = self.coeff.sub(r[dr - dg + i], term)
            r = polys.trim(self.coeff if self.nvars > 1 else self.base, r)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return tuple(polys.trim(self.coeff if self.nvars > 1 else self.base, q))

    def _coeff_ops(self):
        return self.coeff if self.nvars > 1 else self.base

    def pseudo_rem(self, f, g):
        """prem(f, g): remainder of lc(g)^(df-dg+1) * f under division by g."""
        cd = self._coeff_ops()
        df, dg = self.degree(f), self.degree(g)
        if dg < 0:
            raise ZeroDivisionError("pseudo-division by zero")
        if df < dg:
            return f
        d = g[-1]
        r = list(f)
        e = df - dg + 1
        while r and len(r) - 1 >= dg:
            lr = r[-1]
            k = len(r) - 1 - dg
            r = [cd.mul(d, c) for c in r]
            for i in range(dg + 1):
                r[k + i] = cd.sub(r[k + i], cd.mul(lr, g[i]))
            r = polys.trim(cd, r)
            e -= 1
        for _ in range(e):
            r = [cd.mul(d, c) for c in r]
        return tuple(polys.trim(cd, r))

    def content(self, f):
        """gcd of the coefficients (an element of the coefficient ring)."""
        if self.nvars == 1:
            raise ValueError("content is only defined for nvars > 1")
        c = ()
        for a in f:
            c = self.coeff.gcd(c, a)
        return c

    def primitive(self, f):
        if f == ():
            return ()
        if self.nvars == 1:
            return self.normalize_monic(f)
        c = self.content(f)
        return tuple(self.coeff.div_exact(a, c) for a in f)

    def gcd(self, f, g):
        """gcd normalized to recursively-leading coefficient 1."""
        if f == ():
            return self.normalize_monic(g)
        if g == ():
            return self.normalize_monic(f)
        if self.nvars == 1:
            return tuple(polys.gcd(self.base, list(f), list(g)))
        cf, cg = self.content(f), self.content(g)
        c = self.coeff.gcd(cf, cg)
        a, b = self.primitive(f), self.primitive(g)
        if self.degree(a) < self.degree(b):
            a, b = b, a
        while True:
            r = self.pseudo_rem(a, b)
            if r == ():
                h = b
                break
            if self.degree(r) == 0:
                h = self.one()
                break
            a, b = b, self.primitive(r)
        h = self.primitive(h)
        out = tuple(self.coeff.mul(c, x) for x in h) if h != () else ()
        return self.normalize_monic(out)

    def lcm(self, f, g):
        if f == () or g == ():
            return ()
        return self.normalize_monic(self.div_exact(self.mul(f, g),
                                                   self.gcd(f, g)))

    # -- text ------------------------------------------------------------

    def var_names(self):
        if self.nvars == 1:
            return ["x"]
        return [f"x{i}" for i in range(1, self.nvars + 1)]

    def to_str(self, a):
        names = self.var_names()
        s = self._render(a, self.nvars, names)
        return s if s else "0"

    def _render(self, a, level, names):
        if a == ():
            return ""
        terms = []
        for k in range(len(a) - 1, -1, -1):
            c = a[k]
            if level == 1:
                if self.base.is_zero(c):
                    continue
                cs = self.base.to_str(c)
                terms.append(self._term(cs, names[0], k))
            else:
                ring = self._ring_at(level - 1)
                inner = ring._render(c, level - 1, names)
                if not inner:
                    continue
                if "+" in inner or "-" in inner[1:]:
                    inner = f"({inner})"
                terms.append(self._term(inner, names[level - 1], k))
        return "+".join(terms).replace("+-", "-")

    def _ring_at(self, level):
        ring = self
        while ring.nvars > level:
            ring = ring.coeff
        return ring

    @staticmethod
    def _term(cs, name, k):
        if k == 0:
            return cs
        v = name if k == 1 else f"{name}^{k}"
        if cs == "1":
            return v
        if cs == "-1":
            return f"-{v}"
        return f"{cs}*{v}"


def parse_int_list(text):
    """Parse a '[a,b,c]' integer list literal."""
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise GroupFileError(f"expected bracketed list, got {text!r}")
    body = t[1:-1].strip()
    if not body:
        return []
    try:
        return [int(p.strip()) for p in body.split(",")]
    except ValueError as exc:
        raise GroupFileError(f"bad integer list {text!r}") from exc
