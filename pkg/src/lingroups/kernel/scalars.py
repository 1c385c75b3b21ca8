"""Exact scalar domains: Q, Z, Z/m, finite fields, number fields, function fields.

Every domain is a stateless object exposing zero/one/add/mul/... over
immutable, hashable payloads:

  Rationals      Fraction
  Integers       int
  Zmod(m)        int in [0, m)
  FiniteField    trimmed tuple of base payloads (polynomial in the generator)
  NumberField    trimmed tuple of Fractions (polynomial in the root)
  FunctionField  pair (numerator, denominator) of nested polynomial tuples,
                 coprime with denominator normalized to leading coefficient 1

No floating point is used anywhere.
"""

from fractions import Fraction

from . import polys
from .mpoly import MPolyRing, parse_int_list
from ..errors import GroupFileError


def is_prime(n):
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Domain:
    """Shared helpers; subclasses provide the core ring operations."""

    is_field = False
    char = 0

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return self.eq(a, self.zero())

    def is_one(self, a):
        return self.eq(a, self.one())

    def eq(self, a, b):
        return a == b

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.invert(a), -e
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return out

    def invert(self, a):  # pragma: no cover - overridden
        raise NotImplementedError


class Rationals(Domain):
    is_field = True
    char = 0
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GroupFileError(f"bad rational literal {s!r}") from exc

    def __repr__(self):
        return "Q"


class Integers(Domain):
    """The ring Z; used for lattice matrices where only units +-1 invert."""

    is_field = False
    char = 0
    name = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return k

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invert(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        try:
            return int(s.strip())
        except ValueError as exc:
            raise GroupFileError(f"bad integer literal {s!r}") from exc

    def __repr__(self):
        return "Z"


QQ = Rationals()
ZZ = Integers()


class Zmod(Domain):
    """Residue ring Z/mZ; a field exactly when m is prime."""

    def __init__(self, m):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m
        self.char = m
        self.is_field = is_prime(m)
        self.size = m

    def zero(self):
        return 0

    def one(self):
        return 1 % self.m

    def from_int(self, k):
        return k % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def invert(self, a):
        g, x, _ = _ext_gcd_int(a % self.m, self.m)
        if g != 1:
            raise ZeroDivisionError(f"{a} is not a unit mod {self.m}")
        return x % self.m

    def elements(self):
        return range(self.m)

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        try:
            return int(s.strip()) % self.m
        except ValueError as exc:
            raise GroupFileError(f"bad residue literal {s!r}") from exc

    def __repr__(self):
        return f"Z/{self.m}"

    def __eq__(self, other):
        return isinstance(other, Zmod) and other.m == self.m

    def __hash__(self):
        return hash(("Zmod", self.m))


def _ext_gcd_int(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class FiniteField(Domain):
    """Extension of a finite base field by a monic irreducible polynomial.

    Payloads are trimmed tuples of base payloads: () is zero and (c,)
    embeds the base element c.  Towers (extensions of extensions) are
    supported; char and the prime field come from the bottom of the tower.
    """

    is_field = True

    def __init__(self, base, modulus):
        modulus = tuple(modulus)
        if len(modulus) < 3:
            raise ValueError("extension degree must be >= 2")
        if not base.is_field:
            raise ValueError("base of a field extension must be a field")
        if not base.is_one(modulus[-1]):
            raise ValueError("modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.deg = len(modulus) - 1
        self.char = base.char
        self.size = base.size ** self.deg

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def from_int(self, k):
        c = self.base.from_int(k)
        return () if self.base.is_zero(c) else (c,)

    def embed(self, c):
        """Embed a base-field element."""
        return () if self.base.is_zero(c) else (c,)

    def generator(self):
        return (self.base.zero(), self.base.one())

    def add(self, a, b):
        return tuple(polys.add(self.base, list(a), list(b)))

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        prod = polys.mul(self.base, list(a), list(b))
        return tuple(polys.mod(self.base, prod, list(self.modulus)))

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        d, s, _ = polys.ext_gcd(self.base, list(a), list(self.modulus))
        if polys.degree(d) != 0:
            raise ArithmeticError("modulus is not irreducible")
        return tuple(polys.scale(self.base, self.base.invert(d[0]), s))

    def elements(self):
        """All field elements in a fixed order (base-size counter)."""
        base_list = list(self.base.elements())
        idx = [0] * self.deg
        for _ in range(self.size):
            yield tuple(polys.trim(self.base, [base_list[i] for i in idx]))
            for pos in range(self.deg):
                idx[pos] += 1
                if idx[pos] < len(base_list):
                    break
                idx[pos] = 0

    def to_str(self, a):
        return "[" + ",".join(self.base.to_str(c) for c in a) + "]"

    def parse(self, s):
        s = s.strip()
        if s.startswith("["):
            coeffs = [self.base.parse(p) for p in _split_list(s)]
            if len(coeffs) > self.deg:
                raise GroupFileError("field element coordinates too long")
            return tuple(polys.trim(self.base, coeffs))
        return self.from_int(int(s))

    def __repr__(self):
        return f"GF({self.size})"

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and other.base == self.base and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("FiniteField", self.base, self.modulus))


def _split_list(s):
    body = s.strip()[1:-1].strip()
    return [p for p in (q.strip() for q in body.split(","))] if body else []


class NumberField(Domain):
    """Q(alpha) for a root alpha of a monic integer polynomial.

    Payloads are trimmed tuples of Fractions giving the coordinates in
    the power basis 1, alpha, ..., alpha^(k-1).  Products are reduced
    modulo the defining polynomial immediately, which keeps coordinate
    growth in check.
    """

    is_field = True
    char = 0

    def __init__(self, minpoly_ints):
        mp = [int(c) for c in minpoly_ints]
        if len(mp) < 3:
            raise ValueError("number field degree must be >= 2")
        if mp[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.minpoly_ints = tuple(mp)
        self.minpoly = [Fraction(c) for c in mp]
        self.k = len(mp) - 1
        self._sanity_check()
        self._disc = None

    def _sanity_check(self):
        # cheap necessary conditions for irreducibility over Q
        d = polys.gcd(QQ, self.minpoly, polys.deriv(QQ, self.minpoly))
        if polys.degree(d) > 0:
            raise GroupFileError("defining polynomial has a repeated root")
        a0 = self.minpoly_ints[0]
        for r in _divisors_signed(a0):
            if polys.evaluate(QQ, self.minpoly, Fraction(r)) == 0:
                raise GroupFileError("defining polynomial has a rational root")

    def discriminant(self):
        if self._disc is None:
            self._disc = polys.discriminant(QQ, self.minpoly)
        return self._disc

    def zero(self):
        return ()

    def one(self):
        return (Fraction(1),)

    def from_int(self, k):
        return () if k == 0 else (Fraction(k),)

    def from_rational(self, q):
        q = Fraction(q)
        return () if q == 0 else (q,)

    def alpha(self):
        return (Fraction(0), Fraction(1))

    def add(self, a, b):
        return tuple(polys.add(QQ, list(a), list(b)))

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        prod = polys.mul(QQ, list(a), list(b))
        return tuple(polys.mod(QQ, prod, self.minpoly))

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        d, s, _ = polys.ext_gcd(QQ, list(a), self.minpoly)
        if polys.degree(d) != 0:
            raise GroupFileError("defining polynomial is reducible over Q")
        return tuple(polys.scale(QQ, QQ.invert(d[0]), s))

    def to_str(self, a):
        if len(a) <= 1:
            return str(a[0]) if a else "0"
        return "[" + ",".join(str(c) for c in a) + "]"

    def parse(self, s):
        s = s.strip()
        if s.startswith("["):
            coeffs = [QQ.parse(p) for p in _split_list(s)]
            if len(coeffs) > self.k:
                raise GroupFileError("number field coordinates too long")
            return tuple(polys.trim(QQ, coeffs))
        return self.from_rational(QQ.parse(s))

    def __repr__(self):
        return f"Q[t]/{list(self.minpoly_ints)}"

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and other.minpoly_ints == self.minpoly_ints)

    def __hash__(self):
        return hash(("NumberField", self.minpoly_ints))


def _divisors_signed(a0):
    a0 = abs(a0)
    if a0 == 0:
        return [0]
    out = []
    d = 1
    while d * d <= a0:
        if a0 % d == 0:
            out.extend([d, -d, a0 // d, -(a0 // d)])
        d += 1
    return sorted(set(out), key=abs)


class FunctionField(Domain):
    """Rational functions E(x_1, ..., x_m) over E = Q or a finite field.

    Payloads are pairs (num, den) of nested polynomial tuples with
    gcd(num, den) = 1 and den normalized so its recursively leading
    coefficient is 1.  Equality is then structural.
    """

    is_field = True

    def __init__(self, base, nvars=1):
        self.base = base
        self.nvars = nvars
        self.ring = MPolyRing(base, nvars)
        self.char = base.char

    def normalize(self, num, den):
        if den == ():
            raise ZeroDivisionError("zero denominator")
        if num == ():
            return ((), self.ring.one())
        g = self.ring.gcd(num, den)
        if self.ring.degree(g) >= 0 and g != self.ring.one():
            num = self.ring.div_exact(num, g)
            den = self.ring.div_exact(den, g)
        c = self.ring.lc_scalar(den)
        if not self.base.is_one(c):
            ci = self.base.invert(c)
            num = self.ring.scale_scalar(ci, num)
            den = self.ring.scale_scalar(ci, den)
        return (num, den)

    def zero(self):
        return ((), self.ring.one())

    def one(self):
        return (self.ring.one(), self.ring.one())

    def from_int(self, k):
        return (self.ring.from_int(k), self.ring.one())

    def from_poly(self, p):
        return self.normalize(p, self.ring.one())

    def from_base(self, c):
        return (self.ring.constant(c), self.ring.one())

    def var(self, i=1):
        return (self.ring.var(i), self.ring.one())

    def add(self, a, b):
        n1, d1 = a
        n2, d2 = b
        num = self.ring.add(self.ring.mul(n1, d2), self.ring.mul(n2, d1))
        return self.normalize(num, self.ring.mul(d1, d2))

    def neg(self, a):
        return (self.ring.neg(a[0]), a[1])

    def mul(self, a, b):
        return self.normalize(self.ring.mul(a[0], b[0]),
                              self.ring.mul(a[1], b[1]))

    def invert(self, a):
        if a[0] == ():
            raise ZeroDivisionError("inverse of 0 in a function field")
        return self.normalize(a[1], a[0])

    def is_zero(self, a):
        return a[0] == ()

    def numerator(self, a):
        return a[0]

    def denominator(self, a):
        return a[1]

    def evaluate(self, a, point, target, embed):
        """Evaluate at a point with coordinates in a target field."""
        den = self.ring.evaluate(a[1], point, target, embed)
        if target.is_zero(den):
            raise ZeroDivisionError("denominator vanishes at the point")
        num = self.ring.evaluate(a[0], point, target, embed)
        return target.mul(num, target.invert(den))

    def to_str(self, a):
        num, den = a
        ns = self.ring.to_str(num)
        if den == self.ring.one():
            return ns
        ds = self.ring.to_str(den)
        if "+" in ns or "-" in ns[1:] or "*" in ns:
            ns = f"({ns})"
        if "+" in ds or "-" in ds[1:] or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"{self.base!r}({','.join(self.ring.var_names())})"

    def __eq__(self, other):
        return (isinstance(other, FunctionField)
                and other.base == self.base and other.nvars == self.nvars)

    def __hash__(self):
        return hash(("FunctionField", self.base, self.nvars))


def lcm_int(a, b):
    from math import gcd as _g
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // _g(a, b)


__all__ = [
    "Domain", "Rationals", "Integers", "Zmod", "FiniteField", "NumberField",
    "FunctionField", "QQ", "ZZ", "is_prime", "lcm_int", "parse_int_list",
]
