"""Congruence reductions of matrix groups onto finite rings.

For a group over Q, a number field, or a rational function field, a
congruence map sends generator entries onto a finite field: reduction
modulo a prime, reduction of number-field coordinates modulo a chosen
irreducible factor of the defining polynomial, substitution of the
indeterminates, or substitution followed by reduction.

Maps carry two certification flags.  is_sw means the kernel of the map
on any group over the ring of definition has torsion only of
characteristic order (torsion-free in characteristic zero); is_w means
the kernel is unipotent-by-abelian whenever the group is
solvable-by-finite.  Selection always returns the smallest admissible
choice, so runs are reproducible; `avoid` and `skip` let callers
resample deterministically.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoAdmissibleMap, ReductionError, UnsupportedInput
from .kernel import factor as ffactor
from .kernel import polys
from .kernel.matrices import Mat
from .kernel.scalars import (QQ, FiniteField, FunctionField, NumberField,
                             Rationals, Zmod, lcm_int)

_PRIME_STREAM_BOUND = 100000


def _odd_primes():
    from .kernel.scalars import is_prime
    p = 3
    while p < _PRIME_STREAM_BOUND:
        if is_prime(p):
            yield p
        p += 2
    raise NoAdmissibleMap("prime search bound exhausted")  # pragma: no cover


@dataclass(frozen=True)
class RingOfDefinition:
    """Entry ring data of a generated group: the denominator bound mu.

    Every generator and inverse entry lies in (1/mu) times the integral
    part of the field; mu is an integer for Q and number fields and a
    polynomial (payload of the group's polynomial ring) for function
    fields.
    """

    group: object
    kind: str                      # "rational" | "number" | "ratfunc"
    mu_int: int = 1
    mu_poly: tuple = field(default=())

    def describe(self):
        if self.kind == "ratfunc":
            return {"kind": self.kind,
                    "mu": self.group.dom.ring.to_str(self.mu_poly)}
        return {"kind": self.kind, "mu": self.mu_int}


def ring_of_definition(group):
    dom = group.dom
    mats = list(group.gens) + list(group.invs)
    if isinstance(dom, Rationals):
        mu = 1
        for m in mats:
            for row in m.rows:
                for c in row:
                    mu = lcm_int(mu, c.denominator)
        return RingOfDefinition(group, "rational", mu_int=mu)
    if isinstance(dom, NumberField):
        mu = 1
        for m in mats:
            for row in m.rows:
                for c in row:
                    for coord in c:
                        mu = lcm_int(mu, coord.denominator)
        return RingOfDefinition(group, "number", mu_int=mu)
    if isinstance(dom, FunctionField):
        ring = dom.ring
        mu = ring.one()
        for m in mats:
            for row in m.rows:
                for c in row:
                    mu = ring.lcm(mu, dom.denominator(c))
        return RingOfDefinition(group, "ratfunc", mu_poly=mu)
    raise UnsupportedInput(f"no congruence theory for field {dom!r}")


@dataclass(frozen=True)
class CongruenceMap:
    """A reduction recipe onto a finite ring, with kernel certificates."""

    kind: str                 # phi1p | phi2p | phi3a | phi3ap
    source: object
    target: object
    p: int = 0
    alpha: tuple = ()
    factor_poly: tuple = ()   # chosen irreducible factor mod p (type II)
    is_sw: bool = False
    is_w: bool = False

    # -- scalar reduction -------------------------------------------------

    def reduce_scalar(self, x):
        if self.kind == "phi1p":
            return _frac_mod(x, self.p)
        if self.kind == "phi2p":
            return self._number_residue(x)
        if self.kind == "phi3a":
            return self._substitute(x)
        if self.kind == "phi3ap":
            return _frac_mod(self._substitute(x), self.p)
        raise UnsupportedInput(f"unknown map kind {self.kind}")

    def _number_residue(self, coords):
        p = self.p
        residues = [_frac_mod(c, p) for c in coords]
        if len(self.factor_poly) == 2:
            # linear factor t - r: evaluate the coordinates at r
            r = (-self.factor_poly[0]) % p
            acc = 0
            for c in reversed(residues):
                acc = (acc * r + c) % p
            return acc
        zp = Zmod(p)
        reduced = polys.mod(zp, polys.trim(zp, residues),
                            list(self.factor_poly))
        return tuple(reduced)

    def _substitute(self, x):
        src = self.source
        tgt = QQ if self.kind == "phi3ap" else self.target
        embed = _embedding(src.base, tgt)
        try:
            return src.evaluate(x, self.alpha, tgt, embed)
        except ZeroDivisionError as exc:
            raise ReductionError(
                "denominator vanishes at the substitution point") from exc

    def reduce_matrix(self, m):
        return Mat(self.target,
                   [[self.reduce_scalar(c) for c in row] for row in m.rows])

    def reduce_group(self, group):
        return [self.reduce_matrix(g) for g in group.gens]

    # -- text -------------------------------------------------------------

    def describe(self):
        out = {"kind": self.kind, "sw": self.is_sw, "w": self.is_w,
               "target": repr(self.target)}
        if self.p:
            out["p"] = self.p
        if self.alpha:
            src = self.source
            base = src.base if isinstance(src, FunctionField) else None
            if base is not None and self.kind == "phi3a":
                point_dom = self.target
                out["alpha"] = [point_dom.to_str(a) for a in self.alpha]
            else:
                out["alpha"] = [str(a) for a in self.alpha]
        if self.factor_poly:
            out["factor"] = list(self.factor_poly)
        return out


def _frac_mod(x, p):
    x = Fraction(x)
    den = x.denominator % p
    if den == 0:
        raise ReductionError(f"denominator divisible by {p}")
    g, inv, _ = _ext_gcd(den, p)
    return (x.numerator % p) * (inv % p) % p


def _ext_gcd(a, b):
    x0, x1 = 1, 0
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
    return a, x0, x1


def _embedding(base, target):
    if base == target or base is target:
        return lambda c: c
    if isinstance(target, FiniteField) and target.base == base:
        return target.embed
    if isinstance(base, Rationals) and isinstance(target, Rationals):
        return lambda c: c
    raise UnsupportedInput("no embedding between the given fields")


# -- selection -------------------------------------------------------------

def select_sw_map(ring, n, avoid=(), skip=0, pin=None):
    """Smallest admissible torsion-safe reduction, deterministic order."""
    return _select(ring, n, avoid, skip, pin, need_w=False)


def select_w_map(ring, n, avoid=(), skip=0, pin=None):
    """Smallest admissible map whose kernel is unipotent-by-abelian on
    solvable-by-finite groups; also torsion-safe, so is_w implies is_sw."""
    return _select(ring, n, avoid, skip, pin, need_w=True)


def _select(ring, n, avoid, skip, pin, need_w):
    avoid = set(avoid)
    if ring.kind == "rational":
        return _select_rational(ring, avoid, skip, pin)
    if ring.kind == "number":
        return _select_number(ring, n, avoid, skip, pin, need_w)
    if ring.kind == "ratfunc":
        dom = ring.group.dom
        if dom.char == 0:
            return _select_subst_char0(ring, avoid, skip, pin)
        return _select_subst_charp(ring, n, skip, pin, need_w)
    raise UnsupportedInput(f"no maps for ring kind {ring.kind}")


def _iter_admissible_primes(avoid, admissible):
    for p in _odd_primes():
        if p in avoid:
            continue
        if admissible(p):
            yield p


def _pick(stream, skip, pin, check=None):
    if pin is not None:
        if check is not None and not check(pin):
            raise NoAdmissibleMap(f"pinned choice {pin} is not admissible")
        return pin
    it = iter(stream)
    for _ in range(skip):
        next(it)
    return next(it)


def _select_rational(ring, avoid, skip, pin):
    mu = ring.mu_int

    def ok(p):
        return p % 2 == 1 and mu % p != 0 and p not in avoid

    p = _pick(_iter_admissible_primes(avoid, lambda q: mu % q != 0),
              skip, pin, check=ok)
    return CongruenceMap(kind="phi1p", source=ring.group.dom, target=Zmod(p),
                         p=p, is_sw=True, is_w=True)


def _select_number(ring, n, avoid, skip, pin, need_w):
    dom = ring.group.dom
    mu = ring.mu_int
    k = dom.k
    disc = dom.discriminant()

    def sw_ok(p):
        if mu % p == 0:
            return False
        if disc.numerator % p != 0:
            return True
        return p > n * k + 1

    # requiring the torsion-safe condition keeps is_w implying is_sw;
    # any prime passing it also passes the weaker unipotent-by-abelian rule
    admissible = sw_ok

    def ok(p):
        return p % 2 == 1 and p not in avoid and admissible(p)

    p = _pick(_iter_admissible_primes(avoid, admissible), skip, pin, check=ok)
    _, factors = ffactor.factor_mod_p([int(c) for c in dom.minpoly_ints], p)
    fac = tuple(factors[0][0])
    d = len(fac) - 1
    target = Zmod(p) if d == 1 else FiniteField(Zmod(p), fac)
    w_flag = (p > n) or (disc.numerator % p != 0)
    return CongruenceMap(kind="phi2p", source=dom, target=target, p=p,
                         factor_poly=fac, is_sw=True, is_w=w_flag)


def _char0_points(dom, mu):
    """Non-negative integer tuples avoiding the roots of mu, small first."""
    ring = dom.ring
    m = dom.nvars
    total = 0
    while True:
        for point in _tuples_summing(total, m):
            alpha = tuple(Fraction(t) for t in point)
            if QQ.is_zero(ring.evaluate(mu, alpha, QQ, lambda c: c)):
                continue
            yield alpha
        total += 1


def _tuples_summing(total, m):
    if m == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _tuples_summing(total - first, m - 1):
            yield (first,) + rest


def _select_subst_char0(ring, avoid, skip, pin):
    dom = ring.group.dom
    pin_alpha = pin.get("alpha") if isinstance(pin, dict) else None
    pin_p = pin.get("p") if isinstance(pin, dict) else pin
    if pin_alpha is not None:
        alpha = tuple(Fraction(a) for a in pin_alpha)
        if QQ.is_zero(dom.ring.evaluate(ring.mu_poly, alpha, QQ,
                                        lambda c: c)):
            raise NoAdmissibleMap("pinned point is a root of mu")
    else:
        alpha = next(_char0_points(dom, ring.mu_poly))
    mu2 = 1
    for m in list(ring.group.gens) + list(ring.group.invs):
        for row in m.rows:
            for c in row:
                val = dom.evaluate(c, alpha, QQ, lambda x: x)
                mu2 = lcm_int(mu2, Fraction(val).denominator)

    def ok(p):
        return p % 2 == 1 and mu2 % p != 0 and p not in avoid

    p = _pick(_iter_admissible_primes(avoid, lambda q: mu2 % q != 0),
              skip, pin_p, check=ok)
    return CongruenceMap(kind="phi3ap", source=dom, target=Zmod(p), p=p,
                         alpha=alpha, is_sw=True, is_w=True)


def _charp_points(dom, mu):
    """Substitution points over F_q, then F_(q^2), ... in a fixed order."""
    base = dom.base
    c = 1
    while True:
        fld = ffactor.extension_field(base, c)
        embed = _embedding(base, fld)
        for point in _point_tuples(fld, dom.nvars):
            if fld.is_zero(dom.ring.evaluate(mu, point, fld, embed)):
                continue
            yield fld, point
        c += 1


def _point_tuples(fld, m):
    elems = list(fld.elements())
    idx = [0] * m
    for _ in range(len(elems) ** m):
        yield tuple(elems[i] for i in idx)
        for pos in range(m):
            idx[pos] += 1
            if idx[pos] < len(elems):
                break
            idx[pos] = 0


def _select_subst_charp(ring, n, skip, pin, need_w):
    dom = ring.group.dom
    p = dom.char
    if need_w and p <= n:
        raise NoAdmissibleMap(
            f"no unipotent-by-abelian-kernel map: characteristic {p} <= "
            f"degree {n} and characteristic-zero reduction is unavailable")
    if isinstance(pin, dict) and pin.get("alpha") is not None:
        c = int(pin.get("ext_degree", 1))
        fld = ffactor.extension_field(dom.base, c)
        point = tuple(fld.parse(a) for a in pin["alpha"])
        embed = _embedding(dom.base, fld)
        if fld.is_zero(dom.ring.evaluate(ring.mu_poly, point, fld, embed)):
            raise NoAdmissibleMap("pinned point is a root of mu")
        fld_point = (fld, point)
    else:
        it = _charp_points(dom, ring.mu_poly)
        for _ in range(skip):
            next(it)
        fld_point = next(it)
    fld, point = fld_point
    return CongruenceMap(kind="phi3a", source=dom, target=fld, alpha=point,
                         is_sw=True, is_w=p > n)
