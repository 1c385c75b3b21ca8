"""Level, index, membership and density for dense subgroups of Gamma_n.

A congruence-described group is the pair (M, image mod M): it stands
for the full preimage of the image, a subgroup containing the
principal congruence subgroup of level M.  For a dense subgroup H the
level of its arithmetic closure is computed prime by prime: the
exponent of p is raised until two consecutive indices

    delta_H(p^a) = |Gamma_n mod p^a| / |H mod p^a|

agree, at which point they stay constant; the level is the product of
the stabilized prime powers.  All downstream queries (membership,
index, normal closure, subnormality, normalizer, orbits) reduce to the
finite image.
"""

from dataclasses import dataclass, field

from ..decisions import normal_closure_image
from ..errors import CapExceeded, UnsupportedInput
from ..images import DEFAULT_CAPS, FiniteImage, image_from_matrices
from ..kernel.matrices import Mat
from ..kernel.scalars import ZZ, Zmod, is_prime
from .families import (LatticeFamily, check_in_lattice, el_level,
                       gamma_generators, reduce_mats_mod)

DEFAULT_PRIME_BOUND = 50


@dataclass
class ArithGroupDesc:
    """(family, level M, image mod M) describing a group above Gamma_{n,M}."""

    family: LatticeFamily
    level: int
    image: FiniteImage = None          # None exactly when level == 1
    generators: list = field(default_factory=list)

    def describe(self):
        return {
            "family": self.family.kind,
            "n": self.family.n,
            "level": self.level,
            "image_order": self.image.order if self.image else 1,
        }

    def payload(self):
        """Exact text serialization (family, n, M, image generators)."""
        return {
            "family": self.family.kind,
            "n": self.family.n,
            "level": self.level,
            "image_generators": [[[int(c) for c in row] for row in g.rows]
                                 for g in (self.image.gens if self.image
                                           else [])],
        }

    @staticmethod
    def from_payload(payload, caps=None):
        fam = LatticeFamily(int(payload["n"]), payload["family"])
        level = int(payload["level"])
        if level == 1:
            return ArithGroupDesc(fam, 1)
        dom = Zmod(level)
        gens = [Mat.from_int_rows(dom, g) for g in payload["image_generators"]]
        img = image_from_matrices(dom, fam.n, gens, action="all", caps=caps)
        return ArithGroupDesc(fam, level, img)


def full_lattice_desc(family):
    return ArithGroupDesc(family, 1)


def subgroup_image_mod(family, mats, m, caps=None):
    """Stabilizer chain of the subgroup generated by mats, mod m."""
    return image_from_matrices(Zmod(m), family.n, reduce_mats_mod(mats, m),
                               action="all", caps=caps)


def delta(family, mats, m, caps=None):
    """Index |Gamma_n : Gamma_{n,m} H| = |Gamma_n mod m| / |H mod m|."""
    if m < 2:
        return 1
    img = subgroup_image_mod(family, mats, m, caps)
    total = family.order_mod(m)
    assert total % img.order == 0
    return total // img.order


def _prime_part(family, mats, p, caps, trace_rows=None):
    """Stabilize delta along powers of p; returns the p-part of the level."""
    a = 1
    d_a = delta(family, mats, p, caps)
    if trace_rows is not None:
        trace_rows.append([p, 1, d_a])
    while True:
        d_next = delta(family, mats, p ** (a + 1), caps)
        if trace_rows is not None:
            trace_rows.append([p, a + 1, d_next])
        if d_next == d_a:
            return 1 if d_a == 1 else p ** a
        a += 1
        d_a = d_next


def level_max_pcs(family, mats, primes, caps=None, trace=None):
    """Level of the maximal principal congruence subgroup of the closure.

    `primes` must contain every prime dividing the level (the output of
    primes_for_dense, plus 2 for SL in degrees 3 and 4 where the mod-2
    image can be full while the level is even).
    """
    caps = caps or DEFAULT_CAPS
    check_in_lattice(family, mats)
    rows = [] if trace is not None else None
    level = 1
    for p in sorted(set(int(q) for q in primes)):
        if not is_prime(p):
            raise UnsupportedInput(f"{p} is not prime")
        level *= _prime_part(family, mats, p, caps, rows)
    if trace is not None:
        trace["delta_table"] = rows
        trace["level"] = level
    return level


def level_search_primes(family, mats, bound=DEFAULT_PRIME_BOUND, caps=None):
    primes = set(primes_for_dense(family, mats, bound, caps))
    if family.kind == "SL" and family.n in (3, 4):
        primes.add(2)
    return sorted(primes)


def primes_for_dense(family, mats, bound=DEFAULT_PRIME_BOUND, caps=None):
    """Primes p <= bound whose mod-p image is proper.

    For a dense subgroup this is the full prime support of the level
    apart from the documented mod-2 exception; completeness holds only
    up to the bound.
    """
    caps = caps or DEFAULT_CAPS
    check_in_lattice(family, mats)
    out = []
    p = 2
    while p <= bound:
        if is_prime(p):
            img = subgroup_image_mod(family, mats, p, caps)
            if img.order != family.order_mod(p):
                out.append(p)
        p += 1
    return out


def describe(family, mats, bound=DEFAULT_PRIME_BOUND, caps=None, trace=None):
    """Congruence description (level, image mod level) of the closure of
    a dense subgroup; density is a caller contract."""
    caps = caps or DEFAULT_CAPS
    primes = level_search_primes(family, mats, bound, caps)
    if trace is not None:
        trace["primes"] = primes
    level = level_max_pcs(family, mats, primes, caps, trace)
    if level == 1:
        return ArithGroupDesc(family, 1, None, list(mats))
    image = subgroup_image_mod(family, mats, level, caps)
    return ArithGroupDesc(family, level, image, list(mats))


def membership(desc, mat):
    """g in H iff the reduction of g mod M lies in the image."""
    if not desc.family.contains(mat):
        raise UnsupportedInput("the element is not in the ambient lattice")
    if desc.level == 1:
        return True
    reduced = reduce_mats_mod([mat], desc.level)[0]
    return desc.image.contains(reduced)


def is_subgroup(desc, mats):
    return all(membership(desc, m) for m in mats)


def index_in_gamma(desc):
    if desc.level == 1:
        return 1
    total = desc.family.order_mod(desc.level)
    assert total % desc.image.order == 0
    return total // desc.image.order


def normal_closure_desc(family, mats, caps=None, trace=None):
    """Description of <H, Gamma_{n, el_level(H)}>, the normal closure.

    The image mod el_level is the normal closure of the reduced
    generators inside the full congruence image.
    """
    caps = caps or DEFAULT_CAPS
    check_in_lattice(family, mats)
    ell = el_level(mats)
    if trace is not None:
        trace["el_level"] = ell
    if ell == 0:
        raise UnsupportedInput(
            "scalar generators: the closure has no congruence level")
    if ell == 1:
        return ArithGroupDesc(family, 1, None, list(mats))
    dom = Zmod(ell)
    seeds = reduce_mats_mod(mats, ell)
    conj = reduce_mats_mod(gamma_generators(family), ell)
    closure = normal_closure_image(dom, family.n, seeds, conj, "all", caps)
    if closure is None:
        closure = image_from_matrices(dom, family.n,
                                      [Mat.identity(dom, family.n)],
                                      action="all", caps=caps)
    return ArithGroupDesc(family, ell, closure, list(mats))


def is_subnormal(desc, mats, exponent_bound=None, trace=None):
    """Subnormality of the described group: M divides el_level^e for a
    bounded exponent e."""
    ell = el_level(mats)
    if trace is not None:
        trace["el_level"] = ell
    if desc.level == 1:
        return True
    if ell == 0:
        return True
    bound = exponent_bound or desc.family.n ** 2
    power = 1
    for _ in range(bound + 1):
        if power % desc.level == 0:
            return True
        power *= ell
    return power % desc.level == 0


def is_normal(desc, mats, caps=None, trace=None):
    """Normality: subnormal and the image normalized by the full image."""
    caps = caps or DEFAULT_CAPS
    if not is_subnormal(desc, mats, trace=trace):
        return False
    if desc.level == 1:
        return True
    conj = reduce_mats_mod(gamma_generators(desc.family), desc.level)
    for c in conj:
        ci = c.inverse()
        for g in desc.image.gens:
            if not desc.image.contains(ci.mul(g).mul(c)):
                return False
    return True


def lattice_image_mod(family, m, caps=None):
    return subgroup_image_mod(family, gamma_generators(family), m, caps)


def normalizer_desc(desc, caps=None, trace=None):
    """Description of the normalizer: same level, image replaced by its
    normalizer in the full congruence image (by exhaustive conjugation)."""
    caps = caps or DEFAULT_CAPS
    if desc.level == 1:
        return desc
    fam = desc.family
    total = fam.order_mod(desc.level)
    if total > caps.normalizer:
        raise CapExceeded("normalizer enumeration", caps.normalizer)
    ambient = lattice_image_mod(fam, desc.level, caps)
    keep = []
    for g in ambient.elements(cap=caps.normalizer):
        gi = g.inverse()
        if all(desc.image.contains(gi.mul(h).mul(g))
               for h in desc.image.gens):
            keep.append(g)
    norm_img = image_from_matrices(Zmod(desc.level), fam.n, keep,
                                   action="all", caps=caps)
    if trace is not None:
        trace["normalizer_order"] = norm_img.order
    if norm_img.order == total:
        return ArithGroupDesc(fam, 1, None, desc.generators)
    return ArithGroupDesc(fam, desc.level, norm_img, desc.generators)
