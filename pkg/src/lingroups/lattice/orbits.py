"""The orbit-stabilizer problem for congruence subgroups of SL(n,Z).

Decision: nonzero integer vectors u, v lie in the same orbit of
Gamma_{n,m} exactly when their entries generate the same ideal aZ and
u = v mod am.  Witnesses are built from at most two generalized
transvections tau = 1 + c x y^T (y^T x = 0, m | c), each of which lies
in Gamma_{n,m} automatically:

  with z a Bezout covector of the unimodular part u' (z u' = 1) and
  K = (v' - u')/m, any delta orthogonal to z gives the one-step move
  u' -> u' + m delta via 1 + m delta z^T; delta is chosen so that a
  second covector z2 with z2 v' = 1 and z2 (delta - K) = 0 exists,
  and 1 + (v' - w) z2^T finishes the job.

Every produced witness is verified after construction; the decision
itself never depends on the constructor.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from ..errors import UnsupportedInput
from ..images import DEFAULT_CAPS, FiniteImage
from ..kernel.matrices import Mat, transvection
from ..kernel.scalars import ZZ, Zmod
from ..kernel.words import evaluate_word
from .families import reduce_mats_mod

_SEARCH_BOX = 3
_RANDOM_TRIES = 400
_RANDOM_BOX = 25


@dataclass
class OrbitWitness:
    """Outcome of an orbit decision, with a verified witness when positive."""

    decided: bool
    gcd: int
    witness: Mat = None
    word: tuple = None                     # word over the acting subgroup's
    factors: list = field(default_factory=list)  # generators, when available

    def describe(self):
        out = {"decided": self.decided, "gcd": self.gcd}
        if self.witness is not None:
            out["witness"] = [[int(c) for c in row]
                              for row in self.witness.rows]
        if self.word is not None:
            out["word"] = [list(l) for l in self.word]
        if self.factors:
            out["factors"] = self.factors
        return out


def vec_gcd(u):
    a = 0
    for c in u:
        a = gcd(a, abs(int(c)))
    return a


def ext_gcd_vector(v):
    """(g, z) with z . v = g = gcd(v) >= 0."""
    g, z = 0, [0] * len(v)
    for i, c in enumerate(v):
        c = int(c)
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            z[i] = 1 if c > 0 else -1
            continue
        gg, s, t = _ext_gcd(g, c)
        z = [s * x for x in z]
        z[i] = t
        g = gg
    return g, z


def _ext_gcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def kernel_basis(v):
    """Integer basis of the lattice orthogonal to v (gcd(v) arbitrary).

    Row-reduces the column v to g e1 by unimodular row operations; the
    remaining rows of the transform are the kernel basis.
    """
    n = len(v)
    u_rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    w = [int(c) for c in v]
    for i in range(1, n):
        if w[i] == 0:
            continue
        if w[0] == 0:
            w[0], w[i] = w[i], 0
            u_rows[0], u_rows[i] = u_rows[i], u_rows[0]
            continue
        g, s, t = _ext_gcd(w[0], w[i])
        a0, ai = w[0] // g, w[i] // g
        r0 = [s * x + t * y for x, y in zip(u_rows[0], u_rows[i])]
        ri = [-ai * x + a0 * y for x, y in zip(u_rows[0], u_rows[i])]
        u_rows[0], u_rows[i] = r0, ri
        w[0], w[i] = g, 0
    return u_rows[1:]


def _rank1_shear(dom, n, col, row, scale):
    """1 + scale * col row^T as an integer matrix."""
    rows = [[dom.one() if i == j else dom.zero() for j in range(n)]
            for i in range(n)]
    for i in range(n):
        ci = scale * int(col[i])
        if ci == 0:
            continue
        for j in range(n):
            if int(row[j]):
                rows[i][j] += ci * int(row[j])
    return Mat(dom, rows)


def _primitive(v):
    g = vec_gcd(v)
    return tuple(int(c) // g for c in v) if g else tuple(int(c) for c in v)


def _second_covector(vprime, q):
    """z2 with z2 . vprime = 1 and z2 . q = 0, or None."""
    if all(c == 0 for c in q):
        _, z2 = ext_gcd_vector(vprime)
        return z2
    qp = _primitive(q)
    rows = kernel_basis(qp)
    w = [sum(r[i] * int(vprime[i]) for i in range(len(vprime))) for r in rows]
    g, coeffs = ext_gcd_vector(w)
    if g != 1:
        return None
    n = len(vprime)
    z2 = [0] * n
    for c, r in zip(coeffs, rows):
        for i in range(n):
            z2[i] += c * r[i]
    return z2


def _delta_candidates(basis, k_vec, rng):
    dim = len(basis)
    yield tuple(0 for _ in k_vec)  # covers delta = 0 and the K-parallel case
    for radius in range(1, _SEARCH_BOX + 1):
        for coeffs in product(range(-radius, radius + 1), repeat=dim):
            if max((abs(c) for c in coeffs), default=0) != radius:
                continue
            yield tuple(sum(c * b[i] for c, b in zip(coeffs, basis))
                        for i in range(len(k_vec)))
    for _ in range(_RANDOM_TRIES):
        coeffs = [rng.randrange(-_RANDOM_BOX, _RANDOM_BOX + 1)
                  for _ in range(dim)]
        yield tuple(sum(c * b[i] for c, b in zip(coeffs, basis))
                    for i in range(len(k_vec)))


def _construct_witness(n, uprime, vprime, m, rng):
    """g in Gamma_{n,m} with g uprime = vprime (both unimodular, equal mod m)."""
    if tuple(uprime) == tuple(vprime):
        return Mat.identity(ZZ, n), []
    _, z = ext_gcd_vector(uprime)
    k_vec = tuple((int(v) - int(u)) // m for u, v in zip(uprime, vprime))
    if sum(zi * ki for zi, ki in zip(z, k_vec)) == 0:
        tau = _rank1_shear(ZZ, n, k_vec, z, m)
        return tau, [_factor(k_vec, z, m)]
    basis = kernel_basis(z)
    for delta in _delta_candidates(basis, k_vec, rng):
        q = tuple(d - k for d, k in zip(delta, k_vec))
        z2 = _second_covector(vprime, q)
        if z2 is None:
            continue
        tau1 = _rank1_shear(ZZ, n, delta, z, m)
        w_vec = tuple(int(u) + m * d for u, d in zip(uprime, delta))
        move2 = tuple(int(v) - wv for v, wv in zip(vprime, w_vec))
        assert all(c % m == 0 for c in move2)
        tau2 = _rank1_shear(ZZ, n, tuple(c // m for c in move2), z2, m)
        g = tau2.mul(tau1)
        if g.apply(tuple(int(c) for c in uprime)) == tuple(
                int(c) for c in vprime):
            return g, [_factor(delta, z, m),
                       _factor(tuple(c // m for c in move2), z2, m)]
    raise ArithmeticError("witness search failed")  # fallback exhausted


def _factor(col, row, scale):
    return {"col": [int(c) for c in col], "row": [int(c) for c in row],
            "scale": scale}


def orbit_gamma(family, u, v, m=1, seed=0, trace=None):
    """Decide g u = v for some g in Gamma_{n,m}; construct g when yes.

    Criterion: gcd(u) = gcd(v) = a and u = v mod am.  The witness is
    verified before being returned.
    """
    if family.kind != "SL":
        raise UnsupportedInput("orbit machinery is for the SL family")
    n = family.n
    u = tuple(int(c) for c in u)
    v = tuple(int(c) for c in v)
    if len(u) != n or len(v) != n:
        raise UnsupportedInput("vector length must match the degree")
    if not any(u) or not any(v):
        raise UnsupportedInput("orbit vectors must be nonzero")
    if m < 1:
        raise UnsupportedInput("the congruence level must be >= 1")
    a = vec_gcd(u)
    if a != vec_gcd(v):
        return OrbitWitness(False, a)
    am = a * m
    if any((x - y) % am for x, y in zip(u, v)):
        return OrbitWitness(False, a)
    uprime = tuple(c // a for c in u)
    vprime = tuple(c // a for c in v)
    rng = random.Random(seed ^ 0x0B17)
    g, factors = _construct_witness(n, uprime, vprime, m, rng)
    assert g.apply(u) == v
    assert g.det() == 1
    assert all((g.rows[i][j] - (1 if i == j else 0)) % m == 0
               for i in range(n) for j in range(n))
    if trace is not None:
        trace["gcd"] = a
    return OrbitWitness(True, a, witness=g, factors=factors)


def orbit_subgroup(desc, u, v, caps=None, seed=0, trace=None):
    """Orbit decision for a congruence-described subgroup.

    Splits as mod-M orbit plus Gamma_{n,M} orbit: sweep every h in the
    image with h u = v mod M (one transversal element times the full
    stabilizer of u mod M), lift h along its generator word, and patch
    with an orbit witness for Gamma_{n,M} carrying h u to v.
    """
    caps = caps or DEFAULT_CAPS
    fam = desc.family
    if fam.kind != "SL":
        raise UnsupportedInput("orbit machinery is for the SL family")
    n = fam.n
    u = tuple(int(c) for c in u)
    v = tuple(int(c) for c in v)
    if not any(u) or not any(v):
        raise UnsupportedInput("orbit vectors must be nonzero")
    a = vec_gcd(u)
    if a != vec_gcd(v):
        return OrbitWitness(False, a)
    if desc.level == 1:
        return orbit_gamma(fam, u, v, 1, seed, trace)
    m = desc.level
    dom = Zmod(m)
    ubar = tuple(c % m for c in u)
    vbar = tuple(c % m for c in v)
    gens_mod = reduce_mats_mod(desc.generators, m)
    rebased = FiniteImage(dom, n, gens_mod, action="all", caps=caps,
                          base_hint=ubar)
    orbit_map = rebased.hint_orbit()
    if vbar not in orbit_map:
        return OrbitWitness(False, a)
    words = rebased.words()
    int_gens = desc.generators
    int_invs = [g.inverse() for g in int_gens]
    ident = Mat.identity(ZZ, n)
    tbar = orbit_map[vbar]
    for sbar in rebased.hint_stabilizer_elements(caps.stabilizer):
        hbar = tbar.mul(sbar)
        word = words.get(hbar)
        if word is None:
            continue
        h = evaluate_word(int_gens, int_invs, word, ident)
        hu = h.apply(u)
        inner = orbit_gamma(fam, hu, v, m, seed)
        if inner.decided:
            g = inner.witness.mul(h)
            assert g.apply(u) == v
            if trace is not None:
                trace["stabilizer_order"] = rebased.stabilizer_order()
            return OrbitWitness(True, a, witness=g, word=word,
                                factors=inner.factors)
    return OrbitWitness(False, a)


def sl2_generators(dom=ZZ):
    return [Mat.from_int_rows(dom, [[0, -1], [1, 0]]),
            Mat.from_int_rows(dom, [[1, 1], [0, 1]])]


def stabilizer_gamma(family, u, seed=0, trace=None):
    """Generators of the stabilizer of u in the full lattice.

    With sigma carrying the canonical vector gcd(u) e1 to u, the
    stabilizer is generated by the sigma-conjugates of t_12(1), ...,
    t_1n(1) and diag(1, x) with x over generators of the degree-(n-1)
    lattice (the standard SL(2,Z) pair when n - 1 = 2).
    """
    if family.kind != "SL":
        raise UnsupportedInput("stabilizers are computed in the SL family")
    n = family.n
    u = tuple(int(c) for c in u)
    if not any(u):
        raise UnsupportedInput("the vector must be nonzero")
    a = vec_gcd(u)
    canonical = tuple([a] + [0] * (n - 1))
    sigma_witness = orbit_gamma(family, canonical, u, 1, seed)
    sigma = sigma_witness.witness
    sigma_inv = sigma.inverse()
    base = [transvection(ZZ, n, 0, j, 1) for j in range(1, n)]
    if n - 1 == 2:
        small = sl2_generators()
    else:
        small = [transvection(ZZ, n - 1, i, j, 1)
                 for i in range(n - 1) for j in range(n - 1) if i != j]
    for x in small:
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n - 1):
            for j in range(n - 1):
                rows[i + 1][j + 1] = int(x.rows[i][j])
        base.append(Mat.from_int_rows(ZZ, rows))
    gens = [sigma.mul(b).mul(sigma_inv) for b in base]
    for g in gens:
        assert g.apply(u) == u
    if trace is not None:
        trace["sigma"] = [[int(c) for c in row] for row in sigma.rows]
    return gens, sigma
