"""SL(n,Z) and Sp(n,Z) for n > 2: generators, orders mod m, levels.

Elementary generator families: for SL, all transvections t_ij(m); for
Sp (n = 2s, form J = ((0, 1), (-1, 0)) in s x s blocks), the mixed
products t_{i,s+j}(m) t_{j,s+i}(m) and t_{s+i,j}(m) t_{s+j,i}(m) for
i < j together with the singles t_{i,s+i}(m), t_{s+i,i}(m).  At level
m = 1 these generate the full lattice.

Orders of the mod-m images:

  |SL(n,Z_m)| = m^(n^2-1) * prod_{p|m} prod_{k=2}^{n} (1 - p^-k)
  |Sp(n,Z_m)| = m^(s(2s+1)) * prod_{p|m} prod_{k=1}^{s} (1 - p^-2k)
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import UnsupportedInput
from ..kernel.matrices import Mat, transvection
from ..kernel.scalars import ZZ, Zmod


@dataclass(frozen=True)
class LatticeFamily:
    """Gamma_n = SL(n,Z) or Sp(n,Z), n > 2 (even for Sp)."""

    n: int
    kind: str  # "SL" | "Sp"

    def __post_init__(self):
        if self.kind not in ("SL", "Sp"):
            raise UnsupportedInput(f"unknown family {self.kind!r}")
        if self.n <= 2:
            raise UnsupportedInput("lattice machinery needs degree n > 2")
        if self.kind == "Sp" and self.n % 2:
            raise UnsupportedInput("Sp needs even degree")

    @property
    def s(self):
        return self.n // 2

    def form(self, dom=ZZ):
        """The symplectic form J = ((0, 1_s), (-1_s, 0))."""
        if self.kind != "Sp":
            raise UnsupportedInput("only Sp carries a symplectic form")
        s, z, o = self.s, dom.zero(), dom.one()
        rows = [[z] * self.n for _ in range(self.n)]
        for i in range(s):
            rows[i][s + i] = o
            rows[s + i][i] = dom.neg(o)
        return Mat(dom, rows)

    def contains(self, mat):
        """Membership of an integer matrix in the lattice."""
        if mat.n != self.n or mat.det() != 1:
            return False
        if self.kind == "Sp":
            j = self.form()
            return mat.mul(j).mul(mat.transpose()) == j
        return True

    def order_mod(self, m):
        """Exact order of the full congruence image mod m (m >= 2)."""
        if m < 2:
            raise UnsupportedInput("order mod m needs m >= 2")
        if self.kind == "SL":
            value = Fraction(m) ** (self.n * self.n - 1)
            for p in _prime_divisors(m):
                for k in range(2, self.n + 1):
                    value *= 1 - Fraction(1, p ** k)
        else:
            s = self.s
            value = Fraction(m) ** (s * (2 * s + 1))
            for p in _prime_divisors(m):
                for k in range(1, s + 1):
                    value *= 1 - Fraction(1, p ** (2 * k))
        assert value.denominator == 1
        return int(value)

    def describe(self):
        return {"family": self.kind, "n": self.n}


def _prime_divisors(m):
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def elementary_generators(family, m=1, dom=ZZ):
    """The elementary subgroup generators E_{n,m}; all are 1 mod m."""
    if m < 1:
        raise UnsupportedInput("level must be >= 1")
    n = family.n
    amt = dom.from_int(m)

    def t(i, j):  # 1-based transvection t_ij(m)
        return transvection(dom, n, i - 1, j - 1, amt)

    if family.kind == "SL":
        return [t(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
                if i != j]
    s = family.s
    out = []
    for i in range(1, s + 1):
        for j in range(i + 1, s + 1):
            out.append(t(i, s + j).mul(t(j, s + i)))
            out.append(t(s + i, j).mul(t(s + j, i)))
    for i in range(1, s + 1):
        out.append(t(i, s + i))
        out.append(t(s + i, i))
    return out


def gamma_generators(family, dom=ZZ):
    """Generators of the full lattice (the level-1 elementary family)."""
    return elementary_generators(family, 1, dom)


def el_level(mats):
    """The level invariant: gcd of all off-diagonal entries and diagonal
    differences across the generators; 0 exactly for scalar input."""
    acc = 0
    for m in mats:
        for i in range(m.n):
            for j in range(m.n):
                if i != j:
                    acc = gcd(acc, abs(int(m.rows[i][j])))
                    acc = gcd(acc, abs(int(m.rows[i][i] - m.rows[j][j])))
    return acc


def reduce_mats_mod(mats, m):
    """Entrywise reduction of integer matrices modulo m."""
    dom = Zmod(m)
    return [g.map_entries(lambda c: c % m, dom) for g in mats]


def check_in_lattice(family, mats):
    for g in mats:
        if not family.contains(g):
            raise UnsupportedInput(
                "a generator is outside the lattice (determinant or "
                "symplectic-form check failed)")
