"""Enveloping-algebra computations by spinning.

Spinning closes a linear span of matrices under multiplication and
under conjugation by a recorded generator list, using exact Gaussian
elimination with first-nonzero-coordinate pivoting so bases come out
deterministically.  Dimension is bounded by n^2, which also bounds the
nilpotency degree: a nil subalgebra of Mat(n) satisfies A^n = 0.

The closure tests here decide unipotency, abelianness and
unipotent-by-abelianness of the normal closure <N>^G from a normal
generating set N, without ever forming the (usually infinite) group.
"""

from .kernel.matrices import Echelon, Mat, nullspace


class AlgebraBasis:
    """Linearly independent matrices spanning a spun subspace of Mat(n).

    The span is closed under multiplication when mult_close is set and
    under conjugation by the recorded conjugator list.  add_seed keeps
    the closure invariant and reports whether the span grew, which lets
    consumers of relator streams stop early.
    """

    def __init__(self, dom, n, conjugators=(), unital=False,
                 mult_close=True):
        self.dom = dom
        self.n = n
        self.conjugators = [(g, g.inverse()) for g in conjugators]
        self.unital = unital
        self.mult_close = mult_close
        self.ech = Echelon(dom)
        self.mats = []
        if unital:
            self.add_seed(Mat.identity(dom, n))

    @property
    def dim(self):
        return len(self.mats)

    def contains(self, mat):
        return self.ech.contains(mat.flatten())

    def add_seed(self, mat):
        """Insert a matrix and re-close the span; True if the span grew."""
        before = self.dim
        queue = [mat]
        while queue:
            cand = queue.pop(0)
            if not self.ech.insert(cand.flatten()):
                continue
            self.mats.append(cand)
            if self.mult_close:
                for b in list(self.mats):
                    queue.append(cand.mul(b))
                    if b is not cand:
                        queue.append(b.mul(cand))
            for g, gi in self.conjugators:
                queue.append(gi.mul(cand).mul(g))
                queue.append(g.mul(cand).mul(gi))
        return self.dim > before

    def add_seeds(self, mats):
        grew = False
        for m in mats:
            if self.add_seed(m):
                grew = True
        return grew


def spin(dom, n, seed, conjugators=(), unital=False, mult_close=True):
    """Smallest span containing the seed (and 1 if unital), closed under
    products and conjugation by the given conjugators."""
    basis = AlgebraBasis(dom, n, conjugators, unital, mult_close)
    basis.add_seeds(seed)
    return basis


def span_product(dom, n, left, right):
    """Basis of span{a b : a in left, b in right}."""
    ech = Echelon(dom)
    out = []
    for a in left:
        for b in right:
            m = a.mul(b)
            if ech.insert(m.flatten()):
                out.append(m)
    return out


def is_nilpotent_span(dom, n, mats):
    """Whether the (non-unital) algebra spanned by mats is nilpotent.

    Uses at most n span multiplications: for a subalgebra of Mat(n),
    nilpotency is equivalent to the n-fold product span vanishing.
    """
    power = list(mats)
    for _ in range(n):
        if not power:
            return True
        power = span_product(dom, n, power, mats)
    return not power


def is_unipotent_closure(nmats, group):
    """Whether the normal closure of <nmats> in the group is unipotent.

    Spins {t - 1} with conjugation by the group generators; the closure
    group is unipotent exactly when that algebra is nilpotent.
    """
    dom, n = group.dom, group.n
    ident = Mat.identity(dom, n)
    seeds = [m.sub(ident) for m in nmats]
    basis = spin(dom, n, seeds, conjugators=group.gens, unital=False)
    return is_nilpotent_span(dom, n, basis.mats)


def commutators_vanish(dom, left, right):
    for a in left:
        for b in right:
            if a.mul(b) != b.mul(a):
                return False
    return True


def is_abelian_closure(nmats, group):
    """Whether the normal closure of <nmats> in the group is abelian.

    The spun span of the closure contains every group element of the
    closure, so vanishing of all ring commutators of the basis is
    exact, not just sufficient.
    """
    dom, n = group.dom, group.n
    basis = spin(dom, n, nmats, conjugators=group.gens, unital=True)
    return commutators_vanish(dom, basis.mats, basis.mats)


def commutator_ideal(basis):
    """Two-sided ideal generated by the ring commutators of a basis."""
    dom, n = basis.dom, basis.n
    ech = Echelon(dom)
    ideal = []
    queue = []
    for i, a in enumerate(basis.mats):
        for b in basis.mats[i + 1:]:
            queue.append(a.mul(b).sub(b.mul(a)))
    while queue:
        cand = queue.pop(0)
        if not ech.insert(cand.flatten()):
            continue
        ideal.append(cand)
        for b in basis.mats:
            queue.append(cand.mul(b))
            queue.append(b.mul(cand))
    return ideal


def is_uba_closure(nmats, group):
    """Whether the normal closure of <nmats> in the group is
    unipotent-by-abelian.

    Criterion: in the unital conjugation-closed algebra A of the
    closure, the two-sided ideal generated by all ring commutators is
    nilpotent.  Then A modulo its radical is commutative, so the group
    maps onto an abelian group with unipotent kernel; conversely a
    triangular form with abelian diagonal forces all commutators into
    the strictly upper triangular ideal.
    """
    dom, n = group.dom, group.n
    basis = spin(dom, n, nmats, conjugators=group.gens, unital=True)
    ideal = commutator_ideal(basis)
    return is_nilpotent_span(dom, n, ideal)


def radical(basis):
    """Basis of the Jacobson radical of a unital matrix algebra, char 0.

    Computed as the null space of the trace form (x, y) -> trace(xy)
    on the algebra; valid over characteristic-zero fields.
    """
    dom = basis.dom
    if dom.char != 0:
        raise ValueError("trace-form radical requires characteristic zero")
    if not basis.mult_close:
        raise ValueError("radical needs a multiplication-closed basis")
    k = basis.dim
    if k == 0:
        return []
    gram = []
    for a in basis.mats:
        row = []
        for b in basis.mats:
            row.append(a.mul(b).trace())
        gram.append(row)
    combos = nullspace(dom, gram, k)
    out = []
    for combo in combos:
        acc = Mat.zero(dom, basis.n)
        for c, m in zip(combo, basis.mats):
            if not dom.is_zero(c):
                acc = acc.add(m.scale(c))
        out.append(acc)
    return out
