"""Zariski density testing for subgroups of SL(n,Z) and Sp(n,Z).

Fast path: a subgroup surjecting onto the mod-p image for a prime
p > 3 is dense.  Deterministic path: a subgroup is dense iff it is
infinite and its conjugation action on the ambient Lie algebra
(trace-zero matrices for SL, dimension n^2 - 1; the symplectic algebra
of blocks ((A, B), (C, -A^T)) with B, C symmetric for Sp, dimension
(n^2 + n)/2) is absolutely irreducible.  Absolute irreducibility is
certified by the enveloping algebra of the action filling the full
matrix algebra, with proper invariant-subspace spins as a quick
reject.
"""

from ..decisions import is_finite
from ..errors import UnsupportedInput
from ..images import DEFAULT_CAPS
from ..kernel.groups import GeneratedGroup
from ..kernel.matrices import Echelon, Mat, solve_combination
from ..kernel.scalars import QQ
from .families import check_in_lattice
from .levels import subgroup_image_mod


def lie_algebra_basis(family):
    """Basis matrices of the ambient Lie algebra over Q."""
    n = family.n
    out = []
    if family.kind == "SL":
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append(_unit(n, i, j, 1))
        for i in range(n - 1):
            m = _unit(n, i, i, 1)
            m[i + 1][i + 1] = QQ.from_int(-1)
            out.append(m)
    else:
        s = family.s
        for i in range(s):
            for j in range(s):
                m = _unit(n, i, j, 1)
                m[s + j][s + i] = QQ.from_int(-1)
                out.append(m)
        for i in range(s):
            for j in range(i, s):
                m = _unit(n, i, s + j, 1)
                if i != j:
                    m[j][s + i] = QQ.from_int(1)
                out.append(m)
        for i in range(s):
            for j in range(i, s):
                m = _unit(n, s + i, j, 1)
                if i != j:
                    m[s + j][i] = QQ.from_int(1)
                out.append(m)
    return [Mat(QQ, rows) for rows in out]


def _unit(n, i, j, v):
    rows = [[QQ.zero() for _ in range(n)] for _ in range(n)]
    rows[i][j] = QQ.from_int(v)
    return rows


def adjoint_matrices(family, mats):
    """Matrices of X -> g X g^-1 on the Lie algebra, in the fixed basis."""
    basis = lie_algebra_basis(family)
    flat_basis = [b.flatten() for b in basis]
    out = []
    for g in mats:
        gq = g.map_entries(lambda c: QQ.from_int(int(c)), QQ)
        gi = gq.inverse()
        cols = []
        for b in basis:
            image = gq.mul(b).mul(gi)
            coords = solve_combination(QQ, flat_basis, image.flatten())
            if coords is None:
                raise UnsupportedInput(
                    "conjugation does not preserve the Lie algebra; "
                    "the generator is outside the family")
            cols.append(coords)
        d = len(basis)
        out.append(Mat(QQ, [[cols[j][i] for j in range(d)]
                            for i in range(d)]))
    return out


def _module_spins_full(ad_mats, dim):
    """Quick reject: the submodule spun from each coordinate vector."""
    for k in range(dim):
        seed = tuple(QQ.one() if i == k else QQ.zero() for i in range(dim))
        ech = Echelon(QQ)
        ech.insert(seed)
        queue = [seed]
        while queue:
            v = queue.pop(0)
            for a in ad_mats:
                w = a.apply(v)
                if ech.insert(w):
                    queue.append(w)
            if ech.rank == dim:
                break
        if ech.rank < dim:
            return False, k, ech.rank
    return True, None, None


def _enveloping_full(ad_mats, dim):
    """Burnside test: the algebra generated by the action is all of
    Mat(dim) iff the action is absolutely irreducible."""
    ech = Echelon(QQ)
    mats = []
    queue = [Mat.identity(QQ, dim)] + list(ad_mats)
    while queue:
        cand = queue.pop(0)
        if not ech.insert(cand.flatten()):
            continue
        mats.append(cand)
        for a in ad_mats:
            queue.append(cand.mul(a))
            queue.append(a.mul(cand))
        if ech.rank == dim * dim:
            return True
    return ech.rank == dim * dim


def is_dense(family, mats, caps=None, seed=0, trace=None):
    """Zariski density in the ambient algebraic group."""
    caps = caps or DEFAULT_CAPS
    check_in_lattice(family, mats)
    img5 = subgroup_image_mod(family, mats, 5, caps)
    if img5.order == family.order_mod(5):
        if trace is not None:
            trace["path"] = "mod-p surjection"
            trace["prime"] = 5
        return True
    group = GeneratedGroup(QQ, family.n,
                           [g.map_entries(lambda c: QQ.from_int(int(c)), QQ)
                            for g in mats])
    if is_finite(group, caps=caps, seed=seed):
        if trace is not None:
            trace["path"] = "finite group"
        return False
    ad = adjoint_matrices(family, mats)
    dim = len(lie_algebra_basis(family))
    full, bad_seed, rank = _module_spins_full(ad, dim)
    if not full:
        if trace is not None:
            trace["path"] = "adjoint"
            trace["proper_submodule_from"] = bad_seed
            trace["submodule_dim"] = rank
        return False
    verdict = _enveloping_full(ad, dim)
    if trace is not None:
        trace["path"] = "adjoint"
        trace["absolutely_irreducible"] = verdict
    return verdict
