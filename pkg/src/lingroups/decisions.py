"""Structural decision procedures for finitely generated matrix groups.

Every decision follows the same scheme: pick a congruence map with the
right kernel certificate, lift relators of the finite image to a normal
generating set N of the congruence kernel, and reduce the question to
enveloping-algebra computations on N plus finite-group computations on
the image.  Relator streams are consumed lazily: a verdict that has
already become false stops the stream (all the span-based predicates
are monotone), while positive verdicts require exhausting it.

Each procedure accepts `skip` (take the k-th admissible congruence map
instead of the first; verdicts must not depend on it), `pin` (replay a
recorded map choice) and an optional `trace` dict that is filled with a
replayable certificate.
"""

import random
from dataclasses import dataclass, field

from .algebras import (AlgebraBasis, commutator_ideal, commutators_vanish,
                       is_nilpotent_span, is_unipotent_closure, radical, spin)
from .congruence import ring_of_definition, select_sw_map, select_w_map
from .errors import UnsupportedInput
from .images import (DEFAULT_CAPS, build_image, image_from_matrices,
                     normal_generators_stream)
from .kernel import polys
from .kernel.groups import GeneratedGroup
from .kernel.matrices import Echelon, Mat, min_poly
from .kernel.scalars import (FunctionField, NumberField, Rationals)

_FAST_WORDS = 20
_FAST_LEN = 40


# -- congruence map helpers -------------------------------------------------

def sw_map_for(group, skip=0, pin=None):
    return select_sw_map(ring_of_definition(group), group.n, skip=skip,
                         pin=pin)


def w_map_for(group, skip=0, pin=None):
    return select_w_map(ring_of_definition(group), group.n, skip=skip,
                        pin=pin)


def _note(trace, key, value):
    if trace is not None:
        trace[key] = value


def _note_map(trace, cmap):
    _note(trace, "map", cmap.describe())


def _note_kernel(trace, count, sample):
    if trace is not None:
        trace["kernel_generators"] = count
        trace["kernel_words_sample"] = [list(w) for w in sample[:20]]


# -- fast infinite-order certificates ----------------------------------------

def _is_pm_reciprocal(dom, cp):
    rev = list(reversed(cp))
    if all(dom.eq(a, b) for a, b in zip(cp, rev)):
        return True
    return all(dom.eq(a, dom.neg(b)) for a, b in zip(cp, rev))


def _binomial_bounded(cp, n):
    from math import comb
    for k, c in enumerate(cp):
        if abs(c) > comb(n, min(k, n)):
            return False
    return True


def _ratfunc_constant(dom, c):
    num, den = c
    return den == dom.ring.one() and len(num) <= 1 and all(
        len(t) <= 1 for t in _nested_lengths(num))


def _nested_lengths(payload):
    out = []
    stack = [payload]
    while stack:
        t = stack.pop()
        if isinstance(t, tuple) and t and isinstance(t[0], tuple):
            out.append(t)
            stack.extend(t)
    return out


def infinite_order_witness(group, seed=0, words=_FAST_WORDS,
                           max_len=_FAST_LEN):
    """A random word of provably infinite order, or None.

    One-sided: the checks are necessary conditions for finite order
    (torsion matrices in characteristic zero are semisimple with
    root-of-unity spectrum; in characteristic p their characteristic
    polynomials have constant coefficients), so a witness certifies
    that the group is infinite but absence proves nothing.
    """
    dom = group.dom
    rng = random.Random(seed ^ 0x51F7ED)
    rational = isinstance(dom, Rationals)
    for _ in range(words):
        w = group.random_word(rng, max_len)
        m = group.evaluate(w)
        if m.is_identity():
            continue
        cp = m.charpoly()
        if dom.char == 0:
            if rational and not _is_pm_reciprocal(dom, cp):
                return w
            if rational and not _binomial_bounded(cp, group.n):
                return w
            mp = min_poly(m)
            if polys.degree(polys.gcd(dom, mp, polys.deriv(dom, mp))) > 0:
                return w
        else:
            if any(not _ratfunc_constant(dom, c) for c in cp):
                return w
    return None


# -- finiteness ---------------------------------------------------------------

def is_finite(group, *, skip=0, pin=None, caps=None, seed=0, fast=True,
              trace=None):
    """Finiteness over any supported field.

    Characteristic zero: finite iff every lifted relator is trivial.
    Characteristic p: finite iff the normal closure of the lifted
    relators is unipotent (a finitely generated unipotent group in
    characteristic p has bounded exponent, hence is finite).
    """
    caps = caps or DEFAULT_CAPS
    if fast:
        w = infinite_order_witness(group, seed)
        if w is not None:
            _note(trace, "infinite_order_word", list(w))
            return False
    cmap = sw_map_for(group, skip, pin)
    _note_map(trace, cmap)
    if group.dom.char == 0:
        for _mat, rel in normal_generators_stream(group, cmap, caps):
            _note_kernel(trace, 1, [rel])
            return False
        _note_kernel(trace, 0, [])
        return True
    dom, n = group.dom, group.n
    ident = group.identity()
    basis = AlgebraBasis(dom, n, conjugators=group.gens, unital=False)
    count = 0
    sample = []
    for mat, rel in normal_generators_stream(group, cmap, caps):
        count += 1
        if len(sample) < 20:
            sample.append(rel)
        if basis.add_seed(mat.sub(ident)):
            if not is_nilpotent_span(dom, n, basis.mats):
                _note_kernel(trace, count, sample)
                return False
    _note_kernel(trace, count, sample)
    verdict = is_nilpotent_span(dom, n, basis.mats)
    if verdict and trace is not None:
        # informational cross-check: image orders at two substitution points
        try:
            other = sw_map_for(group, skip + 1)
            trace["order_at_points"] = [
                build_image(group, cmap, caps).order,
                build_image(group, other, caps).order,
            ]
        except Exception:
            pass
    return verdict


def order_of_finite(group, *, skip=0, pin=None, caps=None, trace=None):
    """Order of a finite group over a characteristic-zero field.

    The torsion-free-kernel map embeds the group in its image, so the
    order is the image order; raises UnsupportedInput on infinite input
    or positive characteristic.
    """
    caps = caps or DEFAULT_CAPS
    if group.dom.char != 0:
        raise UnsupportedInput(
            "order computation is restricted to characteristic zero")
    cmap = sw_map_for(group, skip, pin)
    _note_map(trace, cmap)
    image = build_image(group, cmap, caps)
    for _mat, _rel in normal_generators_stream(group, cmap, caps,
                                               image=image):
        raise UnsupportedInput("the group is infinite; it has no order")
    _note(trace, "image_order", image.order)
    return image.order


# -- the Tits alternative ------------------------------------------------------

def is_solvable_by_finite(group, *, skip=0, pin=None, caps=None, trace=None):
    """Virtual solvability; false means the group contains a non-abelian
    free subgroup."""
    caps = caps or DEFAULT_CAPS
    cmap = w_map_for(group, skip, pin)
    _note_map(trace, cmap)
    return _uba_verdict(group, cmap, caps, trace)


def _uba_verdict(group, cmap, caps, trace, image=None):
    dom, n = group.dom, group.n
    basis = AlgebraBasis(dom, n, conjugators=group.gens, unital=True)
    count = 0
    sample = []
    for mat, rel in normal_generators_stream(group, cmap, caps, image=image):
        count += 1
        if len(sample) < 20:
            sample.append(rel)
        if basis.add_seed(mat):
            if not is_nilpotent_span(dom, n, commutator_ideal(basis)):
                _note_kernel(trace, count, sample)
                _note(trace, "algebra_dim", basis.dim)
                return False
    _note_kernel(trace, count, sample)
    _note(trace, "algebra_dim", basis.dim)
    return is_nilpotent_span(dom, n, commutator_ideal(basis))


def is_solvable(group, *, skip=0, pin=None, caps=None, trace=None):
    """Solvability: the unipotent-by-abelian kernel test plus solvability
    of the finite image."""
    caps = caps or DEFAULT_CAPS
    cmap = w_map_for(group, skip, pin)
    _note_map(trace, cmap)
    image = build_image(group, cmap, caps)
    _note(trace, "image_order", image.order)
    if not _image_solvable(image, caps):
        return False
    return _uba_verdict(group, cmap, caps, trace, image=image)


def _dedup_nonidentity(mats):
    out, seen = [], set()
    for m in mats:
        if not m.is_identity() and m not in seen:
            out.append(m)
            seen.add(m)
    return out


def normal_closure_image(dom, n, seeds, conjugators, action, caps):
    """Image of the normal closure of <seeds> under the conjugators.

    Returns None for the trivial closure; otherwise a FiniteImage whose
    gens list generates the closure.
    """
    gens = _dedup_nonidentity(seeds)
    if not gens:
        return None
    conj = [(c, c.inverse()) for c in _dedup_nonidentity(conjugators)]
    img = image_from_matrices(dom, n, gens, action, caps)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            for c, ci in conj:
                for x in (ci.mul(g).mul(c), c.mul(g).mul(ci)):
                    if not img.contains(x):
                        gens.append(x)
                        img = image_from_matrices(dom, n, gens, action, caps)
                        changed = True
    return img


def _image_solvable(image, caps):
    dom, n, action = image.dom, image.n, image.action
    gens = _dedup_nonidentity(image.gens)
    order = image.order
    while order > 1:
        comms = []
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                comms.append(a.inverse().mul(b.inverse()).mul(a).mul(b))
        sub = normal_closure_image(dom, n, comms, gens, action, caps)
        if sub is None:
            return True
        if sub.order == order:
            return False
        gens = _dedup_nonidentity(sub.gens)
        order = sub.order
    return True


def _image_nilpotent(image, caps):
    dom, n, action = image.dom, image.n, image.action
    whole = _dedup_nonidentity(image.gens)
    if not whole:
        return True
    layer = whole
    prev = image.order
    while True:
        comms = []
        for a in layer:
            for b in whole:
                comms.append(a.inverse().mul(b.inverse()).mul(a).mul(b))
        sub = normal_closure_image(dom, n, comms, whole, action, caps)
        if sub is None:
            return True
        if sub.order == prev:
            # lower central series stabilized above the identity
            return False
        prev = sub.order
        layer = _dedup_nonidentity(sub.gens)


# -- Jordan decomposition ------------------------------------------------------

@dataclass
class JordanPair:
    """Commuting decomposition g = g_d g_u with g_d semisimple, g_u unipotent."""

    g_d: Mat
    g_u: Mat


def _poly_at(dom, coeffs, mat):
    acc = Mat.zero(dom, mat.n)
    ident = Mat.identity(dom, mat.n)
    power = ident
    for c in coeffs:
        if not dom.is_zero(c):
            acc = acc.add(power.scale(c))
        power = power.mul(mat)
    return acc


def jordan(mat):
    """Jordan decomposition over a characteristic-zero field.

    Newton iteration y <- y - p(y) p'(y)^-1 on the squarefree part p of
    the characteristic polynomial converges to the semisimple part in
    at most ceil(log2 n) + 1 steps; both parts are polynomials in the
    input, so they commute with it and with each other.
    """
    dom, n = mat.dom, mat.n
    if dom.char != 0:
        raise UnsupportedInput("Jordan decomposition needs characteristic 0")
    p = polys.squarefree_part(dom, mat.charpoly())
    dp = polys.deriv(dom, p)
    y = mat
    steps = max(1, n.bit_length() + 1)
    for _ in range(steps):
        py = _poly_at(dom, p, y)
        if all(dom.is_zero(c) for row in py.rows for c in row):
            break
        y = y.sub(py.mul(_poly_at(dom, dp, y).inverse()))
    py = _poly_at(dom, p, y)
    if not all(dom.is_zero(c) for row in py.rows for c in row):
        raise ArithmeticError("Newton iteration failed to converge")
    g_u = y.inverse().mul(mat)
    return JordanPair(g_d=y, g_u=g_u)


# -- virtual nilpotency and friends ---------------------------------------------

def _require_dedekind_char0(group, what):
    if not isinstance(group.dom, (Rationals, NumberField)):
        raise UnsupportedInput(
            f"{what} is supported over Q and number fields only")


def _require_char0(group, what):
    if group.dom.char != 0:
        raise UnsupportedInput(f"{what} needs characteristic zero")


def is_nilpotent_by_finite(group, *, skip=0, pin=None, caps=None, trace=None):
    """Virtual nilpotency over Q or a number field.

    Kernel elements are split into semisimple and unipotent parts; the
    group is nilpotent-by-finite iff the semisimple closure is abelian,
    the unipotent closure is unipotent, and the two closures commute
    elementwise.
    """
    _require_dedekind_char0(group, "nilpotent-by-finite testing")
    caps = caps or DEFAULT_CAPS
    dom, n = group.dom, group.n
    cmap = w_map_for(group, skip, pin)
    _note_map(trace, cmap)
    ident = group.identity()
    basis_d = AlgebraBasis(dom, n, conjugators=group.gens, unital=True)
    shift_u = AlgebraBasis(dom, n, conjugators=group.gens, unital=False)
    count = 0
    sample = []
    for mat, rel in normal_generators_stream(group, cmap, caps):
        count += 1
        if len(sample) < 20:
            sample.append(rel)
        pair = jordan(mat)
        grew = basis_d.add_seed(pair.g_d)
        grew = shift_u.add_seed(pair.g_u.sub(ident)) or grew
        if grew:
            if not commutators_vanish(dom, basis_d.mats, basis_d.mats):
                _note_kernel(trace, count, sample)
                return False
            if not is_nilpotent_span(dom, n, shift_u.mats):
                _note_kernel(trace, count, sample)
                return False
            if not commutators_vanish(dom, basis_d.mats, shift_u.mats):
                _note_kernel(trace, count, sample)
                return False
    _note_kernel(trace, count, sample)
    return (commutators_vanish(dom, basis_d.mats, basis_d.mats)
            and is_nilpotent_span(dom, n, shift_u.mats)
            and commutators_vanish(dom, basis_d.mats, shift_u.mats))


def is_abelian_by_finite(group, *, skip=0, pin=None, caps=None, trace=None):
    """Virtual abelianness over Q or a number field."""
    _require_dedekind_char0(group, "abelian-by-finite testing")
    caps = caps or DEFAULT_CAPS
    dom, n = group.dom, group.n
    cmap = w_map_for(group, skip, pin)
    _note_map(trace, cmap)
    basis = AlgebraBasis(dom, n, conjugators=group.gens, unital=True)
    count = 0
    sample = []
    for mat, rel in normal_generators_stream(group, cmap, caps):
        count += 1
        if len(sample) < 20:
            sample.append(rel)
        if basis.add_seed(mat):
            if not commutators_vanish(dom, basis.mats, basis.mats):
                _note_kernel(trace, count, sample)
                return False
    _note_kernel(trace, count, sample)
    return commutators_vanish(dom, basis.mats, basis.mats)


def is_central_by_finite(group, *, skip=0, pin=None, caps=None, trace=None):
    """Whether the center has finite index: the kernel of a torsion-free
    reduction must be centralized by the generators."""
    _require_char0(group, "central-by-finite testing")
    caps = caps or DEFAULT_CAPS
    cmap = sw_map_for(group, skip, pin)
    _note_map(trace, cmap)
    count = 0
    sample = []
    for mat, rel in normal_generators_stream(group, cmap, caps):
        count += 1
        if len(sample) < 20:
            sample.append(rel)
        for s in group.gens:
            if s.mul(mat) != mat.mul(s):
                _note_kernel(trace, count, sample)
                return False
    _note_kernel(trace, count, sample)
    return True


def is_nilpotent(group, *, skip=0, pin=None, caps=None, trace=None):
    """Nilpotency over a characteristic-zero field.

    Steps: split the generators into semisimple and unipotent parts;
    the unipotent parts must generate a unipotent group commuting with
    the semisimple parts; the finite image must be nilpotent; and the
    kernel of the semisimple-part group must be central in it.
    """
    _require_char0(group, "nilpotency testing")
    caps = caps or DEFAULT_CAPS
    dom, n = group.dom, group.n
    pairs = [jordan(g) for g in group.gens]
    s_d = [p.g_d for p in pairs]
    s_u = [p.g_u for p in pairs]
    u_gens = _dedup_nonidentity(s_u)
    if u_gens:
        k_group = GeneratedGroup(dom, n, u_gens)
        if not is_unipotent_closure(u_gens, k_group):
            _note(trace, "failed", "unipotent parts")
            return False
    for d in s_d:
        for u in s_u:
            if d.mul(u) != u.mul(d):
                _note(trace, "failed", "parts do not commute")
                return False
    cmap = sw_map_for(group, skip, pin)
    _note_map(trace, cmap)
    image = build_image(group, cmap, caps)
    _note(trace, "image_order", image.order)
    if not _image_nilpotent(image, caps):
        _note(trace, "failed", "finite image not nilpotent")
        return False
    d_gens = _dedup_nonidentity(s_d)
    if d_gens:
        h_group = GeneratedGroup(dom, n, d_gens)
        h_map = sw_map_for(h_group, skip)
        for mat, _rel in normal_generators_stream(h_group, h_map, caps):
            for s in h_group.gens:
                if s.mul(mat) != mat.mul(s):
                    _note(trace, "failed", "semisimple kernel not central")
                    return False
    return True


# -- complete reducibility -------------------------------------------------------

def _squarefree_minpoly(mat):
    dom = mat.dom
    mp = min_poly(mat)
    return polys.degree(polys.gcd(dom, mp, polys.deriv(dom, mp))) == 0


def is_completely_reducible(group, *, skip=0, pin=None, caps=None,
                            trace=None):
    """Whether the natural module is a direct sum of irreducibles.

    The kernel closure must be abelian with every spun basis element
    semisimple (squarefree minimal polynomial); commuting semisimple
    elements are simultaneously diagonalizable, which makes the
    criterion exact.
    """
    _require_char0(group, "complete reducibility testing")
    caps = caps or DEFAULT_CAPS
    dom, n = group.dom, group.n
    cmap = w_map_for(group, skip, pin)
    _note_map(trace, cmap)
    basis = AlgebraBasis(dom, n, conjugators=group.gens, unital=True)
    count = 0
    for mat, _rel in normal_generators_stream(group, cmap, caps):
        count += 1
        if basis.add_seed(mat):
            if not commutators_vanish(dom, basis.mats, basis.mats):
                _note_kernel(trace, count, [])
                return False
    _note_kernel(trace, count, [])
    if not commutators_vanish(dom, basis.mats, basis.mats):
        return False
    return all(_squarefree_minpoly(m) for m in basis.mats)


@dataclass
class CRDecomposition:
    """Block upper triangular form with completely reducible diagonal."""

    change: Mat
    block_sizes: list
    diagonal_generators: list
    flag_dims: list = field(default_factory=list)
    radical_dim: int = 0
    has_radical_generators: bool = False


def cr_part(group, *, caps=None, trace=None):
    """Projection onto the completely reducible part.

    Conjugates the group to block upper triangular form along the flag
    V > JV > J^2 V > ... (J the radical of the enveloping algebra) and
    returns the blockwise-diagonal projections of the generators.
    """
    _require_char0(group, "the completely reducible part")
    dom, n = group.dom, group.n
    algebra = spin(dom, n, group.gens, unital=True)
    rad = radical(algebra)
    _note(trace, "algebra_dim", algebra.dim)
    _note(trace, "radical_dim", len(rad))
    spaces = [_standard_columns(dom, n)]
    if rad:
        while True:
            nxt = _apply_space(dom, rad, spaces[-1])
            if not nxt:
                break
            spaces.append(nxt)
    # columns ordered deepest flag space first give block upper triangular
    cols = []
    sizes = []
    for space in reversed(spaces):
        ech = Echelon(dom)
        for v in cols:
            ech.insert(v)
        fresh = [v for v in space if ech.insert(v)]
        cols.extend(fresh)
        if fresh:
            sizes.append(len(fresh))
    change = Mat(dom, [[cols[j][i] for j in range(n)] for i in range(n)])
    change_inv = change.inverse()
    conj = [change_inv.mul(g).mul(change) for g in group.gens]
    diag = [_block_diagonal(dom, m, sizes) for m in conj]
    _note(trace, "block_sizes", sizes)
    return CRDecomposition(change=change, block_sizes=sizes,
                           diagonal_generators=diag,
                           flag_dims=[len(s) for s in spaces],
                           radical_dim=len(rad))


def _standard_columns(dom, n):
    z, o = dom.zero(), dom.one()
    return [tuple(o if i == j else z for i in range(n)) for j in range(n)]


def _apply_space(dom, mats, basis_vectors):
    ech = Echelon(dom)
    out = []
    for m in mats:
        for v in basis_vectors:
            w = m.apply(v)
            if ech.insert(w):
                out.append(w)
    return out


def _block_diagonal(dom, mat, sizes):
    z = dom.zero()
    rows = [[z] * mat.n for _ in range(mat.n)]
    offset = 0
    for s in sizes:
        for i in range(offset, offset + s):
            for j in range(offset, offset + s):
                rows[i][j] = mat.rows[i][j]
        offset += s
    return Mat(dom, rows)


# -- integrality -------------------------------------------------------------------

def is_integral_sf(group, *, skip=0, pin=None, caps=None, trace=None):
    """Whether a solvable-by-finite subgroup of GL(n, Q) conjugates into
    GL(n, Z): every lifted kernel generator must have an integer
    characteristic polynomial and determinant +-1."""
    if not isinstance(group.dom, Rationals):
        raise UnsupportedInput("integrality testing works over Q")
    caps = caps or DEFAULT_CAPS
    cmap = w_map_for(group, skip, pin)
    _note_map(trace, cmap)
    count = 0
    sample = []
    for mat, rel in normal_generators_stream(group, cmap, caps):
        count += 1
        if len(sample) < 20:
            sample.append(rel)
        cp = mat.charpoly()
        if any(c.denominator != 1 for c in cp):
            _note_kernel(trace, count, sample)
            return False
        det = mat.det()
        if det not in (1, -1):
            _note_kernel(trace, count, sample)
            return False
    _note_kernel(trace, count, sample)
    return True
