"""Computing with congruence images over finite rings.

A FiniteImage holds the image generators acting on a vector domain
(nonzero vectors over a finite field, or the full module over a
residue ring Z/m) together with a stabilizer chain built by a
deterministic Schreier-Sims pass.  The chain gives exact orders and
membership tests.

Membership WORDS come from a lazily built breadth-first word table
over the Cayley graph rather than from the chain: sifting words
through a stabilizer chain inflates them exponentially, while BFS
words are short.  The table is capped by the presentation cap, which
is also the natural bound for relator streams.

Presentations come from a breadth-first spanning tree of the Cayley
graph: every non-tree edge (u, g) contributes the relator
word(u) * g * word(u g)^-1.  Relators are streamed so consumers can
stop as soon as their verdict is decided; replacing image generators
by their preimages in each relator yields a normal generating set of
the congruence kernel.
"""

import itertools
from dataclasses import dataclass

from .errors import CapExceeded
from .kernel.matrices import Mat
from .kernel.words import free_reduce, word_inv, word_mul


@dataclass
class Caps:
    """Size limits; CLI-configurable."""

    order: int = 10_000_000
    presentation: int = 100_000
    normalizer: int = 200_000
    stabilizer: int = 200_000
    points: int = 2_000_000


DEFAULT_CAPS = Caps()


class _Level:
    __slots__ = ("base", "transversal", "inv_transversal", "strong",
                 "upgens", "expanded", "pair_cursor")

    def __init__(self, base, identity):
        self.base = base
        self.transversal = {base: identity}
        self.inv_transversal = {base: identity}
        self.strong = []        # (mat, inv) fixing all earlier base points
        self.upgens = []        # strong generators of this and deeper levels
        self.expanded = {base: 0}    # point -> upgens applied in orbit BFS
        self.pair_cursor = {}        # point -> upgens consumed as Schreier pairs


class FiniteImage:
    """Image generators with a stabilizer chain on a finite vector domain."""

    def __init__(self, dom, n, gens, action, caps=None, base_hint=None):
        self.dom = dom
        self.n = n
        self.gens = list(gens)
        self.action = action
        self.caps = caps or DEFAULT_CAPS
        self.levels = []
        self.base_hint = base_hint
        self._identity = Mat.identity(dom, n)
        self._word_table = None
        self._check_domain_size()
        self._build()

    # -- construction ------------------------------------------------------

    def _check_domain_size(self):
        q = getattr(self.dom, "size", None) or self.dom.char
        if q ** self.n > self.caps.points:
            raise CapExceeded("action domain size", self.caps.points)

    def _points(self):
        elems = list(self.dom.elements())
        zero = tuple([self.dom.zero()] * self.n)
        for point in itertools.product(elems, repeat=self.n):
            if self.action == "nonzero" and point == zero:
                continue
            yield point

    def _first_moved(self, mat):
        for p in self._points():
            if mat.apply(p) != p:
                return p
        return None

    def _choose_base(self, level_idx, mover):
        if level_idx == 0 and self.base_hint is not None:
            if any(g.apply(self.base_hint) != self.base_hint
                   for g in self.gens):
                return self.base_hint
        if level_idx > 0 or self.base_hint is not None:
            return self._first_moved(mover)
        z, o = self.dom.zero(), self.dom.one()
        candidates = [tuple(o if j == i else z for j in range(self.n))
                      for i in range(self.n)]
        movers = [g for g in self.gens if not g.is_identity()]
        best, best_size = None, 1
        for cand in candidates:
            size = self._orbit_size(cand, movers)
            if size > best_size:
                best, best_size = cand, size
        return best if best is not None else self._first_moved(mover)

    @staticmethod
    def _orbit_size(point, mats):
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in mats:
                q = g.apply(p)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return len(seen)

    def _build(self):
        for g in self.gens:
            self._place(0, g)
        changed = True
        while changed:
            changed = False
            for i in range(len(self.levels)):
                if self._process_level(i):
                    changed = True
        self._order = 1
        for lvl in self.levels:
            self._order *= len(lvl.transversal)

    def _place(self, i, g):
        """Sift g through levels >= i; insert a genuinely new residue.

        A residue is inserted at level k only when it maps the base
        point outside the full current orbit, so every insertion
        strictly enlarges the chain.
        """
        cur, k = g, i
        while k < len(self.levels):
            lvl = self.levels[k]
            p = cur.apply(lvl.base)
            if p == lvl.base:
                k += 1
                continue
            if p not in lvl.transversal:
                self._extend_orbit(k)
            if p in lvl.transversal:
                cur = lvl.inv_transversal[p].mul(cur)
                k += 1
                continue
            self._register_strong(k, cur)
            return True
        if cur.is_identity():
            return False
        base = self._choose_base(len(self.levels), cur)
        self.levels.append(_Level(base, self._identity))
        self._register_strong(len(self.levels) - 1, cur)
        return True

    def _register_strong(self, k, mat):
        pair = (mat, mat.inverse())
        self.levels[k].strong.append(pair)
        for j in range(k + 1):
            self.levels[j].upgens.append(pair)
        self._extend_orbit(k)
        self._check_order_cap()

    def _process_level(self, i):
        """One Schreier pass at level i; True if any residue was inserted."""
        lvl = self.levels[i]
        self._extend_orbit(i)
        inserted = False
        for point in list(lvl.transversal.keys()):
            upto = len(lvl.upgens)
            start = lvl.pair_cursor.get(point, 0)
            if start >= upto:
                continue
            rep_p = lvl.transversal[point]
            for mat, _ in lvl.upgens[start:upto]:
                target = mat.apply(point)
                if target not in lvl.transversal:
                    self._extend_orbit(i)
                sg = lvl.inv_transversal[target].mul(mat).mul(rep_p)
                if sg.is_identity():
                    continue
                if self._place(i + 1, sg):
                    inserted = True
            lvl.pair_cursor[point] = upto
        return inserted

    def _check_order_cap(self):
        partial = 1
        for lvl in self.levels:
            partial *= len(lvl.transversal)
        if partial > self.caps.order:
            raise CapExceeded("image order", self.caps.order)

    def _extend_orbit(self, k):
        """Incremental orbit closure at level k under its current upgens."""
        lvl = self.levels[k]
        ngens = len(lvl.upgens)
        queue = [p for p, cnt in lvl.expanded.items() if cnt < ngens]
        while queue:
            p = queue.pop()
            start = lvl.expanded.get(p, 0)
            if start >= ngens:
                continue
            rep = lvl.transversal[p]
            for pair in lvl.upgens[start:ngens]:
                for m in pair:
                    q = m.apply(p)
                    if q not in lvl.transversal:
                        rep_q = m.mul(rep)
                        lvl.transversal[q] = rep_q
                        lvl.inv_transversal[q] = rep_q.inverse()
                        lvl.expanded[q] = 0
                        queue.append(q)
            lvl.expanded[p] = ngens

    def _sift(self, start, g):
        """Reduce g through levels >= start; returns (residue, stall level)."""
        cur = g
        for k in range(start, len(self.levels)):
            lvl = self.levels[k]
            p = cur.apply(lvl.base)
            if p == lvl.base:
                continue
            if p not in lvl.transversal:
                return cur, k
            cur = lvl.inv_transversal[p].mul(cur)
        return cur, len(self.levels)

    # -- queries -------------------------------------------------------------

    @property
    def order(self):
        return self._order

    def contains(self, x):
        if x.is_identity():
            return True
        residue, _ = self._sift(0, x)
        return residue.is_identity()

    def words(self):
        """BFS word table mat -> short word over the image generators."""
        if self._word_table is None:
            if self.order > self.caps.presentation:
                raise CapExceeded("membership word table",
                                  self.caps.presentation)
            table = {self._identity: ()}
            queue = [self._identity]
            while queue:
                u = queue.pop(0)
                wu = table[u]
                for j, g in enumerate(self.gens):
                    v = u.mul(g)
                    if v not in table:
                        table[v] = word_mul(wu, ((j, 1),))
                        queue.append(v)
            self._word_table = table
        return self._word_table

    def membership(self, x):
        """Word over the image generators evaluating to x, or None.

        A listed generator returns its own single-letter word; other
        members get a short breadth-first word.
        """
        if x.is_identity():
            return ()
        for idx, g in enumerate(self.gens):
            if x == g:
                return ((idx, 1),)
        if not self.contains(x):
            return None
        return self.words()[x]

    def elements(self, cap=None):
        """All element matrices, transversal-product order."""
        limit = cap if cap is not None else self.caps.presentation
        if self.order > limit:
            raise CapExceeded("image enumeration", limit)
        return self._elements_from(0)

    def _elements_from(self, level_idx):
        if level_idx >= len(self.levels):
            yield self._identity
            return
        lvl = self.levels[level_idx]
        for rest in self._elements_from(level_idx + 1):
            for rep in lvl.transversal.values():
                yield rep.mul(rest)

    def stabilizer_order(self):
        size = 1
        for lvl in self.levels[1:]:
            size *= len(lvl.transversal)
        return size

    def stabilizer_elements(self, cap):
        """Elements fixing the first base point."""
        if self.stabilizer_order() > cap:
            raise CapExceeded("stabilizer enumeration", cap)
        return self._elements_from(1)

    def transversal_element(self, point):
        """A chain element mapping the first base point to `point`."""
        if not self.levels:
            return None
        return self.levels[0].transversal.get(point)

    def first_base(self):
        return self.levels[0].base if self.levels else None

    # -- queries relative to a constructor base hint -----------------------

    def hint_orbit(self):
        """Orbit transversal of the base hint: point -> group element."""
        if self.base_hint is None:
            raise ValueError("image was built without a base hint")
        if self.levels and self.levels[0].base == self.base_hint:
            return self.levels[0].transversal
        return {self.base_hint: self._identity}

    def hint_stabilizer_elements(self, cap):
        """Elements fixing the base hint."""
        if self.base_hint is None:
            raise ValueError("image was built without a base hint")
        if self.levels and self.levels[0].base == self.base_hint:
            return self.stabilizer_elements(cap)
        if self.order > cap:
            raise CapExceeded("stabilizer enumeration", cap)
        return self._elements_from(0)


def image_from_matrices(dom, n, mats, action="all", caps=None):
    return FiniteImage(dom, n, mats, action, caps)


def build_image(group, cmap, caps=None):
    """Congruence image of a generated group under a reduction map."""
    target = cmap.target
    gens = cmap.reduce_group(group)
    action = "nonzero" if getattr(target, "is_field", False) else "all"
    return FiniteImage(target, group.n, gens, action, caps)


class RelatorStream:
    """Lazily produced relators of a Cayley-graph presentation."""

    def __init__(self, gen, group_order):
        self._gen = gen
        self.exhausted = False
        self.count = 0
        self.group_order = group_order

    def __iter__(self):
        return self

    def __next__(self):
        try:
            rel = next(self._gen)
        except StopIteration:
            self.exhausted = True
            raise
        self.count += 1
        return rel


def cayley_relators(image, caps=None):
    """Relator stream from a BFS spanning tree of the Cayley graph.

    Every emitted word evaluates to the identity in the image; once the
    stream is exhausted the emitted set presents the image group on its
    generators (at most |image| * (r - 1) + 1 relators).
    """
    caps = caps or image.caps
    if image.order > caps.presentation:
        raise CapExceeded("presentation order", caps.presentation)
    return RelatorStream(_relator_gen(image), image.order)


def _relator_gen(image):
    identity = Mat.identity(image.dom, image.n)
    words = {identity: ()}
    queue = [identity]
    while queue:
        u = queue.pop(0)
        wu = words[u]
        for j, g in enumerate(image.gens):
            v = u.mul(g)
            edge_word = word_mul(wu, ((j, 1),))
            if v not in words:
                words[v] = edge_word
                queue.append(v)
            else:
                rel = free_reduce(word_mul(edge_word, word_inv(words[v])))
                if rel:
                    yield rel


def normal_generators_stream(group, cmap, caps=None, image=None):
    """Lazily lift relators to kernel elements, deduplicating on the fly.

    The Cayley breadth-first search carries the source-group lift of
    every spanning-tree word, so each relator costs two source products
    and one inversion instead of a full word evaluation.
    """
    caps = caps or DEFAULT_CAPS
    img_gens = image.gens if image is not None else cmap.reduce_group(group)
    identity_img = Mat.identity(img_gens[0].dom if img_gens else cmap.target,
                                group.n)
    identity_src = group.identity()
    table = {identity_img: (identity_src, ())}
    queue = [identity_img]
    seen = {identity_src}
    while queue:
        u = queue.pop(0)
        u_src, u_word = table[u]
        for j, g in enumerate(img_gens):
            v = u.mul(g)
            if v not in table:
                if len(table) >= caps.presentation:
                    raise CapExceeded("presentation order",
                                      caps.presentation)
                table[v] = (u_src.mul(group.gens[j]),
                            word_mul(u_word, ((j, 1),)))
                queue.append(v)
            else:
                v_src, v_word = table[v]
                lifted = u_src.mul(group.gens[j]).mul(v_src.inverse())
                if lifted in seen:
                    continue
                seen.add(lifted)
                rel = free_reduce(word_mul(word_mul(u_word, ((j, 1),)),
                                           word_inv(v_word)))
                yield lifted, rel


def normal_generators(group, cmap, caps=None, image=None):
    """Normal generating set of the congruence kernel, with source words.

    Relators of the image presentation are rewritten over the source
    generators; identity lifts and exact duplicates are dropped.
    """
    return list(normal_generators_stream(group, cmap, caps, image))
