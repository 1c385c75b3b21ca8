"""Finitely generated matrix groups given by exact generator lists."""

import random

from .matrices import Mat
from .words import evaluate_word, word_inv
from ..errors import UnsupportedInput


class GeneratedGroup:
    """A subgroup of GL(n, F) given by generators; inverses are kept.

    The field descriptor is the scalar domain of the entries.  Inverses
    are computed on construction, so the entry ring of the group always
    contains the inverse entries as well (this matters when picking
    congruence reductions).
    """

    def __init__(self, dom, n, gens):
        self.dom = dom
        self.n = n
        self.gens = list(gens)
        for g in self.gens:
            if g.n != n:
                raise UnsupportedInput("generator degree mismatch")
        try:
            self.invs = [g.inverse() for g in self.gens]
        except ZeroDivisionError as exc:
            raise UnsupportedInput("a generator is not invertible") from exc

    @property
    def ngens(self):
        return len(self.gens)

    def identity(self):
        return Mat.identity(self.dom, self.n)

    def evaluate(self, w):
        return evaluate_word(self.gens, self.invs, w, self.identity())

    def random_word(self, rng, max_len):
        length = rng.randrange(1, max_len + 1)
        return tuple((rng.randrange(self.ngens), rng.choice((1, -1)))
                     for _ in range(length))

    def random_words(self, count, max_len, seed):
        rng = random.Random(seed)
        return [self.random_word(rng, max_len) for _ in range(count)]

    def conjugates(self, mats, depth=1):
        """Conjugates of the given matrices by short generator words."""
        out = list(mats)
        frontier = list(mats)
        for _ in range(depth):
            nxt = []
            for m in frontier:
                for g, gi in zip(self.gens, self.invs):
                    nxt.append(gi.mul(m).mul(g))
                    nxt.append(g.mul(m).mul(gi))
            out.extend(nxt)
            frontier = nxt
        return out


def bfs_enumerate(group, cap):
    """All elements of a finite group by breadth-first closure.

    Raises CapExceeded via the caller contract if more than `cap`
    distinct elements appear; intended as an independent oracle and for
    small finite groups only.
    """
    from ..errors import CapExceeded

    ident = group.identity()
    seen = {ident}
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for g in list(group.gens) + list(group.invs):
            nxt = cur.mul(g)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise CapExceeded("group enumeration", cap)
                seen.add(nxt)
                queue.append(nxt)
    return seen


def word_inverse(w):
    return word_inv(w)
