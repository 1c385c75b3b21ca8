"""Square matrices over an exact scalar domain, plus field linear algebra.

Mat is immutable and hashable (rows are nested tuples of payloads), so
matrices can serve as dictionary keys during orbit and Cayley-graph
walks.  The characteristic polynomial uses the division-free Berkowitz
scheme and therefore works over residue rings as well as fields; the
inverse comes from the characteristic polynomial, which only ever
divides by the determinant.
"""


class Mat:
    __slots__ = ("dom", "n", "rows")

    def __init__(self, dom, rows):
        self.dom = dom
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("matrix is not square")

    @staticmethod
    def identity(dom, n):
        z, o = dom.zero(), dom.one()
        return Mat(dom, [[o if i == j else z for j in range(n)]
                         for i in range(n)])

    @staticmethod
    def zero(dom, n):
        z = dom.zero()
        return Mat(dom, [[z] * n for _ in range(n)])

    @staticmethod
    def from_int_rows(dom, rows):
        return Mat(dom, [[dom.from_int(c) for c in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.n == other.n
                and self.rows == other.rows)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(",".join(self.dom.to_str(c) for c in r)
                         for r in self.rows)
        return f"Mat[{body}]"

    def is_identity(self):
        dom = self.dom
        for i in range(self.n):
            for j in range(self.n):
                want = dom.one() if i == j else dom.zero()
                if not dom.eq(self.rows[i][j], want):
                    return False
        return True

    def mul(self, other):
        dom, n = self.dom, self.n
        a, b = self.rows, other.rows
        out = []
        for i in range(n):
            row = []
            ai = a[i]
            for j in range(n):
                acc = dom.zero()
                for k in range(n):
                    acc = dom.add(acc, dom.mul(ai[k], b[k][j]))
                row.append(acc)
            out.append(row)
        return Mat(dom, out)

    def add(self, other):
        dom = self.dom
        return Mat(dom, [[dom.add(a, b) for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.rows, other.rows)])

    def sub(self, other):
        dom = self.dom
        return Mat(dom, [[dom.sub(a, b) for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.rows, other.rows)])

    def neg(self):
        dom = self.dom
        return Mat(dom, [[dom.neg(a) for a in r] for r in self.rows])

    def scale(self, c):
        dom = self.dom
        return Mat(dom, [[dom.mul(c, a) for a in r] for r in self.rows])

    def transpose(self):
        return Mat(self.dom, list(zip(*self.rows)))

    def apply(self, vec):
        """Matrix times column vector (a tuple of payloads)."""
        dom = self.dom
        out = []
        for row in self.rows:
            acc = dom.zero()
            for a, v in zip(row, vec):
                acc = dom.add(acc, dom.mul(a, v))
            out.append(acc)
        return tuple(out)

    def charpoly(self):
        """Coefficients of det(xI - A), ascending, by Berkowitz."""
        dom, n, a = self.dom, self.n, self.rows
        q = [dom.one()]  # descending coefficients, leading first
        for k in range(n):
            s = [dom.one(), dom.neg(a[k][k])]
            if k:
                r_row = a[k][:k]
                v = [a[i][k] for i in range(k)]
                for _ in range(k):
                    s.append(dom.neg(self._dot(dom, r_row, v)))
                    v = [self._dot(dom, a[i][:k], v) for i in range(k)]
            new_q = []
            for i in range(k + 2):
                acc = dom.zero()
                for j in range(min(i, k) + 1):
                    if i - j < len(s):
                        acc = dom.add(acc, dom.mul(s[i - j], q[j]))
                new_q.append(acc)
            q = new_q
        return list(reversed(q))

    @staticmethod
    def _dot(dom, xs, ys):
        acc = dom.zero()
        for x, y in zip(xs, ys):
            acc = dom.add(acc, dom.mul(x, y))
        return acc

    def det(self):
        c0 = self.charpoly()[0]
        return c0 if self.n % 2 == 0 else self.dom.neg(c0)

    def trace(self):
        dom = self.dom
        acc = dom.zero()
        for i in range(self.n):
            acc = dom.add(acc, self.rows[i][i])
        return acc

    def inverse(self):
        """Inverse via the characteristic polynomial; divides only by det."""
        dom, n = self.dom, self.n
        c = self.charpoly()
        scale = dom.neg(dom.invert(c[0]))
        b = Mat.identity(dom, n)
        for i in range(n - 1, 0, -1):
            b = self.mul(b)
            if not dom.is_zero(c[i]):
                b = b.add(Mat.identity(dom, n).scale(c[i]))
        return b.scale(scale)

    def pow(self, e):
        if e < 0:
            return self.inverse().pow(-e)
        out = Mat.identity(self.dom, self.n)
        base = self
        while e:
            if e & 1:
                out = out.mul(base)
            e >>= 1
            if e:
                base = base.mul(base)
        return out

    def conjugate_by(self, g, g_inv=None):
        """g^-1 * self * g."""
        gi = g_inv if g_inv is not None else g.inverse()
        return gi.mul(self).mul(g)

    def map_entries(self, fn, new_dom):
        return Mat(new_dom, [[fn(a) for a in r] for r in self.rows])

    def flatten(self):
        return tuple(a for r in self.rows for a in r)

    @staticmethod
    def unflatten(dom, n, vec):
        return Mat(dom, [vec[i * n:(i + 1) * n] for i in range(n)])


def commutator(a, b):
    return a.inverse().mul(b.inverse()).mul(a).mul(b)


def transvection(dom, n, i, j, amount):
    """Identity plus `amount` in position (i, j), zero-based indices."""
    if i == j:
        raise ValueError("transvection needs i != j")
    m = [[dom.one() if r == c else dom.zero() for c in range(n)]
         for r in range(n)]
    m[i][j] = amount
    return Mat(dom, m)


class Echelon:
    """Row space accumulator over a field.

    Incoming vectors are fully reduced against stored rows; accepted
    rows keep their pivot normalized to 1 and are ordered by pivot
    position (first nonzero coordinate), which fixes the basis
    deterministically for a given insertion order.
    """

    def __init__(self, dom):
        self.dom = dom
        self.rows = []  # list of (pivot, vector-as-list)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        dom = self.dom
        vec = list(vec)
        for pivot, row in self.rows:
            c = vec[pivot]
            if dom.is_zero(c):
                continue
            for k in range(pivot, len(vec)):
                vec[k] = dom.sub(vec[k], dom.mul(c, row[k]))
        return vec

    def _pivot(self, vec):
        dom = self.dom
        for k, c in enumerate(vec):
            if not dom.is_zero(c):
                return k
        return None

    def insert(self, vec):
        """Add a vector; returns True if it enlarged the span."""
        dom = self.dom
        vec = self.reduce(vec)
        pivot = self._pivot(vec)
        if pivot is None:
            return False
        inv = dom.invert(vec[pivot])
        vec = [dom.mul(inv, c) for c in vec]
        self.rows.append((pivot, vec))
        self.rows.sort(key=lambda t: t[0])
        return True

    def contains(self, vec):
        return self._pivot(self.reduce(vec)) is None

    def basis_vectors(self):
        return [tuple(row) for _, row in self.rows]


def nullspace(dom, rows, ncols):
    """Basis of the right nullspace of the matrix given by `rows`."""
    rref = []
    pivots = []
    for row in rows:
        vec = list(row)
        for p, r in zip(pivots, rref):
            c = vec[p]
            if not dom.is_zero(c):
                for k in range(ncols):
                    vec[k] = dom.sub(vec[k], dom.mul(c, r[k]))
        pv = None
        for k in range(ncols):
            if not dom.is_zero(vec[k]):
                pv = k
                break
        if pv is None:
            continue
        inv = dom.invert(vec[pv])
        vec = [dom.mul(inv, c) for c in vec]
        for p, r in zip(pivots, rref):
            c = r[pv]
            if not dom.is_zero(c):
                for k in range(ncols):
                    r[k] = dom.sub(r[k], dom.mul(c, vec[k]))
        rref.append(vec)
        pivots.append(pv)
    basis = []
    free = [k for k in range(ncols) if k not in pivots]
    for fv in free:
        v = [dom.zero()] * ncols
        v[fv] = dom.one()
        for p, r in zip(pivots, rref):
            v[p] = dom.neg(r[fv])
        basis.append(tuple(v))
    return basis


def solve_combination(dom, vecs, target):
    """Coefficients c with sum c_i vecs[i] = target, or None.

    vecs must be linearly independent.
    """
    m = len(vecs)
    if m == 0:
        return [] if all(dom.is_zero(c) for c in target) else None
    width = len(target)
    done = []  # (pivot, row) with row = vec row + coordinate tail
    for i, v in enumerate(vecs):
        row = list(v) + [dom.zero()] * m
        row[width + i] = dom.one()
        for pivot, prow in done:
            c = row[pivot]
            if not dom.is_zero(c):
                for k in range(len(row)):
                    row[k] = dom.sub(row[k], dom.mul(c, prow[k]))
        pv = next((k for k in range(width) if not dom.is_zero(row[k])), None)
        if pv is None:
            raise ValueError("dependent vectors passed to solve_combination")
        inv = dom.invert(row[pv])
        row = [dom.mul(inv, c) for c in row]
        done.append((pv, row))
    tgt = list(target) + [dom.zero()] * m
    for pivot, prow in done:
        c = tgt[pivot]
        if not dom.is_zero(c):
            for k in range(len(tgt)):
                tgt[k] = dom.sub(tgt[k], dom.mul(c, prow[k]))
    if any(not dom.is_zero(c) for c in tgt[:width]):
        return None
    return [dom.neg(c) for c in tgt[width:]]


def min_poly(mat):
    """Monic minimal polynomial (ascending coefficients) over a field.

    If A^k is the first power dependent on 1, A, ..., A^(k-1) with
    A^k = sum c_i A^i, the minimal polynomial is x^k - sum c_i x^i.
    """
    dom = mat.dom
    powers = []
    ech = Echelon(dom)
    cur = Mat.identity(dom, mat.n)
    while True:
        flat = cur.flatten()
        if not ech.insert(flat):
            coeffs = solve_combination(dom, powers, flat)
            return [dom.neg(c) for c in coeffs] + [dom.one()]
        powers.append(flat)
        cur = cur.mul(mat)
