"""Exact dense linear algebra over the coefficient rings.

Matrices are tuples of tuples (rows); vectors are tuples.  Everything is
parameterized by a ring descriptor; inversion and echelon construction
require a field (``ring.is_field``).

The incremental :class:`EchelonBasis` also remembers how each stored row
decomposes over the *original* inserted vectors, which is what the automaton
minimization needs to rewrite transition matrices in the new coordinates.
"""

from __future__ import annotations

__all__ = [
    "mat",
    "zeros",
    "identity",
    "transpose",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_mul",
    "mat_vec",
    "vec_mat",
    "dot",
    "kron",
    "block_diag",
    "invert_matrix",
    "left_kernel",
    "EchelonBasis",
]


def mat(rows):
    return tuple(tuple(r) for r in rows)


def zeros(ring, m, n):
    z = ring.zero
    return tuple(tuple(z for _ in range(n)) for _ in range(m))


def identity(ring, n):
    z, o = ring.zero, ring.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a)) if a else ()


def mat_add(ring, a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(ring, a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(ring, c, a):
    return tuple(tuple(c * x for x in r) for r in a)


def mat_mul(ring, a, b):
    if not a or not b:
        return ()
    bt = transpose(b)
    z = ring.zero
    out = []
    for ra in a:
        row = []
        for cb in bt:
            acc = z
            for x, y in zip(ra, cb):
                if x != z and y != z:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(ring, a, v):
    z = ring.zero
    out = []
    for r in a:
        acc = z
        for x, y in zip(r, v):
            if x != z and y != z:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def vec_mat(ring, v, a):
    return mat_vec(ring, transpose(a), v)


def dot(ring, u, v):
    acc = ring.zero
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def kron(ring, a, b):
    if not a or not b:
        return ()
    out = []
    for ra in a:
        for rb in b:
            row = []
            for x in ra:
                row.extend(x * y for y in rb)
            out.append(tuple(row))
    return tuple(out)


def block_diag(ring, a, b):
    ma, na = len(a), len(a[0]) if a else 0
    mb, nb = len(b), len(b[0]) if b else 0
    z = ring.zero
    out = []
    for i in range(ma):
        out.append(tuple(a[i]) + tuple(z for _ in range(nb)))
    for i in range(mb):
        out.append(tuple(z for _ in range(na)) + tuple(b[i]))
    return tuple(out)


def _complexity(x):
    # pivot preference: small objects first; works for Fraction, Poly, RatFun
    num = getattr(x, "num", None)
    if num is not None and hasattr(num, "degree"):
        return num.degree + x.den.degree
    if hasattr(x, "degree"):
        return x.degree
    n = getattr(x, "numerator", 0)
    d = getattr(x, "denominator", 1)
    return (abs(n).bit_length() if n else 0) + abs(d).bit_length()


class EchelonBasis:
    """Growing row space over a field with coordinate tracking.

    ``insert(v)`` returns None when v was already in the span, else the new
    row index.  ``coordinates(v)`` expresses v over the inserted originals.
    """

    def __init__(self, ring, width):
        if not ring.is_field:
            raise ValueError("echelon construction needs a field")
        self.ring = ring
        self.width = width
        self.rows = []  # reduced rows, pivot entry 1
        self.pivots = []  # pivot column per row
        self.combos = []  # rows[i] = sum combos[i][j] * originals[j]
        self.originals = []

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, v):
        ring = self.ring
        v = list(v)
        coeffs = [ring.zero] * len(self.rows)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = v[p]
            if c != ring.zero:
                coeffs[i] = c
                for j in range(self.width):
                    if row[j] != ring.zero:
                        v[j] = v[j] - c * row[j]
        return v, coeffs

    def coordinates(self, v):
        """Coefficients over the inserted originals, or None if outside the span."""
        ring = self.ring
        v, coeffs = self._reduce(v)
        if any(c != ring.zero for c in v):
            return None
        out = [ring.zero] * len(self.originals)
        for c, combo in zip(coeffs, self.combos):
            if c != ring.zero:
                for j, t in enumerate(combo):
                    if t != ring.zero:
                        out[j] = out[j] + c * t
        return tuple(out)

    def contains(self, v):
        v, _ = self._reduce(v)
        return all(c == self.ring.zero for c in v)

    def insert(self, v):
        ring = self.ring
        original = tuple(v)
        red, coeffs = self._reduce(v)
        nonzero = [j for j in range(self.width) if red[j] != ring.zero]
        if not nonzero:
            return None
        pivot = min(nonzero, key=lambda j: (_complexity(red[j]), j))
        inv = ring.invert(red[pivot])
        red = [inv * c for c in red]
        combo = [ring.zero] * len(self.originals) + [inv]
        for c, old in zip(coeffs, self.combos):
            if c != ring.zero:
                s = inv * c
                for j, t in enumerate(old):
                    if t != ring.zero:
                        combo[j] = combo[j] - s * t
        self.originals.append(original)
        # back-eliminate the new pivot from stored rows
        for i, row in enumerate(self.rows):
            c = row[pivot]
            if c != ring.zero:
                self.rows[i] = [a - c * b for a, b in zip(row, red)]
                old = self.combos[i]
                merged = list(old) + [ring.zero] * (len(combo) - len(old))
                for j, t in enumerate(combo):
                    if t != ring.zero:
                        merged[j] = merged[j] - c * t
                self.combos[i] = merged
        for i in range(len(self.combos)):
            if len(self.combos[i]) < len(self.originals):
                self.combos[i] = list(self.combos[i]) + [ring.zero] * (
                    len(self.originals) - len(self.combos[i])
                )
        self.rows.append(red)
        self.pivots.append(pivot)
        self.combos.append(combo)
        return len(self.rows) - 1


def invert_matrix(ring, a):
    """Inverse over a field; raises ValueError when singular."""
    n = len(a)
    if not ring.is_field:
        raise ValueError("matrix inversion needs a field")
    aug = [list(row) + [ring.one if i == j else ring.zero for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = None
        best = None
        for r in range(col, n):
            c = aug[r][col]
            if c != ring.zero:
                key = _complexity(c)
                if best is None or key < best:
                    best, pivot = key, r
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ring.invert(aug[col][col])
        aug[col] = [inv * x for x in aug[col]]
        for r in range(n):
            if r != col:
                c = aug[r][col]
                if c != ring.zero:
                    aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def left_kernel(ring, a):
    """Basis of row vectors v with v.a = 0, over a field."""
    m = len(a)
    if m == 0:
        return ()
    n = len(a[0])
    # reduce the rows of a, tracking the combination that produced each row
    basis = EchelonBasis(ring, n)
    inserted = []  # indices in a of the rows the basis kept
    kernel = []
    for i, row in enumerate(a):
        red, coeffs = basis._reduce(row)
        if all(c == ring.zero for c in red):
            v = [ring.zero] * m
            v[i] = ring.one
            for c, combo in zip(coeffs, basis.combos):
                if c != ring.zero:
                    for j, t in enumerate(combo):
                        if t != ring.zero:
                            v[inserted[j]] = v[inserted[j]] - c * t
            kernel.append(tuple(v))
        else:
            basis.insert(row)
            inserted.append(i)
    return tuple(kernel)
