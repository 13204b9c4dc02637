"""Rational series as finite linear representations (weighted automata).

A representation is a triple (nu, mu, eta): a row vector, a letter-indexed
family of square matrices extended to words as a monoid morphism, and a
column vector.  The represented series has coefficient nu.mu(w).eta on the
word w; letters without a stored matrix act as zero.

The module provides the closure constructions (sum, concatenation product,
star, shuffle, quasi-shuffle), two-sided minimization and decidable equality
over a field, the splitting of a series into finitely many left/right
factor pairs, character stars, the one-letter rational-fraction form,
exchangeability tests, Lie-algebra classification of the letter matrices,
and the two triangular factorizations.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import (
    EchelonBasis,
    block_diag,
    dot,
    identity,
    kron,
    mat,
    mat_add,
    mat_sub,
    transpose,
    vec_mat,
    zeros,
)
from .rings import ring_named
from .series import NCPolynomial, TruncatedSeries
from .words import Alphabet

__all__ = [
    "LinearRepresentation",
    "rep_zero",
    "rep_scalar",
    "rep_word",
    "rep_polynomial",
    "rep_sum",
    "rep_conc",
    "rep_star",
    "rep_shuffle",
    "rep_stuffle",
    "minimize",
    "equal",
    "sweedler_split",
    "make_character_star",
    "is_character",
    "kronecker_form",
    "is_syntactically_exchangeable",
    "is_rationally_exchangeable",
    "MatrixLieAlgebra",
    "lie_closure",
    "classify",
    "nilpotent_decompose",
    "triangular_star_factorization_check",
]


class LinearRepresentation:
    __slots__ = ("alphabet", "ring", "nu", "mu", "eta", "dim")

    def __init__(self, alphabet, ring, nu, mu, eta):
        nu = tuple(ring.coerce(c) for c in nu)
        eta = tuple(ring.coerce(c) for c in eta)
        if len(nu) != len(eta):
            raise ValueError("initial and final vectors must have the same length")
        n = len(nu)
        clean = {}
        for x, m in mu.items():
            if not alphabet.is_letter(x):
                raise ValueError(f"letter {x!r} is not in alphabet {alphabet.name}")
            m = tuple(tuple(ring.coerce(c) for c in row) for row in m)
            if len(m) != n or any(len(row) != n for row in m):
                raise ValueError(f"matrix for {x!r} is not {n}x{n}")
            if any(c != ring.zero for row in m for c in row):
                clean[x] = m
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "mu", clean)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "dim", n)

    def __setattr__(self, name, value):
        raise AttributeError("LinearRepresentation is immutable")

    @property
    def active_letters(self):
        return sorted(self.mu, key=self.alphabet.rank)

    def matrix(self, x):
        m = self.mu.get(x)
        return m if m is not None else zeros(self.ring, self.dim, self.dim)

    def coeff(self, w):
        ring = self.ring
        if self.dim == 0:
            return ring.zero
        v = self.nu
        for x in w:
            m = self.mu.get(x)
            if m is None:
                return ring.zero
            v = vec_mat(ring, v, m)
        return dot(ring, v, self.eta)

    def expand(self, bound):
        """All coefficients on words of grade <= bound, as a truncated series."""
        ring, alphabet = self.ring, self.alphabet
        terms = {}
        if self.dim:
            letters = [(x, alphabet.grade(x), self.mu[x]) for x in self.active_letters]

            def walk(word, grade, v):
                c = dot(ring, v, self.eta)
                if c != ring.zero:
                    terms[word] = c
                for x, g, m in letters:
                    if grade + g <= bound:
                        v2 = vec_mat(ring, v, m)
                        if any(e != ring.zero for e in v2):
                            walk(word + (x,), grade + g, v2)

            walk((), 0, self.nu)
        return TruncatedSeries(NCPolynomial(alphabet, ring, terms), bound)

    def scale(self, c):
        c = self.ring.coerce(c)
        return LinearRepresentation(
            self.alphabet, self.ring, tuple(c * v for v in self.nu), self.mu, self.eta
        )

    def transpose(self):
        """Represents the letter-reversed series."""
        return LinearRepresentation(
            self.alphabet,
            self.ring,
            self.eta,
            {x: transpose(m) for x, m in self.mu.items()},
            self.nu,
        )

    def embed_field(self):
        field = self.ring.field()
        if field == self.ring:
            return self
        emb = self.ring.embed
        return LinearRepresentation(
            self.alphabet,
            field,
            tuple(emb(c) for c in self.nu),
            {x: tuple(tuple(emb(c) for c in row) for row in m) for x, m in self.mu.items()},
            tuple(emb(c) for c in self.eta),
        )

    def conjugate(self, t):
        """Similarity transform by an invertible matrix; the series is unchanged."""
        from .linalg import invert_matrix, mat_mul, mat_vec

        ring = self.ring
        t = mat(t)
        tinv = invert_matrix(ring, t)
        return LinearRepresentation(
            self.alphabet,
            ring,
            vec_mat(ring, self.nu, tinv),
            {x: mat_mul(ring, mat_mul(ring, t, m), tinv) for x, m in self.mu.items()},
            mat_vec(ring, t, self.eta),
        )

    def to_json(self):
        fmt = self.ring.format
        if self.alphabet.kind == "X":
            letters = list(self.alphabet.letters)
        else:
            letters = self.active_letters
        return json.dumps(
            {
                "alphabet": letters,
                "ring": self.ring.name,
                "dim": self.dim,
                "nu": [fmt(c) for c in self.nu],
                "mu": {x: [fmt(c) for row in m for c in row] for x, m in self.mu.items()},
                "eta": [fmt(c) for c in self.eta],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        ring = ring_named(data["ring"])
        letters = data["alphabet"]
        if letters and all(c.startswith("y") for c in letters):
            alphabet = Alphabet.y()
        else:
            alphabet = Alphabet.from_letters(letters)
        n = data["dim"]
        mu = {}
        for x, flat in data["mu"].items():
            if len(flat) != n * n:
                raise ValueError(f"matrix for {x!r} has {len(flat)} entries, wanted {n * n}")
            mu[x] = tuple(tuple(ring.parse(c) for c in flat[i * n : (i + 1) * n]) for i in range(n))
        return cls(alphabet, ring, [ring.parse(c) for c in data["nu"]], mu, [ring.parse(c) for c in data["eta"]])

    def __repr__(self):
        return (
            f"LinearRepresentation(dim={self.dim}, alphabet={self.alphabet.name!r}, "
            f"ring={self.ring.name}, letters={self.active_letters})"
        )


# ---------------------------------------------------------------------------
# constructors


def rep_zero(alphabet, ring):
    return LinearRepresentation(alphabet, ring, (), {}, ())


def rep_scalar(alphabet, ring, c):
    c = ring.coerce(c)
    if c == ring.zero:
        return rep_zero(alphabet, ring)
    return LinearRepresentation(alphabet, ring, (c,), {}, (ring.one,))


def rep_word(alphabet, ring, w, coeff=None):
    """Chain automaton of a single word with an optional coefficient."""
    w = tuple(w)
    alphabet.validate_word(w)
    c = ring.one if coeff is None else ring.coerce(coeff)
    n = len(w) + 1
    mu = {}
    for i, x in enumerate(w):
        m = [[ring.zero] * n for _ in range(n)]
        existing = mu.get(x)
        if existing is not None:
            m = [list(r) for r in existing]
        m[i][i + 1] = ring.one
        mu[x] = tuple(tuple(r) for r in m)
    nu = tuple(ring.one if i == 0 else ring.zero for i in range(n))
    eta = tuple(c if i == n - 1 else ring.zero for i in range(n))
    return LinearRepresentation(alphabet, ring, nu, mu, eta)


def rep_polynomial(p):
    """Representation of a noncommutative polynomial (sum of chain automata)."""
    rep = rep_zero(p.alphabet, p.ring)
    for w in p.support():
        rep = rep_sum(rep, rep_word(p.alphabet, p.ring, w, p.terms[w]))
    return rep


def _check_pair(r1, r2):
    if r1.alphabet != r2.alphabet or r1.ring != r2.ring:
        raise ValueError("representations live over different alphabets or rings")


def rep_sum(r1, r2):
    _check_pair(r1, r2)
    ring = r1.ring
    letters = set(r1.mu) | set(r2.mu)
    mu = {x: block_diag(ring, r1.matrix(x), r2.matrix(x)) for x in letters}
    return LinearRepresentation(r1.alphabet, ring, r1.nu + r2.nu, mu, r1.eta + r2.eta)


def rep_conc(r1, r2):
    """Concatenation (Cauchy) product of the represented series."""
    _check_pair(r1, r2)
    ring = r1.ring
    n1, n2 = r1.dim, r2.dim
    s2 = dot(ring, r2.nu, r2.eta)  # constant term of the right factor
    letters = set(r1.mu) | set(r2.mu)
    mu = {}
    for x in letters:
        m1, m2 = r1.matrix(x), r2.matrix(x)
        # top-right coupling: eta1 . (nu2 mu2(x))
        row2 = vec_mat(ring, r2.nu, m2)
        rows = []
        for i in range(n1):
            rows.append(tuple(m1[i]) + tuple(r1.eta[i] * c for c in row2))
        for i in range(n2):
            rows.append(tuple(ring.zero for _ in range(n1)) + tuple(m2[i]))
        mu[x] = tuple(rows)
    nu = r1.nu + tuple(ring.zero for _ in range(n2))
    eta = tuple(e * s2 for e in r1.eta) + r2.eta
    return LinearRepresentation(r1.alphabet, ring, nu, mu, eta)


def rep_star(r):
    """Kleene star; the represented series must have zero constant term."""
    ring = r.ring
    if dot(ring, r.nu, r.eta) != ring.zero:
        raise ValueError("star needs a series with zero constant term")
    n = r.dim
    mu = {}
    for x, m in r.mu.items():
        row = vec_mat(ring, r.nu, m)  # nu mu(x)
        rows = []
        for i in range(n):
            rows.append(
                tuple(m[i][j] + r.eta[i] * row[j] for j in range(n)) + (ring.zero,)
            )
        rows.append(tuple(row) + (ring.zero,))
        mu[x] = tuple(rows)
    nu = tuple(ring.zero for _ in range(n)) + (ring.one,)
    eta = r.eta + (ring.one,)
    return LinearRepresentation(r.alphabet, ring, nu, mu, eta)


def rep_shuffle(r1, r2):
    """Shuffle product: Kronecker sum of the letter actions."""
    _check_pair(r1, r2)
    ring = r1.ring
    i1, i2 = identity(ring, r1.dim), identity(ring, r2.dim)
    letters = set(r1.mu) | set(r2.mu)
    mu = {}
    for x in letters:
        mu[x] = mat_add(
            ring, kron(ring, r1.matrix(x), i2), kron(ring, i1, r2.matrix(x))
        )
    nu = tuple(a * b for a in r1.nu for b in r2.nu)
    eta = tuple(a * b for a in r1.eta for b in r2.eta)
    return LinearRepresentation(r1.alphabet, ring, nu, mu, eta)


def rep_stuffle(r1, r2):
    """Quasi-shuffle product over Y: Kronecker sum plus letter-merge couplings."""
    _check_pair(r1, r2)
    if r1.alphabet.kind != "Y":
        raise ValueError("quasi-shuffle is defined on the graded Y alphabet")
    ring = r1.ring
    i1, i2 = identity(ring, r1.dim), identity(ring, r2.dim)
    idx1 = {int(x[1:]): m for x, m in r1.mu.items()}
    idx2 = {int(x[1:]): m for x, m in r2.mu.items()}
    out = {}

    def bump(k, m):
        if k in out:
            out[k] = mat_add(ring, out[k], m)
        else:
            out[k] = m

    for k, m in idx1.items():
        bump(k, kron(ring, m, i2))
    for k, m in idx2.items():
        bump(k, kron(ring, i1, m))
    for i, m1 in idx1.items():
        for j, m2 in idx2.items():
            bump(i + j, kron(ring, m1, m2))
    mu = {f"y{k}": m for k, m in out.items()}
    nu = tuple(a * b for a in r1.nu for b in r2.nu)
    eta = tuple(a * b for a in r1.eta for b in r2.eta)
    return LinearRepresentation(r1.alphabet, ring, nu, mu, eta)


# ---------------------------------------------------------------------------
# minimization and equality


def _left_reduce(rep):
    ring = rep.ring
    basis = EchelonBasis(ring, rep.dim)
    if any(c != ring.zero for c in rep.nu):
        basis.insert(rep.nu)
    letters = rep.active_letters
    i = 0
    while i < len(basis.originals):
        v = basis.originals[i]
        for x in letters:
            basis.insert(vec_mat(ring, v, rep.mu[x]))
        i += 1
    m = basis.rank
    if m == 0:
        return rep_zero(rep.alphabet, ring)
    rows = basis.originals
    mu = {}
    for x in letters:
        mu[x] = tuple(basis.coordinates(vec_mat(ring, v, rep.mu[x])) for v in rows)
    nu = basis.coordinates(rep.nu)
    eta = tuple(dot(ring, v, rep.eta) for v in rows)
    return LinearRepresentation(rep.alphabet, ring, nu, mu, eta)


def minimize(rep):
    """Equivalent representation of minimal dimension: reduce the forward
    reachable span, then the backward observable span."""
    if not rep.ring.is_field:
        raise ValueError("minimization needs field coefficients; embed first")
    half = _left_reduce(rep)
    return _left_reduce(half.transpose()).transpose()


def equal(r1, r2):
    """Decide equality of the represented series over a field."""
    r1, r2 = r1.embed_field(), r2.embed_field()
    _check_pair(r1, r2)
    r1, r2 = minimize(r1), minimize(r2)
    ring = r1.ring
    window = r1.dim + r2.dim
    letters = sorted(set(r1.mu) | set(r2.mu), key=r1.alphabet.rank)

    def walk(depth, v1, v2):
        c1 = dot(ring, v1, r1.eta) if r1.dim else ring.zero
        c2 = dot(ring, v2, r2.eta) if r2.dim else ring.zero
        if c1 != c2:
            return False
        if depth == window:
            return True
        for x in letters:
            w1 = vec_mat(ring, v1, r1.matrix(x)) if r1.dim else v1
            w2 = vec_mat(ring, v2, r2.matrix(x)) if r2.dim else v2
            live1 = any(c != ring.zero for c in w1)
            live2 = any(c != ring.zero for c in w2)
            if live1 or live2:
                if not walk(depth + 1, w1, w2):
                    return False
        return True

    return walk(0, r1.nu, r2.nu)


# ---------------------------------------------------------------------------


def sweedler_split(rep):
    """Pairs (G_i, D_i) with <S,uv> = sum_i <G_i,u> <D_i,v>."""
    ring, n = rep.ring, rep.dim
    pairs = []
    for i in range(n):
        e = tuple(ring.one if j == i else ring.zero for j in range(n))
        g = LinearRepresentation(rep.alphabet, ring, rep.nu, rep.mu, e)
        d = LinearRepresentation(rep.alphabet, ring, e, rep.mu, rep.eta)
        pairs.append((g, d))
    return pairs


def make_character_star(alphabet, ring, coeffs):
    """Dimension-one representation of (sum_x c_x x)*."""
    mu = {x: ((ring.coerce(c),),) for x, c in coeffs.items()}
    return LinearRepresentation(alphabet, ring, (ring.one,), mu, (ring.one,))


def is_character(rep):
    """True when the series is multiplicative on words with value 1 at the
    empty word, equivalently admits a dimension-one representation."""
    m = minimize(rep.embed_field())
    if m.dim > 1:
        return False
    return dot(m.ring, m.nu, m.eta) == m.ring.one


def _char_poly(ring, m):
    """Coefficients (a_0, ..., a_n) of det(lambda I - M), a_n = 1, computed
    division-free in lambda by the trace recursion (valid in characteristic 0)."""
    from .linalg import mat_mul

    n = len(m)
    a = [ring.zero] * (n + 1)
    a[n] = ring.one
    mk = m
    for k in range(1, n + 1):
        tr = sum((mk[i][i] for i in range(n)), ring.zero)
        ck = ring.coerce(Fraction(-1, k)) * tr
        a[n - k] = ck
        if k < n:
            shifted = tuple(
                tuple(mk[i][j] + ck if i == j else mk[i][j] for j in range(n))
                for i in range(n)
            )
            mk = mat_mul(ring, m, shifted)
    return tuple(a)


def kronecker_form(rep):
    """One-letter rational form: (P, Q) with S = P . (xQ)* as series.

    Both parts are returned as polynomials in the single letter (banked as
    noncommutative polynomials over the rep's alphabet).
    """
    letters = rep.active_letters
    if rep.alphabet.kind == "X" and len(rep.alphabet.letters) == 1:
        x = rep.alphabet.letters[0]
    elif len(letters) == 1:
        x = letters[0]
    elif not letters:
        x = rep.alphabet.letters_up_to(1)[0]
    else:
        raise ValueError("the rational-fraction form needs a one-letter alphabet")
    ring = rep.ring
    if not ring.is_field:
        raise ValueError("field coefficients required")
    n = rep.dim
    m = rep.matrix(x)
    a = _char_poly(ring, m)  # monic, a[k] multiplies lambda^k
    # det(I - xM) has coefficient a_{n-k} on x^k
    d = [a[n - k] for k in range(n + 1)]
    s = []
    v = rep.nu
    for _ in range(n):
        s.append(dot(ring, v, rep.eta))
        v = vec_mat(ring, v, m)
    p = {}
    for j in range(n):
        c = ring.zero
        for i in range(j + 1):
            c = c + d[i] * s[j - i]
        if c != ring.zero:
            p[(x,) * j] = c
    q = {}
    for j in range(n):
        c = -d[j + 1]
        if c != ring.zero:
            q[(x,) * j] = c
    return (
        NCPolynomial(rep.alphabet, ring, p),
        NCPolynomial(rep.alphabet, ring, q),
    )


# ---------------------------------------------------------------------------
# exchangeability and classification


def _multidegree(alphabet, w):
    counts = {}
    for c in w:
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items()))


def is_syntactically_exchangeable(series, bound=None):
    """Coefficients constant on classes of words sharing a letter multiset."""
    if isinstance(series, LinearRepresentation):
        if bound is None:
            raise ValueError("a grade bound is required")
        series = series.expand(bound)
    if isinstance(series, TruncatedSeries):
        bound = series.bound if bound is None else min(bound, series.bound)
        poly = series.poly
    else:
        poly = series
        if bound is None:
            bound = poly.max_grade()
    alphabet = poly.alphabet
    if alphabet.kind == "X":
        active = sorted({c for w in poly.terms for c in w}, key=alphabet.rank)
        words = _x_words_up_to(active, bound)
    else:
        words = alphabet.words_up_to(bound)
    classes = {}
    for w in words:
        key = _multidegree(alphabet, w)
        c = poly.coeff(w)
        if key in classes:
            if classes[key] != c:
                return False
        else:
            classes[key] = c
    return True


def _x_words_up_to(letters, bound):
    out = [()]
    layer = [()]
    for _ in range(bound):
        layer = [w + (x,) for w in layer for x in letters]
        out.extend(layer)
    return out


def is_rationally_exchangeable(rep):
    """Membership in the closure class generated by one-letter rationals,
    decided by pairwise commutation of the minimal letter matrices."""
    m = minimize(rep.embed_field())
    from .linalg import mat_mul

    mats = [m.mu[x] for x in m.active_letters]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mat_mul(m.ring, mats[i], mats[j]) != mat_mul(m.ring, mats[j], mats[i]):
                return False
    return True


class MatrixLieAlgebra:
    """Bracket-closed span of square matrices over a field."""

    def __init__(self, ring, n, basis):
        self.ring = ring
        self.n = n
        self.basis = list(basis)

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f"MatrixLieAlgebra(dim={self.dim}, matrices {self.n}x{self.n})"


def _flatten(m):
    return tuple(c for row in m for c in row)


def _bracket(ring, a, b):
    from .linalg import mat_mul

    return mat_sub(ring, mat_mul(ring, a, b), mat_mul(ring, b, a))


def _span_closure(ring, n, generators, brackets_with=None):
    """Echelon span of generators, optionally bracket-saturated."""
    basis = EchelonBasis(ring, n * n)
    members = []
    for g in generators:
        if basis.insert(_flatten(g)) is not None:
            members.append(g)
    if brackets_with is None:
        i = 0
        while i < len(members):
            for j in range(len(members)):
                b = _bracket(ring, members[i], members[j])
                if basis.insert(_flatten(b)) is not None:
                    members.append(b)
            i += 1
    return members


def lie_closure(rep):
    """The Lie algebra generated by the letter matrices."""
    ring = rep.ring
    if not ring.is_field:
        raise ValueError("field coefficients required")
    gens = [rep.mu[x] for x in rep.active_letters]
    members = _span_closure(ring, rep.dim, gens)
    return MatrixLieAlgebra(ring, rep.dim, members)


def _bracket_span(ring, n, left, right):
    out = []
    basis = EchelonBasis(ring, n * n)
    for a in left:
        for b in right:
            c = _bracket(ring, a, b)
            if basis.insert(_flatten(c)) is not None:
                out.append(c)
    return out


def _lower_central_vanishes(lie):
    # each term is an ideal contained in the previous one, so the dimension
    # is strictly decreasing until the series stabilizes
    layer = lie.basis
    while layer:
        nxt = _bracket_span(lie.ring, lie.n, lie.basis, layer)
        if len(nxt) >= len(layer):
            return False
        layer = nxt
    return True


def _derived_vanishes(lie):
    layer = lie.basis
    while layer:
        nxt = _bracket_span(lie.ring, lie.n, layer, layer)
        if len(nxt) >= len(layer):
            return False
        layer = nxt
    return True


def classify(rep):
    """Coarse class of the series by the Lie algebra of its minimal letter
    matrices: 'exchangeable', 'nilpotent', 'solvable', or 'general'."""
    m = minimize(rep.embed_field())
    if is_rationally_exchangeable(m):
        return "exchangeable"
    lie = lie_closure(m)
    if _lower_central_vanishes(lie):
        return "nilpotent"
    if _derived_vanishes(lie):
        return "solvable"
    return "general"


# ---------------------------------------------------------------------------
# triangular factorizations


def nilpotent_decompose(rep, char_coeffs=None):
    """Split S = S1 (shuffle) (sum_x c_x x)* when every mu(x) - c_x I is
    strictly upper triangular.  Returns (S1 as a polynomial, c)."""
    ring, n = rep.ring, rep.dim
    if char_coeffs is None:
        char_coeffs = {}
        for x in rep.active_letters:
            m = rep.mu[x]
            d = m[0][0] if n else ring.zero
            char_coeffs[x] = d
    c = {x: ring.coerce(v) for x, v in char_coeffs.items()}
    mu1 = {}
    for x in set(rep.mu) | set(c):
        m = rep.matrix(x)
        cx = c.get(x, ring.zero)
        shifted = tuple(
            tuple(m[i][j] - cx if i == j else m[i][j] for j in range(n)) for i in range(n)
        )
        for i in range(n):
            for j in range(i + 1):
                if shifted[i][j] != ring.zero:
                    raise ValueError(
                        f"matrix for {x!r} minus {ring.format(cx)}*I is not strictly upper triangular"
                    )
        mu1[x] = shifted
    rep1 = LinearRepresentation(rep.alphabet, ring, rep.nu, mu1, rep.eta)
    bound = max(n - 1, 0)
    s1 = rep1.expand(bound).poly
    return s1, c


def _poly_mat_mul(a, b, bound):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                term = (a[i][k] * b[k][j]).truncate(bound)
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _poly_mat_star(m, bound, one, zero):
    """Geometric sum of a matrix with proper polynomial entries."""
    n = len(m)
    ident = tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )
    acc = ident
    power = ident
    for _ in range(bound):
        power = _poly_mat_mul(power, m, bound)
        if all(p.is_zero() for row in power for p in row):
            break
        acc = tuple(
            tuple(acc[i][j] + power[i][j] for j in range(n)) for i in range(n)
        )
    return acc


def triangular_star_factorization_check(rep, bound):
    """With upper-triangular letter matrices, the star of the letter matrix
    factors through its diagonal and strict parts; verified entrywise on
    words of grade <= bound."""
    ring, n = rep.ring, rep.dim
    for x, m in rep.mu.items():
        for i in range(n):
            for j in range(i):
                if m[i][j] != ring.zero:
                    raise ValueError(f"matrix for {x!r} is not upper triangular")
    alphabet = rep.alphabet
    zero = NCPolynomial.zero(alphabet, ring)
    one = NCPolynomial.one(alphabet, ring)
    letter_matrix = []
    for i in range(n):
        row = []
        for j in range(n):
            p = zero
            for x, m in rep.mu.items():
                if m[i][j] != ring.zero:
                    p = p + NCPolynomial.word(alphabet, ring, (x,), m[i][j])
            row.append(p)
        letter_matrix.append(tuple(row))
    m_full = tuple(letter_matrix)
    d_part = tuple(
        tuple(m_full[i][j] if i == j else zero for j in range(n)) for i in range(n)
    )
    n_part = tuple(
        tuple(m_full[i][j] if i != j else zero for j in range(n)) for i in range(n)
    )
    lhs = _poly_mat_star(m_full, bound, one, zero)
    d_star = _poly_mat_star(d_part, bound, one, zero)
    dn = _poly_mat_mul(d_star, n_part, bound)
    rhs = _poly_mat_mul(_poly_mat_star(dn, bound, one, zero), d_star, bound)
    for i in range(n):
        for j in range(n):
            if lhs[i][j] != rhs[i][j]:
                return False
    return True
