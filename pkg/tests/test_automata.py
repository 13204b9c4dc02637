"""Linear representations: constructors against series-level oracles,
minimization, equality, splitting, rational forms, and classification."""

import random
from fractions import Fraction

import pytest

from ncfps.automata import (
    LinearRepresentation,
    classify,
    equal,
    is_character,
    is_rationally_exchangeable,
    is_syntactically_exchangeable,
    kronecker_form,
    lie_closure,
    make_character_star,
    minimize,
    nilpotent_decompose,
    rep_conc,
    rep_polynomial,
    rep_scalar,
    rep_shuffle,
    rep_star,
    rep_stuffle,
    rep_sum,
    rep_word,
    rep_zero,
    sweedler_split,
    triangular_star_factorization_check,
)
from ncfps.linalg import EchelonBasis, vec_mat
from ncfps.rings import QQ, QT, QZ
from ncfps.series import NCPolynomial, TruncatedSeries, parse_series_text
from ncfps.words import Alphabet

X2 = Alphabet.x(2)
Y = Alphabet.y()


def rand_rep(rng, alphabet, letters, dim, ring=QQ, proper=False):
    def num():
        return ring.coerce(Fraction(rng.randint(-2, 2)))

    if proper:
        nu = tuple(ring.one if i == 0 else ring.zero for i in range(dim))
        eta = (ring.zero,) + tuple(num() for _ in range(dim - 1))
    else:
        nu = tuple(num() for _ in range(dim))
        eta = tuple(num() for _ in range(dim))
    mu = {
        x: tuple(tuple(num() for _ in range(dim)) for _ in range(dim))
        for x in letters
    }
    return LinearRepresentation(alphabet, ring, nu, mu, eta)


def same_series(s1, s2, bound):
    return s1.poly.truncate(bound) == s2.poly.truncate(bound)


# ---------------------------------------------------------------------------
# basics


def test_coeff_and_expand_word_rep():
    r = rep_word(X2, QQ, ("x0", "x1", "x0"), Fraction(3, 2))
    assert r.dim == 4
    assert r.coeff(("x0", "x1", "x0")) == Fraction(3, 2)
    assert r.coeff(("x0", "x1")) == 0
    assert r.coeff(()) == 0
    s = r.expand(4)
    assert s.poly == NCPolynomial(X2, QQ, {("x0", "x1", "x0"): Fraction(3, 2)})


def test_rep_scalar_and_zero():
    assert rep_scalar(X2, QQ, 5).coeff(()) == 5
    assert rep_scalar(X2, QQ, 0).dim == 0
    z = rep_zero(X2, QQ)
    assert z.coeff(("x0",)) == 0
    assert z.expand(3).poly.is_zero()


def test_rep_polynomial_matches_input():
    p = parse_series_text("2*x0.x1 - 3*x1 + 1", X2, QQ)
    r = rep_polynomial(p)
    assert r.expand(4).poly == p


def test_inactive_letters_act_as_zero():
    r = LinearRepresentation(X2, QQ, (1,), {"x0": ((2,),)}, (1,))
    assert r.coeff(("x1",)) == 0
    assert r.coeff(("x0", "x1", "x0")) == 0
    assert r.active_letters == ["x0"]


def test_immutability_and_pruning():
    r = LinearRepresentation(X2, QQ, (1,), {"x0": ((0,),)}, (1,))
    assert r.mu == {}
    with pytest.raises(AttributeError):
        r.dim = 7


def test_quiplait_example():
    # two-state walk automaton: x0 steps forward, x1 steps back
    r = LinearRepresentation(
        X2, QQ, (1, 0), {"x0": ((0, 1), (0, 0)), "x1": ((0, 0), (1, 0))}, (1, 0)
    )
    assert r.coeff(()) == 1
    assert r.coeff(("x0", "x1")) == 1
    assert r.coeff(("x0", "x0")) == 0
    assert r.coeff(("x1", "x0")) == 0
    assert r.coeff(("x0", "x1", "x0", "x1")) == 1
    assert r.coeff(("x0", "x0", "x1", "x1")) == 0


# ---------------------------------------------------------------------------
# oracle soundness: constructors versus series arithmetic


def test_sum_conc_star_shuffle_against_expansion():
    rng = random.Random(20240511)
    bound = 6
    for _ in range(6):
        d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
        r1 = rand_rep(rng, X2, ["x0", "x1"], d1)
        r2 = rand_rep(rng, X2, ["x0", "x1"], d2)
        s1, s2 = r1.expand(bound), r2.expand(bound)
        assert same_series(rep_sum(r1, r2).expand(bound), s1 + s2, bound)
        assert same_series(rep_conc(r1, r2).expand(bound), s1 * s2, bound)
        assert same_series(rep_shuffle(r1, r2).expand(bound), s1.shuffle(s2), bound)
        rp = rand_rep(rng, X2, ["x0", "x1"], rng.randint(1, 3), proper=True)
        assert same_series(rep_star(rp).expand(bound), rp.expand(bound).star(), bound)


def test_stuffle_against_expansion():
    rng = random.Random(77)
    bound = 5
    for _ in range(5):
        r1 = rand_rep(rng, Y, ["y1", "y2"], rng.randint(1, 2))
        r2 = rand_rep(rng, Y, ["y1", "y2"], rng.randint(1, 2))
        got = rep_stuffle(r1, r2).expand(bound).poly
        want = r1.expand(bound).poly.stuffle(r2.expand(bound).poly).truncate(bound)
        assert got == want


def test_constructors_over_polynomial_ring():
    rng = random.Random(9)
    bound = 4
    t = QT.gen()
    r1 = rep_word(X2, QT, ("x0", "x1"), t)
    r2 = rep_word(X2, QT, ("x1",), 1 - t)
    s1, s2 = r1.expand(bound), r2.expand(bound)
    assert same_series(rep_conc(r1, r2).expand(bound), s1 * s2, bound)
    assert same_series(rep_shuffle(r1, r2).expand(bound), s1.shuffle(s2), bound)


def test_star_requires_zero_constant_term():
    r = rep_scalar(X2, QQ, 1)
    with pytest.raises(ValueError):
        rep_star(r)


def test_star_of_zero_is_one():
    r = rep_star(rep_zero(X2, QQ))
    assert r.expand(3).poly == NCPolynomial.one(X2, QQ)


def test_stuffle_of_character_stars_merges_letters():
    # (a y2)* stuffled with (b y3)* carries an extra letter y5 with weight ab
    a, b = Fraction(2), Fraction(3)
    r1 = make_character_star(Y, QQ, {"y2": a})
    r2 = make_character_star(Y, QQ, {"y3": b})
    merged = make_character_star(Y, QQ, {"y2": a, "y3": b, "y5": a * b})
    prod = rep_stuffle(r1, r2)
    assert equal(prod, merged)
    assert prod.expand(7).poly == merged.expand(7).poly


# ---------------------------------------------------------------------------
# minimization and equality


def loop_star_rep():
    return rep_star(rep_word(X2, QQ, ("x0", "x1")))


def test_minimize_sum_of_equal_copies():
    r = loop_star_rep()
    doubled = rep_sum(r, r)
    m = minimize(doubled)
    assert doubled.dim == 8 and m.dim == 2
    assert equal(m, r.scale(2))


def test_minimize_zero_final_vector():
    r = LinearRepresentation(
        X2, QQ, (1, 2), {"x0": ((1, 0), (0, 1))}, (0, 0)
    )
    assert minimize(r).dim == 0


def test_minimize_character_star():
    r = rep_star(rep_polynomial(parse_series_text("2*x0 + 3*x1", X2, QQ)))
    m = minimize(r)
    assert m.dim == 1
    assert equal(m, make_character_star(X2, QQ, {"x0": 2, "x1": 3}))


def test_minimize_idempotent_and_faithful():
    rng = random.Random(4242)
    for _ in range(5):
        r = rand_rep(rng, X2, ["x0", "x1"], 3)
        m = minimize(r)
        assert m.dim <= r.dim
        assert minimize(m).dim == m.dim
        assert equal(r, m)
        bound = r.dim + m.dim
        assert r.expand(bound).poly == m.expand(bound).poly


def test_minimize_needs_field():
    r = rep_word(X2, QT, ("x0",), QT.gen())
    with pytest.raises(ValueError):
        minimize(r)
    assert minimize(r.embed_field()).dim == 2


def test_equal_examples():
    assert not equal(rep_star(rep_word(X2, QQ, ("x0",))), rep_star(rep_word(X2, QQ, ("x1",))))
    r = loop_star_rep()
    assert equal(r, r)
    assert not equal(r, r.scale(2))
    # plane stars: shuffle of two characters is the character of the sum
    a = make_character_star(X2, QQ, {"x0": 1, "x1": 2})
    b = make_character_star(X2, QQ, {"x0": 3, "x1": 5})
    c = make_character_star(X2, QQ, {"x0": 4, "x1": 7})
    assert equal(rep_shuffle(a, b), c)
    assert not equal(rep_shuffle(a, b), make_character_star(X2, QQ, {"x0": 4, "x1": 8}))


def test_equal_walk_identity():
    # (-x0x1)* shuffled with (x0x1)* collapses to (-4 x0x0x1x1)*
    lhs = rep_shuffle(
        rep_star(rep_word(X2, QQ, ("x0", "x1"), -1)),
        rep_star(rep_word(X2, QQ, ("x0", "x1"))),
    )
    rhs = rep_star(rep_word(X2, QQ, ("x0", "x0", "x1", "x1"), -4))
    assert equal(lhs, rhs)


def test_equal_over_polynomial_ring_embeds():
    t = QT.gen()
    r1 = rep_word(X2, QT, ("x0",), t * t)
    r2 = rep_word(X2, QT, ("x0",), t * t)
    assert equal(r1, r2)
    assert not equal(r1, rep_word(X2, QT, ("x0",), t))


def test_schuetzenberger_reconstruction():
    # S = <S,1> 1 + sum_x x (x^{-1} S), with the left quotient acting on nu
    rng = random.Random(515)
    r = rand_rep(rng, X2, ["x0", "x1"], 3)
    acc = rep_scalar(X2, QQ, r.coeff(()))
    for x in r.active_letters:
        shifted = LinearRepresentation(
            X2, QQ, vec_mat(QQ, r.nu, r.mu[x]), r.mu, r.eta
        )
        acc = rep_sum(acc, rep_conc(rep_word(X2, QQ, (x,)), shifted))
    assert equal(acc, r)


# ---------------------------------------------------------------------------
# splitting, characters, one-letter forms


def test_sweedler_split_factors_concatenations():
    rng = random.Random(88)
    r = rand_rep(rng, X2, ["x0", "x1"], 3)
    pairs = sweedler_split(r)
    assert len(pairs) == r.dim
    words = [(), ("x0",), ("x1",), ("x0", "x1"), ("x1", "x1"), ("x0", "x1", "x0")]
    for u in words:
        for v in words:
            if len(u) + len(v) > 3:
                continue
            direct = r.coeff(u + v)
            split = sum(g.coeff(u) * d.coeff(v) for g, d in pairs)
            assert direct == split


def test_character_detection():
    assert is_character(make_character_star(X2, QQ, {"x0": 2, "x1": -1}))
    assert is_character(rep_scalar(X2, QQ, 1))
    assert not is_character(rep_scalar(X2, QQ, 2))
    assert not is_character(rep_word(X2, QQ, ("x0",)))
    assert not is_character(loop_star_rep())
    # multiplicativity holds on sampled pairs for a true character
    ch = make_character_star(X2, QQ, {"x0": 2, "x1": 3})
    assert ch.coeff(("x0", "x1")) == ch.coeff(("x0",)) * ch.coeff(("x1",))


X1 = Alphabet.x(1)


def test_kronecker_form_character():
    r = make_character_star(X1, QQ, {"x0": Fraction(3)})
    p, q = kronecker_form(r)
    assert p == NCPolynomial.one(X1, QQ)
    assert q == NCPolynomial(X1, QQ, {(): Fraction(3)})


def test_kronecker_form_polynomial():
    poly = parse_series_text("1*x0 + 1*x0.x0", X1, QQ)
    p, q = kronecker_form(rep_polynomial(poly))
    assert p == poly
    assert q.is_zero()


def test_kronecker_form_round_trip():
    rng = random.Random(303)
    for _ in range(4):
        r = rand_rep(rng, X1, ["x0"], 3)
        p, q = kronecker_form(r)
        assert p.max_grade() < r.dim and q.max_grade() < r.dim
        bound = 2 * r.dim
        xq = NCPolynomial.word(X1, QQ, ("x0",)) * q
        resolvent = TruncatedSeries(xq, bound).star()
        rebuilt = TruncatedSeries(p, bound) * resolvent
        assert r.expand(bound).poly == rebuilt.poly.truncate(bound)


# ---------------------------------------------------------------------------
# exchangeability


def test_syntactic_exchangeability():
    ones = rep_star(rep_polynomial(parse_series_text("1*x0 + 1*x1", X2, QQ)))
    assert is_syntactically_exchangeable(ones, 4)
    skew = parse_series_text("1*x0.x1 - 1*x1.x0", X2, QQ)
    assert not is_syntactically_exchangeable(skew)
    sym = parse_series_text("1*x0.x1 + 1*x1.x0 + 5", X2, QQ)
    assert is_syntactically_exchangeable(sym)
    # zero coefficients must participate: x0x1 alone is not exchangeable
    assert not is_syntactically_exchangeable(
        parse_series_text("1*x0.x1", X2, QQ)
    )


def test_syntactic_exchangeability_on_y():
    r = make_character_star(Y, QQ, {"y1": 2, "y2": 4})
    assert is_syntactically_exchangeable(r, 4)
    assert not is_syntactically_exchangeable(
        NCPolynomial(Y, QQ, {("y1", "y2"): Fraction(1), ("y2", "y1"): Fraction(2)})
    )


def test_rational_exchangeability():
    assert is_rationally_exchangeable(make_character_star(X2, QQ, {"x0": 1, "x1": 2}))
    shuffled = rep_shuffle(
        rep_star(rep_word(X2, QQ, ("x0",), 2)), rep_star(rep_word(X2, QQ, ("x1",), 3))
    )
    assert is_rationally_exchangeable(shuffled)
    assert not is_rationally_exchangeable(loop_star_rep())
    # syntactic and rational verdicts agree on these rational examples
    assert is_syntactically_exchangeable(shuffled, 4)
    assert not is_syntactically_exchangeable(loop_star_rep(), 4)


# ---------------------------------------------------------------------------
# Lie classification


def quiplait_rep():
    return LinearRepresentation(
        X2, QQ, (1, 0), {"x0": ((0, 1), (0, 0)), "x1": ((0, 0), (1, 0))}, (1, 0)
    )


def test_lie_closure_dimensions():
    lie = lie_closure(quiplait_rep())
    # raising, lowering, and their bracket span a three-dimensional algebra
    assert lie.dim == 3
    chain = lie_closure(rep_word(X2, QQ, ("x0", "x1")))
    assert chain.dim == 3  # two steps plus their bracket, then abelian


def test_classify_examples():
    assert classify(make_character_star(X2, QQ, {"x0": 2, "x1": 3})) == "exchangeable"
    assert classify(rep_polynomial(parse_series_text("1*x0.x1", X2, QQ))) == "nilpotent"
    solvable = LinearRepresentation(
        X2,
        QQ,
        (1, 1),
        {"x0": ((1, 1), (0, 2)), "x1": ((3, 0), (0, 1))},
        (1, 1),
    )
    assert minimize(solvable).dim == 2
    assert classify(solvable) == "solvable"
    assert classify(quiplait_rep()) == "general"


def test_classify_is_similarity_invariant():
    rng = random.Random(606)
    fixtures = [
        make_character_star(X2, QQ, {"x0": 2, "x1": 3}),
        rep_polynomial(parse_series_text("1*x0.x1", X2, QQ)),
        quiplait_rep(),
    ]
    for r in fixtures:
        label = classify(r)
        for _ in range(3):
            n = r.dim
            while True:
                t = tuple(
                    tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
                    for _ in range(n)
                )
                try:
                    conj = r.conjugate(t)
                    break
                except ValueError:
                    continue
            assert classify(conj) == label


# ---------------------------------------------------------------------------
# triangular factorizations


def test_nilpotent_decompose_example():
    r = LinearRepresentation(X1, QQ, (1, 0), {"x0": ((1, 1), (0, 1))}, (0, 1))
    s1, c = nilpotent_decompose(r)
    assert c == {"x0": Fraction(1)}
    assert s1 == NCPolynomial.word(X1, QQ, ("x0",))


def test_nilpotent_decompose_identity():
    rng = random.Random(710)
    for _ in range(4):
        n = 3
        c_true = {x: Fraction(rng.randint(-2, 2)) for x in ["x0", "x1"]}
        mu = {}
        for x in ["x0", "x1"]:
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                m[i][i] = c_true[x]
                for j in range(i + 1, n):
                    m[i][j] = Fraction(rng.randint(-2, 2))
            mu[x] = tuple(tuple(row) for row in m)
        nu = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        eta = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        r = LinearRepresentation(X2, QQ, nu, mu, eta)
        s1, c = nilpotent_decompose(r)
        assert c == c_true
        assert s1.max_grade() <= n - 1
        bound = n + 2
        char = TruncatedSeries(
            NCPolynomial(X2, QQ, {("x0",): c["x0"], ("x1",): c["x1"]}), bound
        ).star()
        rebuilt = TruncatedSeries(s1, bound).shuffle(char)
        assert r.expand(bound).poly == rebuilt.poly.truncate(bound)


def test_nilpotent_decompose_rejects_non_triangular():
    with pytest.raises(ValueError):
        nilpotent_decompose(quiplait_rep())


def test_triangular_star_factorization():
    rng = random.Random(811)
    for n in (2, 3):
        mu = {}
        for x in ["x0", "x1"]:
            mu[x] = tuple(
                tuple(
                    Fraction(rng.randint(-2, 2)) if j >= i else Fraction(0)
                    for j in range(n)
                )
                for i in range(n)
            )
        r = LinearRepresentation(X2, QQ, (1,) * n, mu, (1,) * n)
        assert triangular_star_factorization_check(r, 4)
    # purely diagonal and purely strict cases reduce to one factor each
    diag = LinearRepresentation(X2, QQ, (1, 1), {"x0": ((2, 0), (0, 3))}, (1, 1))
    assert triangular_star_factorization_check(diag, 4)
    strict = rep_word(X2, QQ, ("x0", "x1"))
    assert triangular_star_factorization_check(strict, 5)
    with pytest.raises(ValueError):
        triangular_star_factorization_check(quiplait_rep(), 3)


# ---------------------------------------------------------------------------
# linear independence of plane stars


def test_plane_stars_linearly_independent():
    words = []
    for g in range(5):
        words.extend(X2.words_of_grade(g))
    basis = EchelonBasis(QQ, len(words))
    count = 0
    for i in range(3):
        for j in range(3):
            star = make_character_star(X2, QQ, {"x0": Fraction(i), "x1": Fraction(j)})
            vec = tuple(star.coeff(w) for w in words)
            if basis.insert(vec) is not None:
                count += 1
    assert count == 9


# ---------------------------------------------------------------------------
# serialization


def test_json_round_trip_x():
    t = QT.gen()
    r = rep_conc(rep_word(X2, QT, ("x0",), t), rep_word(X2, QT, ("x1",), 1 - t))
    text = r.to_json()
    back = LinearRepresentation.from_json(text)
    assert back.alphabet == X2 and back.ring == QT
    assert back.nu == r.nu and back.eta == r.eta and back.mu == r.mu


def test_json_round_trip_y():
    r = make_character_star(Y, QQ, {"y1": Fraction(1, 2), "y3": Fraction(-2)})
    back = LinearRepresentation.from_json(r.to_json())
    assert back.alphabet == Y
    assert back.expand(5).poly == r.expand(5).poly


def test_json_round_trip_rational_functions():
    z = QZ.gen()
    r = rep_word(X2, QZ, ("x0",), 1 / z)
    back = LinearRepresentation.from_json(r.to_json())
    assert back.mu == r.mu and back.nu == r.nu


def test_embed_field():
    r = rep_word(X2, QT, ("x0", "x1"), QT.gen())
    e = r.embed_field()
    assert e.ring == QT.field()
    assert e.coeff(("x0", "x1")) == e.ring.coerce(QT.gen())
