"""Exact scalar layer: polynomials, rational functions, ring descriptors."""

import random
from fractions import Fraction

import pytest

from ncfps.rings import (
    QQ,
    QT,
    QZ,
    Poly,
    RatFun,
    parse_poly_text,
    poly_gcd,
    poly_text,
    ring_named,
)


def zpoly(*coeffs):
    return Poly("z", coeffs)


def rand_poly(rng, var="z", max_deg=4):
    deg = rng.randrange(max_deg + 1)
    return Poly(
        var,
        [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4)) for _ in range(deg + 1)],
    )


class TestPoly:
    def test_normalization_strips_trailing_zeros(self):
        assert zpoly(1, 2, 0, 0).coeffs == (1, 2)
        assert zpoly(0, 0).coeffs == ()
        assert zpoly().degree == -1

    def test_arithmetic_matches_pointwise_evaluation(self):
        rng = random.Random(7)
        pts = [Fraction(k, 3) for k in range(-4, 5)]
        for _ in range(40):
            a, b = rand_poly(rng), rand_poly(rng)
            s, d, p = a + b, a - b, a * b
            for x in pts:
                assert s(x) == a(x) + b(x)
                assert d(x) == a(x) - b(x)
                assert p(x) == a(x) * b(x)

    def test_divmod_identity(self):
        rng = random.Random(11)
        for _ in range(40):
            a = rand_poly(rng)
            b = rand_poly(rng)
            if b.is_zero():
                continue
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.degree < b.degree or r.is_zero()

    def test_pow(self):
        p = zpoly(1, 1)
        assert p**0 == zpoly(1)
        assert p**3 == zpoly(1, 3, 3, 1)

    def test_derivative(self):
        assert zpoly(5, 0, 3).derivative() == zpoly(0, 6)
        assert zpoly(7).derivative().is_zero()

    def test_shifted_is_substitution(self):
        rng = random.Random(3)
        for _ in range(20):
            p = rand_poly(rng)
            a = Fraction(rng.randrange(-3, 4))
            q = p.shifted(a)
            for x in [Fraction(0), Fraction(1, 2), Fraction(-2)]:
                assert q(x) == p(x + a)

    def test_content(self):
        assert zpoly(Fraction(2, 3), Fraction(4, 3)).content() == Fraction(2, 3)
        assert zpoly(6, -9).content() == 3
        assert zpoly().content() == 0

    def test_root_multiplicity(self):
        p = zpoly(-1, 1) ** 3 * zpoly(2, 1)
        assert p.root_multiplicity(1) == 3
        assert p.root_multiplicity(-2) == 1
        assert p.root_multiplicity(5) == 0

    def test_rational_roots_against_direct_search(self):
        # oracle: evaluate at every candidate from the rational root theorem bound
        p = zpoly(Fraction(1, 2), 1) * zpoly(-3, 1) ** 2 * zpoly(0, 1) * zpoly(1, 0, 1)
        roots = p.rational_roots()
        assert roots == {
            Fraction(-1, 2): 1,
            Fraction(3): 2,
            Fraction(0): 1,
        }
        for r, m in roots.items():
            assert p.root_multiplicity(r) == m

    def test_mixed_variable_rejected(self):
        with pytest.raises(ValueError):
            Poly("z", (1, 1)) + Poly("t", (1, 1))


class TestPolyText:
    def test_format_examples(self):
        assert poly_text(zpoly(-1, 0, 1)) == "z^2-1"
        assert poly_text(zpoly(-5, 1, 0, Fraction(3, 2))) == "3/2*z^3+z-5"
        assert poly_text(zpoly(0, 1)) == "z"
        assert poly_text(zpoly()) == "0"
        assert poly_text(zpoly(0, -1)) == "-z"

    def test_round_trip(self):
        rng = random.Random(19)
        for _ in range(60):
            p = rand_poly(rng)
            assert parse_poly_text(poly_text(p), "z") == p

    def test_parse_variants(self):
        assert parse_poly_text("z^2 - 1", "z") == zpoly(-1, 0, 1)
        assert parse_poly_text("-z+2", "z") == zpoly(2, -1)
        assert parse_poly_text("3/2", "z") == zpoly(Fraction(3, 2))
        with pytest.raises(ValueError):
            parse_poly_text("t+1", "z")


class TestGcd:
    def test_gcd_divides_and_is_monic(self):
        rng = random.Random(23)
        for _ in range(30):
            g = rand_poly(rng, max_deg=2)
            a = g * rand_poly(rng, max_deg=2)
            b = g * rand_poly(rng, max_deg=2)
            if a.is_zero() and b.is_zero():
                continue
            d = poly_gcd(a, b)
            assert d.leading() == 1
            if not a.is_zero():
                assert (a % d).is_zero()
            if not b.is_zero():
                assert (b % d).is_zero()
            if not g.is_zero():
                assert (d % g.monic()).is_zero()


class TestRatFun:
    def test_reduction_invariant(self):
        f = RatFun(zpoly(0, 2, 2), zpoly(0, 0, 4))  # (2z+2z^2)/(4z^2)
        assert f.num == zpoly(Fraction(1, 2), Fraction(1, 2))
        assert f.den == zpoly(0, 1)
        assert poly_gcd(f.num, f.den).degree == 0
        assert f.den.leading() == 1

    def test_arithmetic_matches_pointwise(self):
        rng = random.Random(31)
        pts = [Fraction(k, 7) for k in range(1, 12)]
        for _ in range(25):
            f = RatFun(rand_poly(rng), zpoly(1, 1) * zpoly(3, 1))
            g = RatFun(rand_poly(rng), zpoly(2, 1))
            for h, op in [
                (f + g, lambda a, b: a + b),
                (f - g, lambda a, b: a - b),
                (f * g, lambda a, b: a * b),
            ]:
                for x in pts:
                    assert h(x) == op(f(x), g(x))
            if not g.is_zero():
                q = f / g
                for x in pts:
                    if g(x) != 0:
                        assert q(x) == f(x) / g(x)

    def test_derivative_quotient_rule(self):
        f = RatFun(zpoly(1), zpoly(-1, 1))  # 1/(z-1)
        df = f.derivative()
        assert df == RatFun(zpoly(-1), zpoly(-1, 1) ** 2)

    def test_vanishing_order(self):
        f = RatFun(zpoly(0, 0, 1), zpoly(-1, 1))  # z^2/(z-1)
        assert f.vanishing_order_at(0) == 2
        assert f.vanishing_order_at(1) == -1
        assert f.vanishing_order_at(2) == 0

    def test_residue_simple_poles(self):
        # 1/(1-z) = -1/(z-1): residue at 1 is -1
        f = RatFun(zpoly(1), zpoly(1, -1))
        assert f.residue_at(1) == -1
        # 1/z: residue 1 at 0
        assert RatFun(zpoly(1), zpoly(0, 1)).residue_at(0) == 1
        # partial fractions oracle: 1/(z(z-1)) = -1/z + 1/(z-1)
        g = RatFun(zpoly(1), zpoly(0, 1) * zpoly(-1, 1))
        assert g.residue_at(0) == -1
        assert g.residue_at(1) == 1
        assert g.residue_at(2) == 0

    def test_residue_higher_order_oracle(self):
        # oracle: for a pole of order k at p, the residue equals the (k-1)-th
        # derivative of (z-p)^k * f evaluated at p, divided by (k-1)!
        rng = random.Random(41)
        for _ in range(20):
            num = rand_poly(rng, max_deg=3)
            if num.is_zero():
                continue
            k = rng.randrange(1, 4)
            p = Fraction(rng.randrange(-2, 3))
            den = zpoly(-p, 1) ** k * zpoly(7, 1)  # extra non-candidate factor
            f = RatFun(num, den)
            kk = k - f.num.root_multiplicity(p)  # reduction may cancel part of the pole
            g = f * RatFun(zpoly(-p, 1) ** k)
            for _ in range(k - 1):
                g = g.derivative()
            fact = 1
            for j in range(2, k):
                fact *= j
            expected = g(p) / fact
            assert f.residue_at(p) == expected, (num, k, p, kk)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFun(zpoly(1), zpoly())


class TestRings:
    def test_ring_named(self):
        assert ring_named("Q") is QQ
        assert ring_named("Q[t]") == QT
        assert ring_named("Q(z)") == QZ
        with pytest.raises(ValueError):
            ring_named("Z")

    def test_coerce_and_format_rationals(self):
        assert QQ.coerce(3) == Fraction(3)
        assert QQ.format(Fraction(-1, 2)) == "-1/2"
        assert QQ.parse("5/3") == Fraction(5, 3)
        with pytest.raises(ValueError):
            QQ.parse("z")

    def test_polynomial_ring_round_trip(self):
        p = QT.parse("(t^2-1)")
        assert p == Poly("t", (-1, 0, 1))
        assert QT.format(p) == "(t^2-1)"
        assert QT.format(QT.coerce(2)) == "2"
        assert QT.parse("-3/2") == Poly.const("t", Fraction(-3, 2))

    def test_rational_function_ring_round_trip(self):
        f = QZ.parse("(z^2-1)/(z)")
        assert f == RatFun(zpoly(-1, 0, 1), zpoly(0, 1))
        assert QZ.format(f) == "(z^2-1)/(z)"
        assert QZ.format(QZ.coerce(Fraction(1, 2))) == "1/2"
        assert QZ.format(QZ.parse("(z+1)")) == "(z+1)"

    def test_field_promotion(self):
        assert QT.field().name == "Q(t)"
        assert QT.field().coerce(QT.embed(QT.gen())) == RatFun(Poly.gen("t"))
        assert QQ.field() is QQ
        assert QZ.field() is QZ

    def test_is_field_flags(self):
        assert QQ.is_field and QZ.is_field and not QT.is_field
