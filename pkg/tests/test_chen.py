"""Iterated-integral evaluation: the control catalog, quadrature fixtures with
independent oracles, group-likeness diagnostics, representation pairing, and
exact scalar differential equations."""

import math
from fractions import Fraction

import numpy as np
import pytest

from ncfps.automata import LinearRepresentation, minimize, rep_star, rep_word
from ncfps.chen import (
    ChenEvaluation,
    InputFunction,
    SegmentPath,
    chen_series,
    derive_scalar_ode,
    flow_compose,
    friedrichs_check,
    iterated_integral,
    pair_ode,
    pair_ode_derivatives,
    pair_series,
    primitive_log_check,
    scalar_ode_text,
)
from ncfps.rings import QQ, QT, QZ, Poly
from ncfps.words import Alphabet

X1 = Alphabet.x(1)
X2 = Alphabet.x(2)

POLYLOG = {"x0": "1/z", "x1": "1/(1-z)"}


def star_rep(alphabet, word):
    return minimize(rep_star(rep_word(alphabet, QQ, word)))


# ---------------------------------------------------------------------------
# control catalog


def test_input_from_text_forms():
    assert InputFunction.from_text("1/z").kind == "inv_z"
    assert InputFunction.from_text("1/(1-z)").kind == "inv_1mz"
    assert InputFunction.from_text("3/2").kind == "const"
    assert InputFunction.from_text("exp(z)").kind == "exp"
    assert InputFunction.from_text("exp").kind == "exp"
    p = InputFunction.from_text("pow(z, -1/2)")
    assert p.kind == "pow" and p.value == Fraction(-1, 2)
    r = InputFunction.from_text("(z+1)/(z-2)")
    assert r.kind == "rational"
    with pytest.raises(ValueError):
        InputFunction.from_text("1/(z-z)")


def test_catalog_forms_are_recognized_from_rational_input():
    # recognition only sharpens the sup bounds; the values agree either way
    assert InputFunction.rational(QZ.parse("1/z")).kind == "inv_z"
    assert InputFunction.rational(QZ.parse("2/(2-2*z)")).kind == "inv_1mz"
    assert InputFunction.of(Fraction(2, 3)).kind == "const"
    k = InputFunction.power(3)
    assert k.ratfun == QZ.parse("z^3")
    k = InputFunction.power(-2)
    assert k.ratfun == QZ.parse("1/z^2")
    assert InputFunction.power(0.5).ratfun is None
    assert InputFunction.exp().ratfun is None


def test_input_evaluation_matches_exact_view():
    for text in ("1/z", "1/(1-z)", "(z^2-1)/(z+2)", "5"):
        f = InputFunction.from_text(text)
        g = QZ.parse(text)
        for z in (0.3, 0.7, 2.5, -1.5):
            assert abs(f.evaluate(z) - float(g(Fraction(z)))) < 1e-12
    arr = np.array([0.25, 0.5, 3.0])
    f = InputFunction.from_text("(z^2-1)/(z+2)")
    vals = f.eval_array(arr)
    for z, v in zip(arr, vals):
        assert abs(v - f.evaluate(float(z))) < 1e-12


def test_sup_bounds_and_exactness():
    assert InputFunction.inv_1mz().sup_on(0.0, 0.5) == (2.0, True)
    assert InputFunction.inv_z().sup_on(1.0, 2.0) == (1.0, True)
    assert InputFunction.inv_z().sup_on(0.0, 0.5) == (math.inf, True)
    s, exact = InputFunction.exp().sup_on(0.0, 1.0)
    assert exact and abs(s - math.e) < 1e-15
    s, exact = InputFunction.power(0.5).sup_on(0.0, 4.0)
    assert exact and s == 2.0
    s, exact = InputFunction.rational(QZ.parse("z^2+1")).sup_on(0.0, 1.0)
    assert not exact and abs(s - 2.0) < 1e-6


def test_path_keeps_exact_endpoints():
    path = SegmentPath("1/3", 1)
    assert path.z0_exact == Fraction(1, 3)
    assert abs(path.z0 - 1 / 3) < 1e-16
    assert path.length == pytest.approx(2 / 3)
    assert SegmentPath.of((0, "0.5")).z1_exact == Fraction(1, 2)
    with pytest.raises(ValueError):
        SegmentPath(1, "1")
    with pytest.raises(ValueError):
        SegmentPath(0.0, math.inf)


def test_singularity_placement_is_rejected():
    # strictly interior pole
    with pytest.raises(ValueError):
        chen_series({"x0": "1/z"}, SegmentPath(-1, 1), 2)
    # singular far endpoint
    with pytest.raises(ValueError):
        chen_series({"x1": "1/(1-z)"}, SegmentPath(0, 1), 2)
    # pole at an irrational abscissa cannot be located exactly
    with pytest.raises(ValueError):
        chen_series({"x0": "1/(z^2-2)"}, SegmentPath(1, 2), 2)
    # fractional powers need a nonnegative segment
    with pytest.raises(ValueError):
        chen_series({"x0": InputFunction.power(0.5)}, SegmentPath(-1, 1), 2)


# ---------------------------------------------------------------------------
# coefficient fixtures with independent oracles


def test_constant_control_gives_monomial_coefficients():
    # with u = 1 the word x^n integrates to z^n/n!
    ev = chen_series({"x0": 1}, SegmentPath(0, "1/2"), 5)
    assert ev.coeff(()) == 1.0
    assert ev.error(()) == 0.0
    for n in range(6):
        want = 0.5**n / math.factorial(n)
        assert abs(ev.coeff(("x0",) * n) - want) < 1e-12
    assert abs(ev.coeff(("x0", "x0")) - 0.125) < 1e-12


def test_reciprocal_control_gives_log_powers():
    # with u = 1/z from 1 to 2 the word x^n integrates to log(2)^n/n!
    ev = chen_series({"x0": "1/z"}, SegmentPath(1, 2), 5)
    for n in range(6):
        want = math.log(2.0) ** n / math.factorial(n)
        assert abs(ev.coeff(("x0",) * n) - want) < 1e-11


def test_exponential_control():
    # d/dz of the n-th coefficient is e^z times the previous one, so the
    # closed form is (e^z - 1)^n / n!
    ev = chen_series({"x0": InputFunction.exp()}, SegmentPath(0, "7/10"), 4)
    for n in range(5):
        want = (math.exp(0.7) - 1.0) ** n / math.factorial(n)
        assert abs(ev.coeff(("x0",) * n) - want) < 1e-11


def test_power_control_irrational_exponent():
    a = math.sqrt(2.0)
    ev = chen_series({"x0": InputFunction.power(a)}, SegmentPath(0, "4/5"), 4)
    base = 0.8 ** (a + 1.0) / (a + 1.0)
    for n in range(5):
        want = base**n / math.factorial(n)
        assert abs(ev.coeff(("x0",) * n) - want) < 1e-10


def test_power_control_negative_exponent():
    # u = z^(-1/2) is unbounded at the start but every word stays integrable
    ev = chen_series({"x0": InputFunction.power(Fraction(-1, 2))}, SegmentPath(0, "1/2"), 6)
    base = 2.0 * math.sqrt(0.5)
    assert not ev.excluded
    for n in range(7):
        want = base**n / math.factorial(n)
        assert abs(ev.coeff(("x0",) * n) - want) < 1e-10


def test_polylogarithm_values():
    # Li_2(1/2) = sum 2^(-n)/n^2 and Li_3(1/2) = sum 2^(-n)/n^3; the partial
    # sums below are accurate to far beyond the quadrature tolerance
    li2 = sum(2.0**-n / n**2 for n in range(1, 120))
    li3 = sum(2.0**-n / n**3 for n in range(1, 120))
    path = SegmentPath(0, "1/2")
    assert abs(iterated_integral("x0.x1", POLYLOG, path) - li2) < 1e-9
    assert abs(iterated_integral("x0.x0.x1", POLYLOG, path) - li3) < 1e-9
    assert abs(iterated_integral((), POLYLOG, path) - 1.0) == 0.0


def test_divergent_words_raise_or_are_excluded():
    path = SegmentPath(0, "1/2")
    with pytest.raises(ValueError):
        iterated_integral("x0", POLYLOG, path)
    with pytest.raises(ValueError):
        iterated_integral("x1.x0", POLYLOG, path)
    ev = chen_series(POLYLOG, path, 4)
    # exactly the words whose innermost integral carries the pole diverge
    assert ev.excluded == {
        w for w in ev.alphabet.words_up_to(4, include_empty=False) if w[-1] == "x0"
    }
    with pytest.raises(ValueError):
        ev.coeff(("x0",))
    with pytest.raises(KeyError):
        ev.coeff(("x0",) * 9)


def test_series_matches_single_word_integrals():
    tol = 1e-10
    path = SegmentPath("1/4", "1/2")
    ev = chen_series(POLYLOG, path, 4, tol=tol)
    for w in ev.values:
        if w:
            single = iterated_integral(w, POLYLOG, path, tol=tol)
            assert abs(ev.values[w] - single) <= 2 * tol
    assert max(ev.errors.values()) <= tol


def test_orientation_reversal():
    # reversing a one-letter path flips the sign of the first coefficient
    fwd = chen_series({"x0": 1}, SegmentPath(0, "1/2"), 1)
    bwd = chen_series({"x0": 1}, SegmentPath("1/2", 0), 1)
    assert abs(fwd.coeff(("x0",)) + bwd.coeff(("x0",))) < 1e-14


# ---------------------------------------------------------------------------
# group-likeness diagnostics


def test_friedrichs_defect_is_small_for_true_evaluations():
    ev = chen_series(POLYLOG, SegmentPath(0, "1/2"), 4)
    assert friedrichs_check(ev) < 1e-7
    ev2 = chen_series(POLYLOG, SegmentPath("1/4", "1/2"), 4)
    assert friedrichs_check(ev2) < 1e-7
    ev3 = chen_series({"x0": 1}, SegmentPath(0, 1), 5)
    assert friedrichs_check(ev3) < 1e-10


def test_friedrichs_detects_corruption():
    ev = chen_series(POLYLOG, SegmentPath("1/4", "1/2"), 4)
    vals = dict(ev.values)
    vals[("x0", "x1")] += 1e-3
    bad = ChenEvaluation(ev.alphabet, ev.inputs, ev.path, ev.bound, vals, ev.errors, ev.excluded)
    assert friedrichs_check(bad) > 1e-4


def test_primitive_log_single_letter():
    # with u = 1 over 0 -> 1/2 the log of the evaluation is exactly z * x0
    ev = chen_series({"x0": 1}, SegmentPath(0, "1/2"), 4)
    assert primitive_log_check(ev) < 1e-12


def test_primitive_log_two_letters():
    ev = chen_series(POLYLOG, SegmentPath("1/4", "1/2"), 4)
    assert primitive_log_check(ev) < 1e-6


def test_primitive_log_detects_corruption():
    ev = chen_series(POLYLOG, SegmentPath("1/4", "1/2"), 4)
    vals = dict(ev.values)
    vals[("x0", "x1")] += 1e-3
    bad = ChenEvaluation(ev.alphabet, ev.inputs, ev.path, ev.bound, vals, ev.errors, ev.excluded)
    assert primitive_log_check(bad) > 1e-4


def test_primitive_log_preconditions():
    with pytest.raises(ValueError):
        primitive_log_check(chen_series({"x0": 1}, SegmentPath(0, 1), 1))
    incomplete = chen_series(POLYLOG, SegmentPath(0, "1/2"), 3)
    with pytest.raises(ValueError):
        primitive_log_check(incomplete)


def test_flow_composition_matches_direct_evaluation():
    first = chen_series(POLYLOG, SegmentPath("1/5", "7/20"), 3)
    second = chen_series(POLYLOG, SegmentPath("7/20", "3/5"), 3)
    direct = chen_series(POLYLOG, SegmentPath("1/5", "3/5"), 3)
    composed = flow_compose(second, first)
    assert set(composed) == set(direct.values)
    for w, c in composed.items():
        assert abs(c - direct.values[w]) < 1e-9
    with pytest.raises(ValueError):
        flow_compose(first, second)


# ---------------------------------------------------------------------------
# pairing against linear representations


def test_pair_exponential_series():
    rep = star_rep(X1, ("x0",))
    ev = chen_series({"x0": 1}, SegmentPath(0, 1), 12)
    res = pair_series(ev, rep)
    assert res.certified
    assert abs(res.value - math.e) <= res.tail + 1e-9
    assert abs(res.value - math.e) < 1e-6
    ode = pair_ode(rep, {"x0": 1}, SegmentPath(0, 1))
    assert abs(ode - math.e) < 1e-8
    assert abs(res.value - ode) <= res.tail + 1e-6


def test_pair_geometric_series():
    # <x1*, x1^n> = 1 and the controls integrate to log(2)^n/n!, so the
    # pairing sums to exp(log 2) = 2
    rep = star_rep(X2, ("x1",))
    ev = chen_series({"x1": "1/(1-z)"}, SegmentPath(0, "1/2"), 14)
    res = pair_series(ev, rep)
    assert res.certified
    assert abs(res.value - 2.0) < 1e-6
    ode = pair_ode(rep, {"x1": "1/(1-z)"}, SegmentPath(0, "1/2"))
    assert abs(ode - 2.0) < 1e-8
    assert abs(res.value - ode) <= res.tail + 1e-6


def test_pair_identity_flow():
    # (x)* against u = 1/z from 1 to 2 sums exp(log z) = z at z = 2
    rep = star_rep(X1, ("x0",))
    ev = chen_series({"x0": "1/z"}, SegmentPath(1, 2), 14)
    res = pair_series(ev, rep)
    assert res.certified
    assert abs(res.value - 2.0) < 1e-6
    ode = pair_ode(rep, {"x0": "1/z"}, SegmentPath(1, 2))
    assert abs(ode - 2.0) < 1e-8
    assert abs(res.value - ode) <= res.tail + 1e-6


def test_pair_half_interval_target():
    rep = star_rep(X1, ("x0",))
    ev = chen_series({"x0": 1}, SegmentPath(0, "1/2"), 12)
    res = pair_series(ev, rep)
    assert abs(res.value - math.exp(0.5)) < 1e-6
    assert abs(pair_ode(rep, {"x0": 1}, SegmentPath(0, "1/2")) - math.exp(0.5)) < 1e-8


def test_pair_zero_and_null_representations():
    ev = chen_series({"x0": 1}, SegmentPath(0, 1), 4)
    empty = LinearRepresentation(X1, QQ, (), {}, ())
    res = pair_series(ev, empty)
    assert (res.value, res.tail, res.certified) == (0.0, 0.0, True)
    assert pair_ode(empty, {"x0": 1}, SegmentPath(0, 1)) == 0.0
    # a vanishing initial row kills both the value and the tail constant
    null = LinearRepresentation(X1, QQ, (0,), {"x0": ((1,),)}, (1,))
    res = pair_series(ev, null)
    assert res.value == 0.0 and res.tail == 0.0 and res.certified


def test_pair_preconditions():
    ev = chen_series({"x0": 1}, SegmentPath(0, 1), 3)
    over_t = LinearRepresentation(X1, QT, ((1,)), {}, ((1,)))
    with pytest.raises(ValueError):
        pair_series(ev, over_t)
    incomplete = chen_series(POLYLOG, SegmentPath(0, "1/2"), 3)
    rep = star_rep(X1, ("x0",))
    with pytest.raises(ValueError):
        pair_series(incomplete, rep)
    with pytest.raises(ValueError):
        pair_ode(rep, {"x0": "1/z"}, SegmentPath(0, 1))


def test_pair_certification_flags():
    rep = star_rep(X1, ("x0",))
    # unbounded control: finite value, infinite tail, no certificate
    ev = chen_series({"x0": InputFunction.power(Fraction(-1, 2))}, SegmentPath(0, "1/2"), 10)
    res = pair_series(ev, rep)
    assert res.tail == math.inf and not res.certified
    assert abs(res.value - math.exp(2.0 * math.sqrt(0.5))) < 1e-5
    # sampled sup bound: finite tail but still no certificate
    ev2 = chen_series({"x0": "z^2+1"}, SegmentPath(0, 1), 10)
    res2 = pair_series(ev2, rep)
    assert math.isfinite(res2.tail) and not res2.certified
    assert abs(res2.value - math.exp(4.0 / 3.0)) < 1e-5


# ---------------------------------------------------------------------------
# exact scalar differential equations


def test_scalar_ode_geometric_flow():
    rep = star_rep(X2, ("x1",))
    coeffs = derive_scalar_ode(rep, {"x1": "1/(1-z)"})
    z = Poly.gen("z")
    assert coeffs == [Poly.const("z", Fraction(1)), z - 1]
    assert scalar_ode_text(coeffs) == "(z-1)*y' + y = 0"


def test_scalar_ode_identity_flow():
    rep = star_rep(X1, ("x0",))
    coeffs = derive_scalar_ode(rep, {"x0": "1/z"})
    z = Poly.gen("z")
    assert coeffs == [Poly.const("z", Fraction(-1)), z]
    assert scalar_ode_text(coeffs) == "z*y' - y = 0"


def test_scalar_ode_dilog_flow():
    rep = star_rep(X2, ("x0", "x1"))
    assert rep.dim == 2
    coeffs = derive_scalar_ode(rep, POLYLOG)
    assert len(coeffs) - 1 == 2
    assert len(coeffs) - 1 <= rep.dim
    # numeric residual: derivatives from the state flow at 20 sample points
    worst = 0.0
    for z in np.linspace(0.15, 0.6, 20):
        ders = pair_ode_derivatives(rep, POLYLOG, SegmentPath("1/10", float(z)), 2, tol=1e-12)
        res = sum(float(p(Fraction(float(z)))) * ders[l] for l, p in enumerate(coeffs))
        worst = max(worst, abs(res))
    assert worst < 1e-6


def test_scalar_ode_state_derivatives_match_finite_differences():
    rep = star_rep(X2, ("x0", "x1"))

    def value_at(z):
        return pair_ode(rep, POLYLOG, SegmentPath("1/10", z), tol=1e-13)

    ders = pair_ode_derivatives(rep, POLYLOG, SegmentPath("1/10", "2/5"), 2, tol=1e-13)
    h = 1e-3
    y0 = value_at(0.4)
    yp = (value_at(0.4 + h) - value_at(0.4 - h)) / (2 * h)
    ypp = (value_at(0.4 + h) - 2 * y0 + value_at(0.4 - h)) / h**2
    assert abs(y0 - ders[0]) < 1e-5 * abs(ders[0])
    assert abs(yp - ders[1]) < 1e-5 * abs(ders[1])
    assert abs(ypp - ders[2]) < 1e-5 * abs(ders[2])


def test_scalar_ode_order_never_exceeds_dimension():
    for word, inputs in ((("x0",), {"x0": "1/z"}), (("x0", "x1"), POLYLOG), (("x1",), {"x1": "1/(1-z)"})):
        rep = star_rep(X2, word)
        coeffs = derive_scalar_ode(rep, inputs)
        assert len(coeffs) - 1 <= rep.dim


def test_scalar_ode_preconditions():
    rep = star_rep(X1, ("x0",))
    with pytest.raises(ValueError):
        derive_scalar_ode(rep, {"x0": InputFunction.exp()})
    with pytest.raises(ValueError):
        derive_scalar_ode(rep, {"x0": "1/z"}, n_max=0)
    over_t = LinearRepresentation(X1, QT, ((1,)), {}, ((1,)))
    with pytest.raises(ValueError):
        derive_scalar_ode(over_t, {"x0": "1/z"})


def test_scalar_ode_text_shapes():
    z = Poly.gen("z")
    one = Poly.const("z", Fraction(1))
    assert scalar_ode_text([one]) == "y = 0"
    assert scalar_ode_text([-one, z]) == "z*y' - y = 0"
    assert scalar_ode_text([Poly.const("z", Fraction(0)), one]) == "y' = 0"
    assert scalar_ode_text([z * z - 1, 2 * z, one * 0, one]) == "y''' + 2*z*y' + (z^2-1)*y = 0"
    five = [one * 0] * 5
    five[4] = one
    five[0] = -one
    assert scalar_ode_text(five) == "y^(4) - y = 0"
